//! Minimum energy of the Bell-pair toy model at every Schmidt rank across the cut.

use enttemp::models::toy_model;
use enttemp::oneshot::{rank_sweep, RankSearch};

fn main() -> enttemp::Result<()> {
    let h = toy_model(3)?;
    for r in rank_sweep(&h, &RankSearch { restarts: 8, ..RankSearch::default() })? {
        println!("chi {:>2}  ΔS0 {:.4} bits  ΔE {:.8}  (restart {})", r.chi, r.delta_s0, r.delta_e, r.restart);
    }
    Ok(())
}
