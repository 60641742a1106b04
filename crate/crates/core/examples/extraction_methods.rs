//! Two extraction strategies on the toy model: the paired product ansatz
//! and maximal overlap with a lower-rank state.

use enttemp::exact;
use enttemp::models::toy_model;
use enttemp::oracles::{max_overlap_at_rank, method1_ansatz, method2_cost, method2_overlap_bound};

fn main() -> enttemp::Result<()> {
    let n = 10;
    println!("product ansatz, n = {n}:");
    for m in 1..=n {
        let r = method1_ansatz(n, m)?;
        println!("  m = {m:<2} α = {:.5}  ΔE = {:.5}  ΔE/m = {:.5}", r.alpha, r.delta_e, r.delta_e / m as f64);
    }
    let h = toy_model(3)?;
    let (_, omega) = exact::ground_state(&h)?;
    println!("maximal overlap, n = 3:");
    for m in 1..=3u32 {
        let best = max_overlap_at_rank(&omega, 8, 8, 8 >> m, 0)?;
        println!(
            "  m = {m}  overlap {:.8} (bound {:.8})  ΔE = {:.5}",
            best.overlap,
            method2_overlap_bound(m),
            method2_cost(m)
        );
    }
    Ok(())
}
