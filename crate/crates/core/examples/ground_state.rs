//! Imaginary-time ground search on the Heisenberg and Ising chains, checked
//! against exact diagonalization.

use enttemp::exact;
use enttemp::models::{heisenberg_af, tfi_critical};
use enttemp::tradeoff::{find_ground, GroundSearch};

fn main() -> enttemp::Result<()> {
    let cfg = GroundSearch { seed: 1, ..GroundSearch::default() };
    for n in [8, 10] {
        for (label, h) in [("haf", heisenberg_af(n)?), ("tfi", tfi_critical(n)?)] {
            let (state, e) = find_ground(&h, &cfg)?;
            let exact_e = exact::ground_energy(&h)?;
            println!(
                "{label}:{n:<3} E = {e:.10}  exact {exact_e:.10}  rel err {:.1e}  max bond {}  S = {:.4} bits",
                ((e - exact_e) / exact_e).abs(),
                state.max_bond_dim(),
                state.entropy_bits(h.ab_cut())?
            );
        }
    }
    Ok(())
}
