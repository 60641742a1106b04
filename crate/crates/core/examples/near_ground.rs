//! Leading-order entropy and energy response to boosting the top Schmidt
//! weight, compared with the exact response.

use enttemp::exact;
use enttemp::models::tfi_critical;
use enttemp::tradeoff::{boost_top_weight, near_ground_coefficients};

fn main() -> enttemp::Result<()> {
    let h = tfi_critical(8)?;
    let (e0, psi) = exact::ground_state(&h)?;
    let c = near_ground_coefficients(&psi, &h, e0)?;
    println!("λ0² = {:.6}, S = {:.6} bits, c1 = {:.6}, c2 = {:.6}", c.top_weight, c.entropy_bits, c.c1, c.c2);
    for eps in [1e-4, 1e-3, 1e-2] {
        let state = boost_top_weight(&psi, &h, eps)?;
        let ds = exact::schmidt(&state, 8, 2, h.ab_cut())?.entropy_bits() - c.entropy_bits;
        let de = exact::expectation(&h, &state)? - e0;
        println!("ε = {eps:.0e}  ΔS/ε = {:.6}  ΔE/ε² = {:.6}", ds / eps, de / (eps * eps));
    }
    Ok(())
}
