//! Staggered fermion chain: mode-sum ground energy against exact
//! diagonalization of its spin image, and the energy of states with no
//! entanglement across the middle cut.

use enttemp::exact;
use enttemp::models::staggered_fermion_spin;
use enttemp::oracles::{fermion_ground_energy, fermion_product_bound};
use enttemp::FermionChainSpec;

fn main() -> enttemp::Result<()> {
    for n in [4, 6, 8, 10] {
        let spec = FermionChainSpec::new(n, 1.0)?;
        let ed = exact::ground_energy(&staggered_fermion_spin(&spec)?)?;
        println!("N = {n:<3} modes {:.10}  exact {ed:.10}", fermion_ground_energy(&spec));
    }
    for a in [1.0, 0.5, 0.25] {
        let spec = FermionChainSpec::new(8, a)?;
        println!(
            "a = {a:<5} product states pay at least {:.6} on the cut bond (1/a = {})",
            fermion_product_bound(&spec, 500, 3)?,
            1.0 / a
        );
    }
    Ok(())
}
