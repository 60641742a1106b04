//! Energy cost `‖H − E*(H)‖` of a few channels, and the bound for the
//! protocol that simply discards the boundary interaction.

use enttemp::exact;
use enttemp::models::{heisenberg_af, tfi_critical};
use enttemp::oracles::{channel_energy_cost, naive_protocol_bound, KrausChannel};
use enttemp::DenseMatrix;

fn main() -> enttemp::Result<()> {
    let z = DenseMatrix::diag(&[1.0, -1.0]);
    println!("identity on Z:            {}", channel_energy_cost(&KrausChannel::identity(2), &z)?);
    println!("full depolarizing on Z:   {}", channel_energy_cost(&KrausChannel::fully_depolarizing_qubit(), &z)?);

    let h = tfi_critical(3)?;
    let (_, ground) = exact::ground_state(&h)?;
    let dense = DenseMatrix::from_array(exact::dense_matrix(&h)?)?;
    let reset = KrausChannel::replacement(&ground)?;
    println!("reset to ground, tfi:3:   {:.6}", channel_energy_cost(&reset, &dense)?);

    for (label, h) in [("haf:8", heisenberg_af(8)?), ("tfi:8", tfi_critical(8)?)] {
        println!("naive protocol bound {label}: {}", naive_protocol_bound(&h)?);
    }
    Ok(())
}
