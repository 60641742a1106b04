//! Which Schmidt spectra can be reached from which by local operations,
//! and how many EPR pairs a state of given rank can hand over.

use enttemp::oneshot::{feasible_final_rank, majorizes};
use enttemp::SchmidtSpectrum;

fn main() -> enttemp::Result<()> {
    let spectra = [
        ("flat 4", SchmidtSpectrum::from_weights(&[0.25; 4])?),
        ("0.5/0.3/0.2", SchmidtSpectrum::from_weights(&[0.5, 0.3, 0.2])?),
        ("Bell pair", SchmidtSpectrum::from_weights(&[0.5, 0.5])?),
        ("product", SchmidtSpectrum::from_weights(&[1.0])?),
    ];
    for (from, s) in &spectra {
        for (to, t) in &spectra {
            if from != to {
                println!("{from:>12} → {to:<12} {}", if majorizes(t, s) { "reachable" } else { "-" });
            }
        }
    }
    for m in 0..=4 {
        match feasible_final_rank(16, m) {
            Ok(r) => println!("rank 16 after extracting {m} pairs: at most {r}"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(())
}
