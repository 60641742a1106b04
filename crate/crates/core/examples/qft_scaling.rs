//! Field-theory scaling of the extraction cost: exponential in one
//! dimension, a power law above.

use enttemp::oracles::{qft_scaling_curve, QftScalingParams};

fn main() -> enttemp::Result<()> {
    let grid: Vec<f64> = (0..=8).map(|k| 0.25 * k as f64).collect();
    for (d, c) in [(1, 1.0), (1, 0.5), (2, 1.0), (3, 1.0)] {
        let curve = qft_scaling_curve(&QftScalingParams::new(d, c, 1.0)?, &grid)?;
        let row: Vec<String> = curve.iter().map(|p| format!("{:.3}", p.delta_e)).collect();
        println!("d = {d}, c = {c}: ΔE = [{}]", row.join(", "));
    }
    Ok(())
}
