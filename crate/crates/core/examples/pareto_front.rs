//! Samples energy/entropy trade-offs on the critical Ising chain and prints
//! the entanglement temperature along the Pareto front.

use enttemp::models::tfi_critical;
use enttemp::tradeoff::{
    ent_temperature, find_ground, pareto_front, power_law_fit_in, sample_tradeoff, GroundSearch, SamplerConfig,
    NEAR_GROUND_WINDOW,
};

fn main() -> enttemp::Result<()> {
    let h = tfi_critical(10)?;
    let (ground, e0) = find_ground(&h, &GroundSearch::default())?;
    let cfg = SamplerConfig { n_samples: 400, seed: 7, ..SamplerConfig::default() };
    let points = sample_tradeoff(&h, &ground, e0, &cfg)?;
    let front = pareto_front(&points);
    println!("{} sampled points, {} on the front", points.len(), front.len());
    let temperature = ent_temperature(&front);
    for (s, t) in temperature.iter().step_by((temperature.len() / 15).max(1)) {
        println!("ΔS = {s:.5} bits   T = {t:.5}");
    }
    if let Some((a, gamma)) = power_law_fit_in(&temperature, NEAR_GROUND_WINDOW) {
        println!("near the ground state T ≈ {a:.4} · ΔS^{gamma:.3}");
    }
    Ok(())
}
