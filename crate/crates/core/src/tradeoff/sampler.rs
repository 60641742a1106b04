//! Random walks of imaginary-time steps and sharpening moves, recording the
//! energy cost and extracted entropy after every move.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::pareto::TradeoffPoint;
use super::tebd::TrotterGates;
use crate::error::{invalid, Error, Result};
use crate::models::LocalHamiltonian;
use crate::mps::MatrixProductState;

/// Points below `-ENERGY_TOL` mean the reference ground energy is wrong.
pub const ENERGY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub n_samples: usize,
    pub rounds_per_sample: usize,
    /// Imaginary time steps are drawn log-uniformly from this range.
    pub tau_range: (f64, f64),
    /// Sharpening exponents are drawn uniformly from `(0, epsilon_max]`.
    pub epsilon_max: f64,
    pub chi_max: usize,
    /// Discarded-weight budget used by imaginary-time steps.
    pub truncation_tol: f64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            n_samples: 2000,
            rounds_per_sample: 8,
            tau_range: (1e-3, 1.0),
            epsilon_max: 0.5,
            chi_max: 16,
            truncation_tol: 1e-12,
            seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.tau_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return invalid(format!("tau range ({lo}, {hi}) must be positive and ordered"));
        }
        if !(self.epsilon_max > 0.0 && self.epsilon_max.is_finite()) {
            return invalid(format!("epsilon_max must be positive, got {}", self.epsilon_max));
        }
        if self.chi_max == 0 {
            return invalid("chi_max must be at least 1");
        }
        if !(self.truncation_tol >= 0.0) {
            return invalid("truncation tolerance must be nonnegative");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Imaginary(f64),
    Sharpen(f64),
}

/// Runs every sample in parallel and concatenates their points in sample
/// order. Even samples start from `ground`, odd samples from a random MPS.
/// Only points with positive extracted entropy are kept.
pub fn sample_tradeoff(
    h: &LocalHamiltonian,
    ground: &MatrixProductState,
    e0: f64,
    cfg: &SamplerConfig,
) -> Result<Vec<TradeoffPoint>> {
    cfg.validate()?;
    if ground.n_sites() != h.n_sites() || ground.phys_dim() != h.phys_dim() {
        return invalid("ground state and Hamiltonian have different shapes");
    }
    let s_ground = ground.entropy_bits(h.ab_cut())?;
    let per_sample: Vec<Result<Vec<TradeoffPoint>>> = (0..cfg.n_samples)
        .into_par_iter()
        .map(|index| {
            run_sample(h, ground, e0, s_ground, cfg, index).map_err(|e| Error::Sample { index, source: Box::new(e) })
        })
        .collect();
    let mut points = Vec::new();
    for sample in per_sample {
        points.extend(sample?);
    }
    Ok(points)
}

fn run_sample(
    h: &LocalHamiltonian,
    ground: &MatrixProductState,
    e0: f64,
    s_ground: f64,
    cfg: &SamplerConfig,
    index: usize,
) -> Result<Vec<TradeoffPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut state = if index.is_multiple_of(2) {
        ground.clone()
    } else {
        MatrixProductState::random(h.n_sites(), h.phys_dim(), cfg.chi_max, rng.random())?
    };
    let (ln_lo, ln_hi) = (cfg.tau_range.0.ln(), cfg.tau_range.1.ln());
    let mut hasher = Sha256::new();
    hasher.update(index.to_le_bytes());
    let mut points = Vec::new();
    for round in 0..cfg.rounds_per_sample {
        let mv = if rng.random_bool(0.5) {
            Move::Imaginary((ln_lo + (ln_hi - ln_lo) * rng.random::<f64>()).exp())
        } else {
            Move::Sharpen(cfg.epsilon_max * (1.0 - rng.random::<f64>()))
        };
        match mv {
            Move::Imaginary(tau) => {
                TrotterGates::new(h, tau)?.apply(&mut state, cfg.chi_max, cfg.truncation_tol)?;
                hasher.update(b"I");
                hasher.update(tau.to_le_bytes());
            }
            Move::Sharpen(eps) => {
                state.sharpen_in_place(h.ab_cut(), eps)?;
                hasher.update(b"S");
                hasher.update(eps.to_le_bytes());
            }
        }
        let delta_s = s_ground - state.entropy_bits(h.ab_cut())?;
        if delta_s <= 0.0 {
            continue;
        }
        let delta_e = state.energy(h)? - e0;
        if delta_e < -ENERGY_TOL {
            return invalid(format!(
                "energy {delta_e:.3e} below the reference ground energy; the ground state is not converged"
            ));
        }
        let digest: String = hasher.clone().finalize().iter().take(8).map(|b| format!("{b:02x}")).collect();
        points.push(TradeoffPoint { sample: index, moves: round + 1, digest, delta_s, delta_e });
    }
    Ok(points)
}
