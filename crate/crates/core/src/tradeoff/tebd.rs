//! Imaginary-time evolution by second-order Trotterized two-site gates.

use ndarray::Array2;

use crate::error::{invalid, Error, Result};
use crate::linalg::{hermitian_exp_array, kron, C64};
use crate::models::LocalHamiltonian;
use crate::mps::MatrixProductState;

/// Per-bond two-site Hamiltonians. One-site terms are shared evenly between
/// the bonds touching their site. The constant offset is dropped.
pub(crate) fn bond_hamiltonians(h: &LocalHamiltonian) -> Result<Vec<Array2<C64>>> {
    let n = h.n_sites();
    let d = h.phys_dim();
    if n < 2 {
        return invalid("Trotter evolution needs at least two sites");
    }
    let eye = Array2::<C64>::eye(d);
    let mut bonds = vec![Array2::<C64>::zeros((d * d, d * d)); n - 1];
    for t in h.terms() {
        let m = t.matrix().as_array();
        match t.sites() {
            [i] => {
                let touching = if *i == 0 || *i == n - 1 { 1.0 } else { 2.0 };
                let share = m.mapv(|z| z / touching);
                if *i > 0 {
                    bonds[i - 1] += &kron(&eye, &share);
                }
                if *i < n - 1 {
                    bonds[*i] += &kron(&share, &eye);
                }
            }
            [i, j] if *j == i + 1 => bonds[*i] += m,
            sites => {
                return invalid(format!("Trotter evolution needs nearest-neighbour terms, found one on {sites:?}"))
            }
        }
    }
    Ok(bonds)
}

/// Gates for one second-order step `e^{-τH}`: half steps on even bonds,
/// full steps on odd bonds.
pub(crate) struct TrotterGates {
    half: Vec<Array2<C64>>,
    full: Vec<Array2<C64>>,
}

impl TrotterGates {
    pub(crate) fn new(h: &LocalHamiltonian, tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return invalid(format!("imaginary time step must be positive, got {tau}"));
        }
        let bonds = bond_hamiltonians(h)?;
        let mut half = Vec::with_capacity(bonds.len());
        let mut full = Vec::with_capacity(bonds.len());
        for (b, hb) in bonds.iter().enumerate() {
            if b % 2 == 0 {
                half.push(hermitian_exp_array(hb, -tau / 2.0)?);
                full.push(Array2::zeros((0, 0)));
            } else {
                half.push(Array2::zeros((0, 0)));
                full.push(hermitian_exp_array(hb, -tau)?);
            }
        }
        Ok(Self { half, full })
    }

    /// Applies the step in place; returns the largest discarded weight.
    pub(crate) fn apply(&self, state: &mut MatrixProductState, chi_max: usize, tol: f64) -> Result<f64> {
        let n_bonds = self.half.len();
        let mut worst: f64 = 0.0;
        for b in (0..n_bonds).step_by(2) {
            worst = worst.max(state.apply_two_site(b, &self.half[b], chi_max, tol, true)?);
        }
        for b in (1..n_bonds).step_by(2).rev() {
            worst = worst.max(state.apply_two_site(b, &self.full[b], chi_max, tol, false)?);
        }
        for b in (0..n_bonds).step_by(2) {
            worst = worst.max(state.apply_two_site(b, &self.half[b], chi_max, tol, true)?);
        }
        Ok(worst)
    }
}

fn check_shape(state: &MatrixProductState, h: &LocalHamiltonian) -> Result<()> {
    if state.n_sites() != h.n_sites() || state.phys_dim() != h.phys_dim() {
        return invalid("state and Hamiltonian have different shapes");
    }
    Ok(())
}

/// One second-order Trotter step of `e^{-τH}`, renormalized and truncated
/// to `chi_max` with discarded-weight budget `tol` per bond.
pub fn imaginary_step(
    state: &MatrixProductState,
    h: &LocalHamiltonian,
    tau: f64,
    chi_max: usize,
    tol: f64,
) -> Result<MatrixProductState> {
    check_shape(state, h)?;
    if chi_max == 0 {
        return invalid("chi_max must be at least 1");
    }
    let gates = TrotterGates::new(h, tau)?;
    let mut next = state.clone();
    gates.apply(&mut next, chi_max, tol)?;
    Ok(next)
}

/// Settings for [`find_ground`].
#[derive(Clone, Debug, PartialEq)]
pub struct GroundSearch {
    pub chi_max: usize,
    /// `(tau, max_steps)` stages with decreasing `tau`.
    pub schedule: Vec<(f64, usize)>,
    /// A stage ends once the energy drops by less than this per step.
    pub tol: f64,
    /// Discarded-weight budget per bond and gate.
    pub truncation_tol: f64,
    /// Steps between energy evaluations.
    pub check_every: usize,
    /// Seed of the random starting state.
    pub seed: u64,
}

impl Default for GroundSearch {
    fn default() -> Self {
        Self {
            chi_max: 32,
            schedule: vec![(0.2, 200), (0.1, 400), (0.05, 600), (0.02, 1000), (0.01, 1000)],
            tol: 1e-9,
            truncation_tol: 1e-14,
            check_every: 10,
            seed: 0,
        }
    }
}

/// Imaginary-time ground search from a random state. Every stage runs
/// until the per-step energy change falls below `tol`; if the last stage
/// runs out of steps first, the lowest-energy iterate is returned inside
/// [`Error::NotConverged`].
pub fn find_ground(h: &LocalHamiltonian, cfg: &GroundSearch) -> Result<(MatrixProductState, f64)> {
    if cfg.schedule.is_empty() {
        return invalid("ground search schedule is empty");
    }
    if cfg.schedule.windows(2).any(|w| w[1].0 > w[0].0) {
        return invalid("ground search time steps must be non-increasing");
    }
    if cfg.chi_max == 0 || cfg.check_every == 0 {
        return invalid("chi_max and check_every must be positive");
    }
    let mut state = MatrixProductState::random(h.n_sites(), h.phys_dim(), cfg.chi_max, cfg.seed)?;
    let mut energy = state.energy(h)?;
    let mut best = (energy, state.clone());
    let mut total_steps = 0;
    let mut converged = false;
    for &(tau, max_steps) in &cfg.schedule {
        let gates = TrotterGates::new(h, tau)?;
        converged = false;
        let mut done = 0;
        while done < max_steps {
            let batch = cfg.check_every.min(max_steps - done);
            for _ in 0..batch {
                gates.apply(&mut state, cfg.chi_max, cfg.truncation_tol)?;
            }
            done += batch;
            let next = state.energy(h)?;
            if next < best.0 {
                best = (next, state.clone());
            }
            let per_step = (energy - next).abs() / batch as f64;
            energy = next;
            if per_step < cfg.tol {
                converged = true;
                break;
            }
        }
        total_steps += done;
        log::debug!("tau {tau}: {done} steps, energy {energy:.12}");
    }
    if !converged {
        return Err(Error::NotConverged { steps: total_steps, best_energy: best.0, best: Box::new(best.1) });
    }
    Ok((state, energy))
}
