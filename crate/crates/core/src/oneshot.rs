//! One-shot extraction: majorization feasibility and the minimum energy of
//! states whose Schmidt rank across the Alice/Bob cut is capped.

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::linalg::{lowest_eigenpair, qr_array, svd_array, C64};
use crate::models::LocalHamiltonian;
use crate::mps::SchmidtSpectrum;

/// Slack allowed in majorization partial-sum comparisons.
pub const MAJORIZATION_TOL: f64 = 1e-12;

/// Whether `target` majorizes `source` on squared Schmidt weights, i.e.
/// whether `source` can be turned into `target` by LOCC: every partial sum
/// of the largest `K` target weights is at least the corresponding source sum.
pub fn majorizes(target: &SchmidtSpectrum, source: &SchmidtSpectrum) -> bool {
    let (t, s) = (target.weights(), source.weights());
    let (mut st, mut ss) = (0.0, 0.0);
    for k in 0..t.len().max(s.len()) {
        st += t.get(k).copied().unwrap_or(0.0);
        ss += s.get(k).copied().unwrap_or(0.0);
        if st + MAJORIZATION_TOL < ss {
            return false;
        }
    }
    true
}

/// Request to extract `m` EPR pairs from a state of Schmidt rank `initial_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractionBudget {
    pub m: u32,
    pub initial_rank: usize,
}

impl ExtractionBudget {
    pub fn final_rank(&self) -> Result<usize> {
        feasible_final_rank(self.initial_rank, self.m)
    }
}

/// Largest Schmidt rank left after extracting `m` EPR pairs: `⌊rank / 2^m⌋`.
pub fn feasible_final_rank(initial_rank: usize, m: u32) -> Result<usize> {
    let pairs = 1usize.checked_shl(m).filter(|&p| p <= initial_rank);
    match pairs {
        Some(p) => Ok(initial_rank / p),
        None => Err(Error::Infeasible(format!("{m} pairs need Schmidt rank 2^{m}, state has {initial_rank}"))),
    }
}

/// Cost `m/2` of extracting `m` of the toy model's `n` pairs by measuring them.
pub fn toy_cost(n: usize, m: usize) -> Result<f64> {
    if m > n {
        return Err(Error::Infeasible(format!("cannot extract {m} pairs from {n}")));
    }
    Ok(m as f64 / 2.0)
}

/// Settings for [`min_energy_at_rank`].
#[derive(Clone, Debug, PartialEq)]
pub struct RankSearch {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once an alternation lowers the energy by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for RankSearch {
    fn default() -> Self {
        Self { restarts: 20, max_iters: 300, tol: 1e-12, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct RankConstrainedMinimum {
    pub chi: usize,
    /// `log₂(ground Schmidt rank) − log₂(chi)`, in bits.
    pub delta_s0: f64,
    /// Minimum energy above the ground energy.
    pub delta_e: f64,
    pub energy: f64,
    pub ground_energy: f64,
    /// Whether the winning restart met the tolerance.
    pub converged: bool,
    /// Index of the winning restart.
    pub restart: usize,
    /// Minimizing state, dense and big-endian.
    pub state: Vec<C64>,
}

/// Minimizes `⟨ψ|H|ψ⟩` over states of Schmidt rank at most `chi` across the
/// cut, writing `ψ = A·Bᵀ` with `chi` columns. Each restart alternates exact
/// minimization over `A` (with `B` isometric) and over `B` (with `A`
/// isometric), re-projecting by SVD in between. The best restart wins; ties
/// go to the lowest restart index.
pub fn min_energy_at_rank(h: &LocalHamiltonian, chi: usize, cfg: &RankSearch) -> Result<RankConstrainedMinimum> {
    let problem = Problem::new(h)?;
    problem.solve(chi, cfg)
}

/// [`min_energy_at_rank`] for every `chi` from 1 to the largest Schmidt rank
/// the cut allows, in order.
pub fn rank_sweep(h: &LocalHamiltonian, cfg: &RankSearch) -> Result<Vec<RankConstrainedMinimum>> {
    let problem = Problem::new(h)?;
    (1..=problem.dim_a.min(problem.dim_b)).map(|chi| problem.solve(chi, cfg)).collect()
}

struct Problem {
    h: exact::SparseHamiltonian,
    dim_a: usize,
    dim_b: usize,
    e0: f64,
    ground_rank: usize,
}

struct Restart {
    energy: f64,
    converged: bool,
    a: Array2<C64>,
    b: Array2<C64>,
}

impl Problem {
    fn new(h: &LocalHamiltonian) -> Result<Self> {
        if h.n_sites() > exact::MAX_DENSE_SITES {
            return Err(Error::ResourceLimit(format!(
                "rank-constrained search limited to {} sites",
                exact::MAX_DENSE_SITES
            )));
        }
        if h.n_sites() < 2 {
            return invalid("need a cut between at least two sites");
        }
        let d = h.phys_dim();
        let dim_a = d.pow(h.ab_cut() as u32);
        let dim_b = d.pow((h.n_sites() - h.ab_cut()) as u32);
        let (e0, ground) = exact::ground_state(h)?;
        let ground_rank = exact::schmidt(&ground, h.n_sites(), d, h.ab_cut())?.rank(1e-12);
        Ok(Self { h: exact::SparseHamiltonian::new(h)?, dim_a, dim_b, e0, ground_rank })
    }

    /// `H` applied to the dense state `a·bᵀ`, returned as a `dim_a × dim_b` matrix.
    fn apply(&self, psi: &Array2<C64>) -> Array2<C64> {
        let flat: Vec<C64> = psi.iter().copied().collect();
        debug_assert_eq!(flat.len(), self.h.dim());
        let out = self.h.apply(&flat);
        Array2::from_shape_vec((self.dim_a, self.dim_b), out).expect("shape")
    }

    fn solve(&self, chi: usize, cfg: &RankSearch) -> Result<RankConstrainedMinimum> {
        if chi == 0 {
            return invalid("chi must be at least 1");
        }
        if cfg.restarts == 0 {
            return invalid("need at least one restart");
        }
        let chi_eff = chi.min(self.dim_a).min(self.dim_b);
        let runs: Vec<Result<Restart>> =
            (0..cfg.restarts).into_par_iter().map(|r| self.restart(chi_eff, cfg, r)).collect();
        let mut best: Option<(usize, Restart)> = None;
        for (r, run) in runs.into_iter().enumerate() {
            let run = run?;
            if best.as_ref().is_none_or(|(_, b)| run.energy < b.energy) {
                best = Some((r, run));
            }
        }
        let (restart, run) = best.expect("at least one restart");
        if !run.converged {
            log::warn!("rank {chi} search: best restart {restart} hit the iteration limit");
        }
        let psi = run.a.dot(&run.b.t());
        Ok(RankConstrainedMinimum {
            chi,
            delta_s0: (self.ground_rank as f64).log2() - (chi as f64).log2(),
            delta_e: run.energy - self.e0,
            energy: run.energy,
            ground_energy: self.e0,
            converged: run.converged,
            restart,
            state: psi.iter().copied().collect(),
        })
    }

    fn restart(&self, chi: usize, cfg: &RankSearch, index: usize) -> Result<Restart> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        let mut gaussian = |rows: usize, cols: usize| {
            Array2::from_shape_simple_fn((rows, cols), || {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re, im)
            })
        };
        let (mut b, _) = qr_array(gaussian(self.dim_b, chi))?;
        let mut a = gaussian(self.dim_a, chi);
        let mut energy = f64::INFINITY;
        for _ in 0..cfg.max_iters {
            // Optimize A against the isometry B, then make A the isometry.
            let (_, a_opt) = self.optimize_left(&a, &b)?;
            let (u, vb) = split(&a_opt.dot(&b.t()), chi, true)?;
            let (e_b, b_opt) = self.optimize_right(&u, &vb)?;
            let (ua, v) = split(&u.dot(&b_opt.t()), chi, false)?;
            a = ua;
            b = v;
            let improvement = energy - e_b;
            energy = e_b;
            if improvement.abs() < cfg.tol {
                return Ok(Restart { energy, converged: true, a, b });
            }
        }
        Ok(Restart { energy, converged: false, a, b })
    }

    /// Lowest energy over `A` for fixed isometric `B`.
    fn optimize_left(&self, a: &Array2<C64>, b: &Array2<C64>) -> Result<(f64, Array2<C64>)> {
        let (dim_a, chi) = a.dim();
        let b_conj = b.mapv(|z| z.conj());
        let apply = |x: &Array1<C64>| -> Array1<C64> {
            let xa = x.view().into_shape_with_order((dim_a, chi)).expect("shape");
            let hpsi = self.apply(&xa.dot(&b.t()));
            Array1::from_iter(hpsi.dot(&b_conj))
        };
        let start = Array1::from_iter(a.iter().copied());
        let (e, v, _) = lowest_eigenpair(apply, start, 40, 200, 1e-11)?;
        Ok((e, v.into_shape_with_order((dim_a, chi)).expect("shape")))
    }

    /// Lowest energy over `B` for fixed isometric `A`.
    fn optimize_right(&self, a: &Array2<C64>, b: &Array2<C64>) -> Result<(f64, Array2<C64>)> {
        let (dim_b, chi) = b.dim();
        let a_dag = a.t().mapv(|z| z.conj());
        let apply = |x: &Array1<C64>| -> Array1<C64> {
            let xb = x.view().into_shape_with_order((dim_b, chi)).expect("shape");
            let hpsi = self.apply(&a.dot(&xb.t()));
            Array1::from_iter(a_dag.dot(&hpsi).t().iter().copied())
        };
        let start = Array1::from_iter(b.iter().copied());
        let (e, v, _) = lowest_eigenpair(apply, start, 40, 200, 1e-11)?;
        Ok((e, v.into_shape_with_order((dim_b, chi)).expect("shape")))
    }
}

/// Rank-`chi` SVD split of `psi = L·Rᵀ`. With `left_isometric`, `L` has
/// orthonormal columns and `R` carries the weights; otherwise the reverse.
fn split(psi: &Array2<C64>, chi: usize, left_isometric: bool) -> Result<(Array2<C64>, Array2<C64>)> {
    let (u, s, v_dag) = svd_array(&psi.view())?;
    let k = chi.min(s.len());
    let norm = s[..k].iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut u = u.slice(ndarray::s![.., ..k]).to_owned();
    let mut v = v_dag.slice(ndarray::s![..k, ..]).t().to_owned();
    let weighted = if left_isometric { &mut v } else { &mut u };
    for (mut col, &sigma) in weighted.columns_mut().into_iter().zip(&s) {
        col.mapv_inplace(|z| z * (sigma / norm));
    }
    Ok((u, v))
}
