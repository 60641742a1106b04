//! Product-of-pairs ansatz for asymptotic extraction and the stationarity
//! residual of the entropy-constrained energy minimization.

use ndarray::{Array2, ArrayView2};

use crate::error::{invalid, Result};
use crate::exact;
use crate::linalg::{eigh_array, svd_array, C64};
use crate::models::LocalHamiltonian;

/// Eigenvalues of `ρ_B` are floored here before taking the logarithm.
pub const LOG_EIGENVALUE_FLOOR: f64 = 1e-12;

/// Every pair in the state `α|00⟩ + β|11⟩`, with `β = √(1 − α²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Method1Ansatz {
    pub alpha: f64,
    pub beta: f64,
    /// Energy of the ansatz in the toy model of `n` pairs.
    pub delta_e: f64,
}

fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Chooses `α ≥ β` so that `n` pairs keep `n − m` bits of entanglement,
/// `h₂(α²) = (n − m)/n`, solved by bisection on `α² ∈ [1/2, 1]`. The energy
/// cost is `n[1 − (α + β)²/2]`.
pub fn method1_ansatz(n: usize, m: usize) -> Result<Method1Ansatz> {
    if n == 0 || m > n {
        return invalid(format!("need 0 <= m <= n with n >= 1, got n={n}, m={m}"));
    }
    let target = (n - m) as f64 / n as f64;
    let p = if m == 0 {
        0.5
    } else if m == n {
        1.0
    } else {
        // h₂ decreases from 1 to 0 on [1/2, 1].
        let (mut lo, mut hi) = (0.5_f64, 1.0_f64);
        while hi - lo > 1e-15 {
            let mid = 0.5 * (lo + hi);
            if binary_entropy(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let alpha = p.sqrt();
    let beta = (1.0 - p).sqrt();
    Ok(Method1Ansatz { alpha, beta, delta_e: n as f64 * (1.0 - (alpha + beta).powi(2) / 2.0) })
}

/// Dense state with every pair of the Hamiltonian's pair layout in
/// `α|00⟩ + β|11⟩`.
pub fn paired_product_state(h: &LocalHamiltonian, alpha: f64, beta: f64) -> Result<Vec<C64>> {
    let layout = match h.pair_layout() {
        Some(l) if h.phys_dim() == 2 && 2 * l.len() == h.n_sites() => l,
        _ => return invalid("paired product state needs a qubit Hamiltonian with a full pair layout"),
    };
    let n = h.n_sites();
    if n > exact::MAX_DENSE_SITES {
        return invalid(format!("dense state limited to {} sites", exact::MAX_DENSE_SITES));
    }
    let norm = (alpha * alpha + beta * beta).sqrt();
    let bit = |idx: usize, site: usize| (idx >> (n - 1 - site)) & 1;
    let psi = (0..1usize << n)
        .map(|idx| {
            let mut amp = 1.0;
            for &(a, b) in layout {
                amp *= match (bit(idx, a), bit(idx, b)) {
                    (0, 0) => alpha / norm,
                    (1, 1) => beta / norm,
                    _ => 0.0,
                };
            }
            C64::new(amp, 0.0)
        })
        .collect();
    Ok(psi)
}

/// The pieces of the stationarity condition evaluated on `ψ`:
/// `Hψ`, `(1_A ⊗ ln ρ_B)ψ + ψ`, and `ψ`, each as a flat vector.
fn stationarity_parts(state: &[C64], h: &LocalHamiltonian) -> Result<(Vec<C64>, Vec<C64>, Vec<C64>)> {
    let n = h.n_sites();
    if n > exact::MAX_DENSE_SITES {
        return invalid(format!("dense residual limited to {} sites", exact::MAX_DENSE_SITES));
    }
    let norm: f64 = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return invalid("zero state");
    }
    let psi: Vec<C64> = state.iter().map(|z| z / norm).collect();
    let h_psi = exact::apply(h, &psi)?;
    let d = h.phys_dim();
    let cut = h.ab_cut();
    let rho = exact::reduced_density_right(&psi, n, d, cut);
    let (vals, vecs) = eigh_array(&rho)?;
    if vals[0] < LOG_EIGENVALUE_FLOOR {
        log::warn!("reduced state is rank deficient (smallest eigenvalue {:.3e}); log is regularized", vals[0]);
    }
    let logs: Vec<C64> = vals.iter().map(|&v| C64::new(v.max(LOG_EIGENVALUE_FLOOR).ln(), 0.0)).collect();
    let scaled = &vecs * &ndarray::Array1::from(logs).insert_axis(ndarray::Axis(0));
    let log_rho = scaled.dot(&vecs.t().mapv(|z| z.conj()));
    let rows = d.pow(cut as u32);
    let m = ArrayView2::from_shape((rows, psi.len() / rows), &psi).expect("shape");
    // (1 ⊗ L)ψ as a matrix is ψ·Lᵀ.
    let g: Vec<C64> = m.dot(&log_rho.t()).iter().zip(&psi).map(|(x, p)| x + p).collect();
    Ok((h_psi, g, psi))
}

fn norm(v: impl Iterator<Item = C64>) -> f64 {
    v.map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖[H − μ₁(1_A ⊗ ln ρ_B) − μ₁ + μ₂]ψ‖` for the normalized `ψ`, with `ρ_B`
/// the reduced state right of the Alice/Bob cut (natural logarithm).
pub fn lagrange_residual(state: &[C64], h: &LocalHamiltonian, mu1: f64, mu2: f64) -> Result<f64> {
    let (hp, g, psi) = stationarity_parts(state, h)?;
    Ok(norm(hp.iter().zip(&g).zip(&psi).map(|((a, b), c)| a - b * mu1 + c * mu2)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangeFit {
    pub mu1: f64,
    pub mu2: f64,
    pub residual: f64,
}

/// Multipliers minimizing [`lagrange_residual`] (real least squares) and the
/// residual they leave.
pub fn lagrange_best_fit(state: &[C64], h: &LocalHamiltonian) -> Result<LagrangeFit> {
    let (hp, g, psi) = stationarity_parts(state, h)?;
    // residual = hp + x1·(−g) + x2·ψ, minimized over real x.
    let cols = [g.iter().map(|z| -z).collect::<Vec<_>>(), psi.clone()];
    let dot = |a: &[C64], b: &[C64]| -> f64 { a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum() };
    let gram = Array2::from_shape_fn((2, 2), |(i, j)| C64::new(dot(&cols[i], &cols[j]), 0.0));
    let rhs = [-dot(&cols[0], &hp), -dot(&cols[1], &hp)];
    // Pseudo-inverse handles the case where ln ρ_B is a multiple of the identity.
    let (u, s, v_dag) = svd_array(&gram.view())?;
    let mut x = [0.0; 2];
    for k in 0..2 {
        if s[k] > 1e-12 * s[0].max(1e-300) {
            let coeff = (u[[0, k]].conj() * rhs[0] + u[[1, k]].conj() * rhs[1]).re / s[k];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += v_dag[[k, i]].conj().re * coeff;
            }
        }
    }
    let residual = norm(hp.iter().zip(&g).zip(&psi).map(|((a, b), c)| a - b * x[0] + c * x[1]));
    Ok(LagrangeFit { mu1: x[0], mu2: x[1], residual })
}
