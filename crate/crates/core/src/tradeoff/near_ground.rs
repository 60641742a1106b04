//! Leading-order entropy and energy response when the top Schmidt weight of
//! a ground state is boosted.
//!
//! With Schmidt weights `p_α = λ_α²` perturbed to `(p_α + ε δ_{α0})/(1 + ε)`,
//! the cut entropy changes by `c1·ε + O(ε²)` and the energy by `c2·ε² + O(ε³)`.

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::linalg::C64;
use crate::models::LocalHamiltonian;

/// Minimum gap `λ0² − λ1²` for the top Schmidt vector to be well defined.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearGroundCoefficients {
    /// Entropy change per unit `ε`, in bits: `−(S + log₂ λ0²)`.
    pub c1: f64,
    /// Energy change per `ε²`: `⟨l0 r0|(H − E0)|l0 r0⟩ / (4 λ0²)`.
    pub c2: f64,
    pub top_weight: f64,
    pub entropy_bits: f64,
}

fn check(ground: &[C64], h: &LocalHamiltonian) -> Result<()> {
    let dim = h.phys_dim().checked_pow(h.n_sites() as u32);
    if dim != Some(ground.len()) {
        return invalid(format!("dense state has {} amplitudes for a {}-site chain", ground.len(), h.n_sites()));
    }
    if h.n_sites() > exact::MAX_DENSE_SITES {
        return Err(Error::ResourceLimit(format!("dense ground state limited to {} sites", exact::MAX_DENSE_SITES)));
    }
    Ok(())
}

/// Coefficients at the Hamiltonian's Alice/Bob cut.
pub fn near_ground_coefficients(ground: &[C64], h: &LocalHamiltonian, e0: f64) -> Result<NearGroundCoefficients> {
    check(ground, h)?;
    let (u, s, v_dag) = exact::schmidt_decomposition(ground, h.n_sites(), h.phys_dim(), h.ab_cut())?;
    let total: f64 = s.iter().map(|x| x * x).sum();
    let weights: Vec<f64> = s.iter().map(|x| x * x / total).collect();
    let gap = weights[0] - weights.get(1).copied().unwrap_or(0.0);
    if gap < DEGENERACY_TOL {
        return Err(Error::Degenerate { gap });
    }
    let entropy_bits: f64 = -weights.iter().filter(|&&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>();
    let top = product_vector(&u, &v_dag, 0);
    let energy = exact::expectation(h, &top)?;
    Ok(NearGroundCoefficients {
        c1: -(entropy_bits + weights[0].log2()),
        c2: (energy - e0) / (4.0 * weights[0]),
        top_weight: weights[0],
        entropy_bits,
    })
}

/// `|l_k⟩ ⊗ |r_k⟩` as a dense vector.
fn product_vector(u: &ndarray::Array2<C64>, v_dag: &ndarray::Array2<C64>, k: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(u.nrows() * v_dag.ncols());
    for a in 0..u.nrows() {
        for b in 0..v_dag.ncols() {
            out.push(u[[a, k]] * v_dag[[k, b]]);
        }
    }
    out
}

/// The normalized state with top Schmidt weight raised by `epsilon` at the
/// cut, `Σ √(λ_α² + ε δ_{α0}) |l_α r_α⟩ / √(1+ε)`. Negative `epsilon` is
/// allowed down to `−λ0²`, which finite-difference checks need.
pub fn boost_top_weight(ground: &[C64], h: &LocalHamiltonian, epsilon: f64) -> Result<Vec<C64>> {
    check(ground, h)?;
    let (u, s, v_dag) = exact::schmidt_decomposition(ground, h.n_sites(), h.phys_dim(), h.ab_cut())?;
    let total: f64 = s.iter().map(|x| x * x).sum();
    let mut coeffs: Vec<f64> = s.iter().map(|x| x * x / total).collect();
    if coeffs[0] + epsilon < 0.0 {
        return invalid(format!("epsilon {epsilon} removes more than the top weight"));
    }
    coeffs[0] += epsilon;
    let norm = (1.0 + epsilon).sqrt();
    let mut out = vec![C64::new(0.0, 0.0); ground.len()];
    for (k, p) in coeffs.iter().enumerate() {
        let amp = p.sqrt() / norm;
        if amp == 0.0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(product_vector(&u, &v_dag, k)) {
            *o += x * amp;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{tfi_critical, toy_model};

    #[test]
    fn bell_pair_is_degenerate() {
        let h = toy_model(1).unwrap();
        let (e0, psi) = exact::ground_state(&h).unwrap();
        assert!(matches!(near_ground_coefficients(&psi, &h, e0), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn zero_boost_is_identity() {
        let h = tfi_critical(4).unwrap();
        let (_, psi) = exact::ground_state(&h).unwrap();
        let same = boost_top_weight(&psi, &h, 0.0).unwrap();
        let ov: C64 = psi.iter().zip(&same).map(|(a, b)| a.conj() * b).sum();
        assert!((ov.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_slope_is_nonpositive() {
        let h = tfi_critical(6).unwrap();
        let (e0, psi) = exact::ground_state(&h).unwrap();
        let c = near_ground_coefficients(&psi, &h, e0).unwrap();
        assert!(c.c1 <= 0.0);
        assert!(c.c2 >= 0.0);
    }
}
