//! Best overlap with the ground state at bounded Schmidt rank.

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Result};
use crate::linalg::{svd_array, C64};

/// Energy `1 − 2^{−m}` of the state closest to the ground state after
/// extracting `m` pairs from a Hamiltonian whose excited levels all sit at 1.
pub fn method2_cost(m: u32) -> f64 {
    1.0 - 0.5_f64.powi(m as i32)
}

/// Largest overlap `2^{−m/2}` between a maximally entangled state and any
/// state whose Schmidt rank is `2^m` times smaller.
pub fn method2_overlap_bound(m: u32) -> f64 {
    0.5_f64.powf(m as f64 / 2.0)
}

#[derive(Clone, Debug)]
pub struct OverlapAscent {
    pub overlap: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Maximizer as a `dim_a × dim_b` matrix.
    pub state: Array2<C64>,
}

fn project(psi: &Array2<C64>, rank: usize) -> Result<Array2<C64>> {
    let (u, s, v_dag) = svd_array(&psi.view())?;
    let k = rank.min(s.len());
    let mut out = Array2::zeros(psi.dim());
    let norm = s[..k].iter().map(|x| x * x).sum::<f64>().sqrt();
    for j in 0..k {
        let w = C64::new(s[j] / norm, 0.0);
        for a in 0..psi.nrows() {
            let ua = u[[a, j]] * w;
            for b in 0..psi.ncols() {
                out[[a, b]] += ua * v_dag[[j, b]];
            }
        }
    }
    Ok(out)
}

/// Maximizes `|⟨Ω|ψ⟩|` over unit states of Schmidt rank at most `rank` by
/// repeating `ψ ← P_rank(ψ + Ω)/‖·‖` from a seeded random start, where
/// `P_rank` is the truncated SVD. `omega` is the `dim_a × dim_b` amplitude
/// matrix, flattened row-major.
pub fn max_overlap_at_rank(omega: &[C64], dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<OverlapAscent> {
    if omega.len() != dim_a * dim_b || rank == 0 {
        return invalid("omega must have dim_a·dim_b amplitudes and rank must be positive");
    }
    let norm: f64 = omega.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return invalid("omega is zero");
    }
    let omega = Array2::from_shape_vec((dim_a, dim_b), omega.iter().map(|z| z / norm).collect()).expect("shape");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Array2::from_shape_simple_fn((dim_a, dim_b), || {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    });
    let overlap_of =
        |psi: &Array2<C64>| -> f64 { omega.iter().zip(psi).map(|(o, p)| o.conj() * p).sum::<C64>().norm() };
    let mut psi = project(&start, rank)?;
    let mut overlap = overlap_of(&psi);
    for it in 1..=10_000 {
        psi = project(&(&psi + &omega), rank)?;
        let next = overlap_of(&psi);
        let change = (next - overlap).abs();
        overlap = next;
        if change < 1e-15 {
            return Ok(OverlapAscent { overlap, iterations: it, converged: true, state: psi });
        }
    }
    Ok(OverlapAscent { overlap, iterations: 10_000, converged: false, state: psi })
}
