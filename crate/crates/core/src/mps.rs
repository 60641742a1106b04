//! Open-boundary matrix product states with a movable orthogonality center.
//!
//! Site tensors have shape `(left bond, physical, right bond)`. When
//! `canonical_center` is `Some(c)`, every tensor left of `c` is a left
//! isometry and every tensor right of `c` is a right isometry, so the norm of
//! the state is the norm of tensor `c` and the singular values of tensor `c`
//! reshaped as `(left·phys, right)` are the Schmidt coefficients of the cut
//! just after site `c`.
//!
//! Bonds are numbered from 1: bond `b` separates sites `1..=b` from
//! `b+1..=n` (1-based), i.e. it sits between the 0-based tensors `b-1` and `b`.
//! Dense amplitude vectors are big-endian: site 0 is the most significant digit.

use ndarray::{s, Array2, Array3, Axis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::linalg::{dagger, qr_array, svd_array, C64};
use crate::models::LocalHamiltonian;

/// Largest tolerated deviation from unit norm.
pub const NORM_TOL: f64 = 1e-10;

/// Dense conversion is refused beyond this many sites.
pub const MAX_DENSE_SITES: usize = 16;

/// Descending, normalized Schmidt coefficients across one cut.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Takes coefficients `λ_α` (not squared) that must already satisfy
    /// `Σ λ² = 1` within [`NORM_TOL`]. They are sorted descending (stably).
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return invalid("empty Schmidt spectrum");
        }
        if coefficients.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return invalid("Schmidt coefficients must be finite and nonnegative");
        }
        let total: f64 = coefficients.iter().map(|x| x * x).sum();
        if (total - 1.0).abs() > NORM_TOL {
            return invalid(format!("Schmidt weights sum to {total}, not 1"));
        }
        coefficients.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { coefficients })
    }

    /// Normalizes arbitrary nonnegative coefficients.
    pub fn from_unnormalized(coefficients: Vec<f64>) -> Result<Self> {
        let total: f64 = coefficients.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(total > 0.0) || !total.is_finite() {
            return invalid("Schmidt coefficients have zero or non-finite norm");
        }
        Self::new(coefficients.into_iter().map(|x| x / total).collect())
    }

    /// Builds the spectrum from squared weights (probabilities), normalizing them.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return invalid("Schmidt weights must be finite and nonnegative");
        }
        Self::from_unnormalized(weights.iter().map(|w| w.sqrt()).collect())
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Squared coefficients, descending.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|x| x * x).collect()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Number of squared weights strictly above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&x| x * x > tol).count()
    }

    /// Entanglement entropy `-Σ λ² log₂ λ²` in bits.
    pub fn entropy_bits(&self) -> f64 {
        -self.coefficients.iter().map(|x| x * x).filter(|&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
    }

    /// `log₂` of the Schmidt rank, counting weights above `tol`.
    pub fn renyi0_bits(&self, tol: f64) -> f64 {
        (self.rank(tol).max(1) as f64).log2()
    }

    /// Coefficients raised to `1 + epsilon` and renormalized.
    pub fn sharpened(&self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) {
            return invalid(format!("sharpening exponent must be >= 0, got {epsilon}"));
        }
        Self::from_unnormalized(self.coefficients.iter().map(|x| x.powf(1.0 + epsilon)).collect())
    }
}

#[derive(Clone, Debug)]
pub struct MatrixProductState {
    tensors: Vec<Array3<C64>>,
    phys_dim: usize,
    center: Option<usize>,
}

impl MatrixProductState {
    /// Validates the bond structure and normalizes the state.
    pub fn from_tensors(tensors: Vec<Array3<C64>>) -> Result<Self> {
        if tensors.is_empty() {
            return invalid("an MPS needs at least one site");
        }
        let phys_dim = tensors[0].dim().1;
        if tensors[0].dim().0 != 1 || tensors[tensors.len() - 1].dim().2 != 1 {
            return invalid("boundary bond dimensions must be 1");
        }
        for (i, t) in tensors.iter().enumerate() {
            if t.dim().1 != phys_dim || phys_dim == 0 {
                return invalid(format!("site {i} has physical dimension {}", t.dim().1));
            }
            if i + 1 < tensors.len() && t.dim().2 != tensors[i + 1].dim().0 {
                return invalid(format!("bond dimension mismatch between sites {i} and {}", i + 1));
            }
            if t.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return invalid(format!("site {i} has non-finite entries"));
            }
        }
        let tensors = tensors.into_iter().map(|t| t.as_standard_layout().into_owned()).collect();
        let mut state = Self { tensors, phys_dim, center: None };
        state.normalize()?;
        Ok(state)
    }

    /// Product state from one local amplitude vector per site.
    pub fn product(local_states: &[Vec<C64>]) -> Result<Self> {
        let tensors = local_states
            .iter()
            .map(|v| Array3::from_shape_vec((1, v.len(), 1), v.clone()).expect("shape matches length"))
            .collect();
        Self::from_tensors(tensors)
    }

    /// Computational basis product state `|digits[0] digits[1] ...⟩`.
    pub fn basis_state(digits: &[usize], phys_dim: usize) -> Result<Self> {
        if digits.iter().any(|&x| x >= phys_dim) {
            return invalid("basis digit out of range");
        }
        let locals: Vec<Vec<C64>> = digits
            .iter()
            .map(|&x| {
                let mut v = vec![C64::new(0.0, 0.0); phys_dim];
                v[x] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::product(&locals)
    }

    /// Exact MPS of a dense amplitude vector by successive SVDs.
    pub fn from_dense(amplitudes: &[C64], n_sites: usize, phys_dim: usize) -> Result<Self> {
        if n_sites == 0 || phys_dim == 0 {
            return invalid("need at least one site and a positive physical dimension");
        }
        let expected =
            checked_pow(phys_dim, n_sites).ok_or_else(|| Error::ResourceLimit("dense state too large".into()))?;
        if amplitudes.len() != expected {
            return invalid(format!("expected {expected} amplitudes, got {}", amplitudes.len()));
        }
        let mut tensors = Vec::with_capacity(n_sites);
        let mut rest = Array2::from_shape_vec((1, expected), amplitudes.to_vec()).expect("shape");
        let mut left = 1;
        for _ in 0..n_sites - 1 {
            let cols = rest.len() / (left * phys_dim);
            let m = rest.into_shape_with_order((left * phys_dim, cols)).expect("contiguous");
            let (u, sv, vt) = svd_array(&m.view())?;
            let k = sv.iter().filter(|&&x| x > 0.0).count().max(1);
            tensors.push(u.slice(s![.., ..k]).to_owned().into_shape_with_order((left, phys_dim, k)).expect("shape"));
            let mut next = vt.slice(s![..k, ..]).to_owned();
            for (mut row, &sigma) in next.rows_mut().into_iter().zip(&sv) {
                row.mapv_inplace(|z| z * sigma);
            }
            rest = next;
            left = k;
        }
        tensors.push(rest.into_shape_with_order((left, phys_dim, 1)).expect("shape"));
        let mut state = Self { tensors, phys_dim, center: Some(n_sites - 1) };
        state.normalize()?;
        Ok(state)
    }

    /// Random normalized state with every bond at `min(chi, largest possible)`.
    /// Entries are complex Gaussians drawn from a ChaCha stream seeded with `seed`.
    pub fn random(n_sites: usize, phys_dim: usize, chi: usize, seed: u64) -> Result<Self> {
        if n_sites < 2 {
            return invalid("random MPS needs at least 2 sites");
        }
        if chi == 0 || phys_dim == 0 {
            return invalid("bond and physical dimensions must be positive");
        }
        let dims: Vec<usize> = (0..=n_sites)
            .map(|b| chi.min(capped_pow(phys_dim, b, chi)).min(capped_pow(phys_dim, n_sites - b, chi)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tensors = (0..n_sites)
            .map(|i| {
                Array3::from_shape_simple_fn((dims[i], phys_dim, dims[i + 1]), || {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    C64::new(re, im)
                })
            })
            .collect();
        let mut state = Self { tensors, phys_dim, center: None };
        state.normalize()?;
        Ok(state)
    }

    pub fn n_sites(&self) -> usize {
        self.tensors.len()
    }

    pub fn phys_dim(&self) -> usize {
        self.phys_dim
    }

    pub fn canonical_center(&self) -> Option<usize> {
        self.center
    }

    pub fn tensors(&self) -> &[Array3<C64>] {
        &self.tensors
    }

    /// Dimensions of the internal bonds `1..n_sites`.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.tensors[..self.tensors.len() - 1].iter().map(|t| t.dim().2).collect()
    }

    pub fn max_bond_dim(&self) -> usize {
        self.bond_dims().into_iter().max().unwrap_or(1)
    }

    pub fn norm(&self) -> f64 {
        match self.center {
            Some(c) => frobenius(&self.tensors[c]),
            None => self.overlap_raw(self).re.max(0.0).sqrt(),
        }
    }

    pub fn schmidt(&self, bond: usize) -> Result<SchmidtSpectrum> {
        self.check_bond(bond)?;
        let mut work = self.clone();
        work.move_center(bond - 1)?;
        let t = &work.tensors[bond - 1];
        let (l, d, r) = t.dim();
        let m = t.view().into_shape_with_order((l * d, r)).expect("standard layout");
        let (_, sv, _) = svd_array(&m)?;
        SchmidtSpectrum::from_unnormalized(sv.into_iter().filter(|&x| x > 0.0).collect())
    }

    /// Entanglement entropy in bits across `bond`.
    pub fn entropy_bits(&self, bond: usize) -> Result<f64> {
        Ok(self.schmidt(bond)?.entropy_bits())
    }

    /// Optimal SVD compression: every bond ends up with at most `chi_max`
    /// states, smallest weights discarded first while the discarded weight
    /// stays within `tol`, then the state is renormalized.
    pub fn truncate(&self, chi_max: usize, tol: f64) -> Result<Self> {
        if chi_max == 0 {
            return invalid("chi_max must be at least 1");
        }
        let n = self.n_sites();
        let mut work = self.clone();
        work.move_center(n - 1)?;
        for i in (1..n).rev() {
            let (l, d, r) = work.tensors[i].dim();
            let m = work.tensors[i].view().into_shape_with_order((l, d * r)).expect("standard layout").to_owned();
            let (u, sv, vt) = svd_array(&m.view())?;
            let k = kept_count(&sv, chi_max, tol);
            work.tensors[i] = vt.slice(s![..k, ..]).to_owned().into_shape_with_order((k, d, r)).expect("shape");
            let mut us = u.slice(s![.., ..k]).to_owned();
            for (mut col, &sigma) in us.columns_mut().into_iter().zip(&sv) {
                col.mapv_inplace(|z| z * sigma);
            }
            let (l0, d0, _) = work.tensors[i - 1].dim();
            let prev = work.tensors[i - 1].view().into_shape_with_order((l0 * d0, l)).expect("standard layout");
            work.tensors[i - 1] = prev.dot(&us).into_shape_with_order((l0, d0, k)).expect("shape");
            work.center = Some(i - 1);
        }
        work.normalize()?;
        Ok(work)
    }

    /// `⟨ψ|H|ψ⟩` for a normalized state.
    pub fn energy(&self, h: &LocalHamiltonian) -> Result<f64> {
        if h.n_sites() != self.n_sites() || h.phys_dim() != self.phys_dim {
            return invalid(format!(
                "Hamiltonian on {} sites (d={}) applied to MPS on {} sites (d={})",
                h.n_sites(),
                h.phys_dim(),
                self.n_sites(),
                self.phys_dim
            ));
        }
        let lenv = self.left_envs();
        let renv = self.right_envs();
        let norm2 = lenv[self.n_sites()][[0, 0]].re;
        let z = pauli_z(self.phys_dim);
        let mut total = C64::new(0.0, 0.0);
        for term in h.terms() {
            let m = term.matrix().as_array();
            let sites = term.sites();
            match sites {
                [i] => total += self.product_expectation(&lenv, &renv, &[(*i, m.clone())]),
                [i, j] => {
                    let d = self.phys_dim;
                    for p in 0..d {
                        for q in 0..d {
                            let block = m.slice(s![p * d..(p + 1) * d, q * d..(q + 1) * d]);
                            if block.iter().all(|x| x.norm() == 0.0) {
                                continue;
                            }
                            let mut left_op = Array2::zeros((d, d));
                            left_op[[p, q]] = C64::new(1.0, 0.0);
                            let mut factors = vec![(*i, left_op)];
                            if term.has_string() {
                                factors.extend((i + 1..*j).map(|k| (k, z.clone())));
                            }
                            factors.push((*j, block.to_owned()));
                            total += self.product_expectation(&lenv, &renv, &factors);
                        }
                    }
                }
                _ => unreachable!("terms act on one or two sites"),
            }
        }
        Ok(total.re / norm2 + h.offset())
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Result<C64> {
        if self.n_sites() != other.n_sites() || self.phys_dim != other.phys_dim {
            return invalid("overlap of MPS with different shapes");
        }
        Ok(self.overlap_raw(other))
    }

    /// Dense amplitudes, big-endian in the site index.
    pub fn to_dense(&self) -> Result<Vec<C64>> {
        if self.n_sites() > MAX_DENSE_SITES {
            return Err(Error::ResourceLimit(format!(
                "dense conversion limited to {MAX_DENSE_SITES} sites, state has {}",
                self.n_sites()
            )));
        }
        let mut acc = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
        for t in &self.tensors {
            let (l, d, r) = t.dim();
            let rows = acc.nrows();
            let m = t.view().into_shape_with_order((l, d * r)).expect("standard layout");
            acc = acc.dot(&m).into_shape_with_order((rows * d, r)).expect("shape");
        }
        Ok(acc.into_iter().collect())
    }

    pub(crate) fn check_bond(&self, bond: usize) -> Result<()> {
        if bond == 0 || bond >= self.n_sites() {
            return invalid(format!("bond {bond} out of range 1..={}", self.n_sites() - 1));
        }
        Ok(())
    }

    /// Rescales to unit norm, canonicalizing first if needed.
    fn normalize(&mut self) -> Result<()> {
        if self.center.is_none() {
            self.move_center(0)?;
        }
        let c = self.center.expect("center set");
        let nrm = frobenius(&self.tensors[c]);
        if !(nrm > 0.0) || !nrm.is_finite() {
            return invalid("state has zero or non-finite norm");
        }
        self.tensors[c].mapv_inplace(|z| z / nrm);
        Ok(())
    }

    pub(crate) fn move_center(&mut self, target: usize) -> Result<()> {
        let n = self.n_sites();
        assert!(target < n, "center {target} out of range");
        match self.center {
            None => {
                for i in 0..target {
                    self.shift_right(i)?;
                }
                for i in (target + 1..n).rev() {
                    self.shift_left(i)?;
                }
            }
            Some(c) if c < target => {
                for i in c..target {
                    self.shift_right(i)?;
                }
            }
            Some(c) => {
                for i in (target + 1..=c).rev() {
                    self.shift_left(i)?;
                }
            }
        }
        self.center = Some(target);
        Ok(())
    }

    /// Left-orthonormalizes site `i`, pushing the remainder into site `i+1`.
    fn shift_right(&mut self, i: usize) -> Result<()> {
        let (l, d, r) = self.tensors[i].dim();
        let m = std::mem::take(&mut self.tensors[i]).into_shape_with_order((l * d, r)).expect("standard layout");
        let (q, rr) = qr_array(m)?;
        let k = q.ncols();
        self.tensors[i] = q.into_shape_with_order((l, d, k)).expect("shape");
        let (_, d2, r2) = self.tensors[i + 1].dim();
        let next = self.tensors[i + 1].view().into_shape_with_order((r, d2 * r2)).expect("standard layout");
        self.tensors[i + 1] = rr.dot(&next).into_shape_with_order((k, d2, r2)).expect("shape");
        Ok(())
    }

    /// Right-orthonormalizes site `i`, pushing the remainder into site `i-1`.
    fn shift_left(&mut self, i: usize) -> Result<()> {
        let (l, d, r) = self.tensors[i].dim();
        let m = self.tensors[i].view().into_shape_with_order((l, d * r)).expect("standard layout");
        let (q, rr) = qr_array(dagger(&m))?;
        let k = q.ncols();
        self.tensors[i] = dagger(&q.view()).into_shape_with_order((k, d, r)).expect("shape");
        let (l0, d0, _) = self.tensors[i - 1].dim();
        let prev = self.tensors[i - 1].view().into_shape_with_order((l0 * d0, l)).expect("standard layout");
        self.tensors[i - 1] = prev.dot(&dagger(&rr.view())).into_shape_with_order((l0, d0, k)).expect("shape");
        Ok(())
    }

    /// Applies a `d²×d²` operator to sites `(i, i+1)`, splits the result by
    /// SVD and truncates. The center ends on `i+1` when `move_right`, else on
    /// `i`. Returns the discarded weight fraction.
    pub(crate) fn apply_two_site(
        &mut self,
        i: usize,
        gate: &Array2<C64>,
        chi_max: usize,
        tol: f64,
        move_right: bool,
    ) -> Result<f64> {
        match self.center {
            Some(c) if c == i || c == i + 1 => {}
            _ => self.move_center(i)?,
        }
        let d = self.phys_dim;
        let (l, _, m) = self.tensors[i].dim();
        let (_, _, r) = self.tensors[i + 1].dim();
        let a = self.tensors[i].view().into_shape_with_order((l * d, m)).expect("standard layout");
        let b = self.tensors[i + 1].view().into_shape_with_order((m, d * r)).expect("standard layout");
        let theta = a.dot(&b).into_shape_with_order((l, d * d, r)).expect("shape");
        let phys_first = theta
            .permuted_axes([1, 0, 2])
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order((d * d, l * r))
            .expect("shape");
        let applied = gate
            .dot(&phys_first)
            .into_shape_with_order((d * d, l, r))
            .expect("shape")
            .permuted_axes([1, 0, 2])
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order((l * d, d * r))
            .expect("shape");
        let (u, mut sv, vt) = svd_array(&applied.view())?;
        let total: f64 = sv.iter().map(|x| x * x).sum();
        if !(total > 0.0) {
            return invalid("two-site update annihilated the state");
        }
        let k = kept_count(&sv, chi_max, tol);
        sv.truncate(k);
        let kept: f64 = sv.iter().map(|x| x * x).sum();
        let scale = kept.sqrt();
        sv.iter_mut().for_each(|x| *x /= scale);
        let mut u = u.slice(s![.., ..k]).to_owned();
        let mut vt = vt.slice(s![..k, ..]).to_owned();
        if move_right {
            for (mut row, &sigma) in vt.rows_mut().into_iter().zip(&sv) {
                row.mapv_inplace(|z| z * sigma);
            }
            self.center = Some(i + 1);
        } else {
            for (mut col, &sigma) in u.columns_mut().into_iter().zip(&sv) {
                col.mapv_inplace(|z| z * sigma);
            }
            self.center = Some(i);
        }
        self.tensors[i] = u.into_shape_with_order((l, d, k)).expect("shape");
        self.tensors[i + 1] = vt.into_shape_with_order((k, d, r)).expect("shape");
        Ok(1.0 - kept / total)
    }

    /// Replaces the Schmidt coefficients at `bond` by `λ^{1+ε}` (renormalized)
    /// keeping the Schmidt vectors.
    pub(crate) fn sharpen_in_place(&mut self, bond: usize, epsilon: f64) -> Result<()> {
        self.check_bond(bond)?;
        if !(epsilon >= 0.0) {
            return invalid(format!("sharpening exponent must be >= 0, got {epsilon}"));
        }
        let site = bond - 1;
        self.move_center(site)?;
        let (l, d, r) = self.tensors[site].dim();
        let m = self.tensors[site].view().into_shape_with_order((l * d, r)).expect("standard layout");
        let (u, sv, vt) = svd_array(&m)?;
        let k = sv.iter().filter(|&&x| x > 0.0).count().max(1);
        let powered: Vec<f64> = sv[..k].iter().map(|x| x.powf(1.0 + epsilon)).collect();
        let scale = powered.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut u = u.slice(s![.., ..k]).to_owned();
        for (mut col, &sigma) in u.columns_mut().into_iter().zip(&powered) {
            col.mapv_inplace(|z| z * (sigma / scale));
        }
        self.tensors[site] = u.into_shape_with_order((l, d, k)).expect("shape");
        let (_, d2, r2) = self.tensors[site + 1].dim();
        let next = self.tensors[site + 1].view().into_shape_with_order((r, d2 * r2)).expect("standard layout");
        self.tensors[site + 1] = vt.slice(s![..k, ..]).dot(&next).into_shape_with_order((k, d2, r2)).expect("shape");
        Ok(())
    }

    fn overlap_raw(&self, other: &Self) -> C64 {
        let mut env = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
        for (bra, ket) in self.tensors.iter().zip(&other.tensors) {
            env = transfer_left(&env, bra, ket, None);
        }
        env[[0, 0]]
    }

    fn left_envs(&self) -> Vec<Array2<C64>> {
        let mut envs = Vec::with_capacity(self.n_sites() + 1);
        envs.push(Array2::from_elem((1, 1), C64::new(1.0, 0.0)));
        for t in &self.tensors {
            let next = transfer_left(envs.last().expect("nonempty"), t, t, None);
            envs.push(next);
        }
        envs
    }

    fn right_envs(&self) -> Vec<Array2<C64>> {
        let n = self.n_sites();
        let mut envs = vec![Array2::zeros((0, 0)); n + 1];
        envs[n] = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
        for i in (0..n).rev() {
            envs[i] = transfer_right(&envs[i + 1], &self.tensors[i]);
        }
        envs
    }

    /// `⟨ψ|∏ O_k|ψ⟩` (unnormalized) for site-sorted single-site factors.
    fn product_expectation(&self, lenv: &[Array2<C64>], renv: &[Array2<C64>], factors: &[(usize, Array2<C64>)]) -> C64 {
        let first = factors[0].0;
        let last = factors[factors.len() - 1].0;
        let mut env = lenv[first].clone();
        let mut next = 0;
        for site in first..=last {
            let op = if next < factors.len() && factors[next].0 == site {
                next += 1;
                Some(&factors[next - 1].1)
            } else {
                None
            };
            env = transfer_left(&env, &self.tensors[site], &self.tensors[site], op);
        }
        let closing = &renv[last + 1];
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..env.nrows() {
            for b in 0..env.ncols() {
                acc += env[[a, b]] * closing[[b, a]];
            }
        }
        acc
    }
}

/// `L'[a',b'] = Σ conj(bra[a,s,a']) O[s,t] L[a,b] ket[b,t,b']`.
fn transfer_left(env: &Array2<C64>, bra: &Array3<C64>, ket: &Array3<C64>, op: Option<&Array2<C64>>) -> Array2<C64> {
    let d = bra.dim().1;
    let mut out = Array2::zeros((bra.dim().2, ket.dim().2));
    for s_idx in 0..d {
        let ket_part = match op {
            None => ket.index_axis(Axis(1), s_idx).to_owned(),
            Some(o) => {
                let mut acc = Array2::zeros((ket.dim().0, ket.dim().2));
                for t in 0..d {
                    let w = o[[s_idx, t]];
                    if w.norm() != 0.0 {
                        acc.scaled_add(w, &ket.index_axis(Axis(1), t));
                    }
                }
                acc
            }
        };
        let tmp = env.dot(&ket_part);
        out += &dagger(&bra.index_axis(Axis(1), s_idx)).dot(&tmp);
    }
    out
}

/// `R[a,b] = Σ ket[a,s,a'] R'[a',b'] conj(ket[b,s,b'])`, ket index first.
fn transfer_right(env: &Array2<C64>, t: &Array3<C64>) -> Array2<C64> {
    let d = t.dim().1;
    let mut out = Array2::zeros((t.dim().0, t.dim().0));
    for s_idx in 0..d {
        let a = t.index_axis(Axis(1), s_idx);
        out += &a.dot(env).dot(&dagger(&a));
    }
    out
}

/// How many singular values survive truncation to `chi_max` with discarded
/// weight budget `tol` (relative). Never fewer than one.
pub(crate) fn kept_count(sv: &[f64], chi_max: usize, tol: f64) -> usize {
    let total: f64 = sv.iter().map(|x| x * x).sum();
    let mut keep = sv.iter().filter(|&&x| x > 0.0).count().max(1);
    if total > 0.0 {
        let mut discarded = 0.0;
        while keep > 1 {
            let w = sv[keep - 1] * sv[keep - 1] / total;
            if discarded + w <= tol {
                discarded += w;
                keep -= 1;
            } else {
                break;
            }
        }
    }
    keep.min(chi_max).max(1)
}

fn frobenius(t: &Array3<C64>) -> f64 {
    t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn pauli_z(d: usize) -> Array2<C64> {
    let mut z = Array2::zeros((d, d));
    for k in 0..d {
        z[[k, k]] = C64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    z
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

/// `base^exp`, saturating at `cap + 1` so the comparison with `cap` stays exact.
fn capped_pow(base: usize, exp: usize, cap: usize) -> usize {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> MatrixProductState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amps = [h, 0.0, 0.0, h].map(|x| C64::new(x, 0.0));
        MatrixProductState::from_dense(&amps, 2, 2).unwrap()
    }

    #[test]
    fn spectrum_validation() {
        assert!(SchmidtSpectrum::new(vec![0.5, 0.5]).is_err());
        assert!(SchmidtSpectrum::new(vec![]).is_err());
        assert!(SchmidtSpectrum::new(vec![-1.0]).is_err());
        let s = SchmidtSpectrum::new(vec![0.6, 0.8]).unwrap();
        assert_eq!(s.coefficients(), &[0.8, 0.6]);
    }

    #[test]
    fn entropy_of_simple_spectra() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((SchmidtSpectrum::new(vec![h, h]).unwrap().entropy_bits() - 1.0).abs() < 1e-14);
        assert_eq!(SchmidtSpectrum::new(vec![1.0]).unwrap().entropy_bits(), 0.0);
        let with_zero = SchmidtSpectrum::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(with_zero.entropy_bits(), 0.0);
        assert_eq!(with_zero.renyi0_bits(1e-12), 0.0);
        assert!((SchmidtSpectrum::new(vec![h, h]).unwrap().renyi0_bits(1e-12) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kept_count_respects_budget() {
        let sv = [0.9_f64.sqrt(), 0.09_f64.sqrt(), 0.01_f64.sqrt()];
        assert_eq!(kept_count(&sv, 10, 0.0), 3);
        assert_eq!(kept_count(&sv, 10, 0.011), 2);
        assert_eq!(kept_count(&sv, 10, 0.2), 1);
        assert_eq!(kept_count(&sv, 1, 0.0), 1);
        assert_eq!(kept_count(&[0.0, 0.0], 4, 0.0), 1);
    }

    #[test]
    fn bell_state_round_trip() {
        let psi = bell();
        let dense = psi.to_dense().unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (got, want) in dense.iter().zip([h, 0.0, 0.0, h]) {
            assert!((got - C64::new(want, 0.0)).norm() < 1e-14);
        }
        let spec = psi.schmidt(1).unwrap();
        assert!((spec.coefficients()[0] - h).abs() < 1e-12);
        assert!((spec.coefficients()[1] - h).abs() < 1e-12);
    }

    #[test]
    fn basis_state_index_is_big_endian() {
        let psi = MatrixProductState::basis_state(&[0, 1], 2).unwrap();
        let dense = psi.to_dense().unwrap();
        assert_eq!(dense[1], C64::new(1.0, 0.0));
        assert_eq!(dense.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn bond_range_checks() {
        let psi = MatrixProductState::random(4, 2, 2, 0).unwrap();
        assert!(psi.schmidt(0).is_err());
        assert!(psi.schmidt(4).is_err());
        assert!(psi.schmidt(3).is_ok());
    }

    #[test]
    fn random_rejects_bad_shapes() {
        assert!(MatrixProductState::random(1, 2, 4, 0).is_err());
        assert!(MatrixProductState::random(4, 2, 0, 0).is_err());
    }

    #[test]
    fn from_tensors_checks_bonds() {
        let a = Array3::<C64>::ones((1, 2, 2));
        let b = Array3::<C64>::ones((3, 2, 1));
        assert!(MatrixProductState::from_tensors(vec![a.clone(), b]).is_err());
        let c = Array3::<C64>::ones((2, 2, 2));
        assert!(MatrixProductState::from_tensors(vec![a, c]).is_err());
    }

    #[test]
    fn too_many_sites_for_dense() {
        let psi = MatrixProductState::random(17, 2, 1, 0).unwrap();
        assert!(matches!(psi.to_dense(), Err(Error::ResourceLimit(_))));
    }
}
