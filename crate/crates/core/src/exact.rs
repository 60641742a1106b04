//! Exact diagonalization for small chains.
//!
//! The Hamiltonian is never stored as one dense matrix unless asked for. The
//! basis splits into components connected by nonzero matrix elements (the
//! symmetry sectors of the model), and each component is diagonalized on its
//! own. When a model has no usable sector structure in the computational
//! basis, a local Hadamard rotation is tried as well, which exposes the parity
//! sectors of the Ising chain.

use ndarray::Array2;

use crate::error::{invalid, Error, Result};
use crate::linalg::{eigh_array, eigvalsh_array, eigvalsh_real, svd_array, C64};
use crate::models::{LocalHamiltonian, Term};
use crate::mps::SchmidtSpectrum;

/// Full dense matrices are limited to this many sites.
pub const MAX_DENSE_SITES: usize = 12;

/// Largest symmetry block diagonalized directly.
pub const MAX_BLOCK_DIM: usize = 2048;

/// Matrix-vector access to a sum of terms on a chain of `n` sites.
struct Layout<'a> {
    terms: &'a [Term],
    d: usize,
    strides: Vec<usize>,
    dim: usize,
}

impl<'a> Layout<'a> {
    fn new(terms: &'a [Term], n: usize, d: usize) -> Result<Self> {
        let dim = u32::try_from(n)
            .ok()
            .and_then(|e| d.checked_pow(e))
            .filter(|&dim| dim <= 1 << 26)
            .ok_or_else(|| Error::ResourceLimit(format!("{n} sites of dimension {d} is too large")))?;
        let strides = (0..n).map(|k| d.pow((n - 1 - k) as u32)).collect();
        Ok(Self { terms, d, strides, dim })
    }

    fn digit(&self, idx: usize, site: usize) -> usize {
        (idx / self.strides[site]) % self.d
    }

    /// Calls `f(row, H[row, col])` for each nonzero entry of column `col`.
    fn column(&self, col: usize, mut f: impl FnMut(usize, C64)) {
        let d = self.d;
        for t in self.terms {
            let m = t.matrix().as_array();
            match t.sites() {
                [i] => {
                    let q = self.digit(col, *i);
                    for p in 0..d {
                        let v = m[[p, q]];
                        if v.norm() != 0.0 {
                            f(col + p * self.strides[*i] - q * self.strides[*i], v);
                        }
                    }
                }
                [i, j] => {
                    let (di, dj) = (self.digit(col, *i), self.digit(col, *j));
                    let q = di * d + dj;
                    let mut sign = 1.0;
                    if t.has_string() {
                        for k in i + 1..*j {
                            if self.digit(col, k) % 2 == 1 {
                                sign = -sign;
                            }
                        }
                    }
                    let base = col - di * self.strides[*i] - dj * self.strides[*j];
                    for p in 0..d * d {
                        let v = m[[p, q]];
                        if v.norm() != 0.0 {
                            f(base + (p / d) * self.strides[*i] + (p % d) * self.strides[*j], v * sign);
                        }
                    }
                }
                _ => unreachable!("terms act on one or two sites"),
            }
        }
    }

    fn apply(&self, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (col, &amp) in psi.iter().enumerate() {
            if amp.norm() == 0.0 {
                continue;
            }
            self.column(col, |row, v| out[row] += v * amp);
        }
        out
    }

    fn dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for col in 0..self.dim {
            self.column(col, |row, v| m[[row, col]] += v);
        }
        m
    }

    /// Basis indices grouped into connected components, each sorted.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.dim).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for col in 0..self.dim {
            let mut rows = Vec::new();
            self.column(col, |row, _| rows.push(row));
            for row in rows {
                let (a, b) = (find(&mut parent, row), find(&mut parent, col));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut slot = vec![usize::MAX; self.dim];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for idx in 0..self.dim {
            let r = find(&mut parent, idx);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(idx);
        }
        groups
    }

    fn block(&self, basis: &[usize]) -> Array2<C64> {
        let mut local = vec![usize::MAX; self.dim];
        for (k, &idx) in basis.iter().enumerate() {
            local[idx] = k;
        }
        let mut m = Array2::zeros((basis.len(), basis.len()));
        for (k, &col) in basis.iter().enumerate() {
            self.column(col, |row, v| m[[local[row], k]] += v);
        }
        m
    }
}

/// `H` stored column by column, for repeated products.
pub(crate) struct SparseHamiltonian {
    starts: Vec<usize>,
    rows: Vec<usize>,
    values: Vec<C64>,
    offset: f64,
}

impl SparseHamiltonian {
    pub(crate) fn new(h: &LocalHamiltonian) -> Result<Self> {
        let lay = layout(h)?;
        let mut starts = Vec::with_capacity(lay.dim + 1);
        let (mut rows, mut values) = (Vec::new(), Vec::new());
        starts.push(0);
        for col in 0..lay.dim {
            lay.column(col, |row, v| {
                rows.push(row);
                values.push(v);
            });
            starts.push(rows.len());
        }
        Ok(Self { starts, rows, values, offset: h.offset() })
    }

    pub(crate) fn dim(&self) -> usize {
        self.starts.len() - 1
    }

    pub(crate) fn apply(&self, psi: &[C64]) -> Vec<C64> {
        let mut out: Vec<C64> = psi.iter().map(|z| z * self.offset).collect();
        for (col, &amp) in psi.iter().enumerate() {
            for k in self.starts[col]..self.starts[col + 1] {
                out[self.rows[k]] += self.values[k] * amp;
            }
        }
        out
    }
}

fn layout(h: &LocalHamiltonian) -> Result<Layout<'_>> {
    Layout::new(h.terms(), h.n_sites(), h.phys_dim())
}

/// `H|ψ⟩` including the constant offset.
pub fn apply(h: &LocalHamiltonian, psi: &[C64]) -> Result<Vec<C64>> {
    let lay = layout(h)?;
    if psi.len() != lay.dim {
        return invalid(format!("state has {} amplitudes, expected {}", psi.len(), lay.dim));
    }
    let mut out = lay.apply(psi);
    for (o, &p) in out.iter_mut().zip(psi) {
        *o += p * h.offset();
    }
    Ok(out)
}

/// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩`.
pub fn expectation(h: &LocalHamiltonian, psi: &[C64]) -> Result<f64> {
    let hpsi = apply(h, psi)?;
    let num: C64 = psi.iter().zip(&hpsi).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
    if !(den > 0.0) {
        return invalid("zero state");
    }
    Ok(num.re / den)
}

/// Full matrix of `H`, offset included.
pub fn dense_matrix(h: &LocalHamiltonian) -> Result<Array2<C64>> {
    let mut m = dense_from_terms(h.terms(), h.n_sites(), h.phys_dim())?;
    m.diag_mut().mapv_inplace(|z| z + h.offset());
    Ok(m)
}

/// Dense matrix of a bare term sum on `n` sites.
pub(crate) fn dense_from_terms(terms: &[Term], n: usize, d: usize) -> Result<Array2<C64>> {
    if n > MAX_DENSE_SITES {
        return Err(Error::ResourceLimit(format!("dense matrix limited to {MAX_DENSE_SITES} sites, got {n}")));
    }
    Ok(Layout::new(terms, n, d)?.dense())
}

fn is_real(m: &Array2<C64>) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

fn block_eigvals(m: &Array2<C64>) -> Result<Vec<f64>> {
    if is_real(m) {
        eigvalsh_real(m.mapv(|z| z.re))
    } else {
        eigvalsh_array(m)
    }
}

/// The sector decomposition to use, or `None` if some block is too large.
fn sectors(h: &LocalHamiltonian) -> Result<(LocalHamiltonian, Vec<Vec<usize>>)> {
    let direct = layout(h)?.components();
    if direct.iter().all(|c| c.len() <= MAX_BLOCK_DIM) {
        return Ok((h.clone(), direct));
    }
    if h.phys_dim() == 2 && h.terms().iter().all(|t| !t.has_string()) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = Array2::from_shape_vec((2, 2), vec![r, r, r, -r]).expect("shape").mapv(|x| C64::new(x, 0.0));
        let rotated = h.conjugated(&hadamard);
        let comps = layout(&rotated)?.components();
        if comps.iter().all(|c| c.len() <= MAX_BLOCK_DIM) {
            return Ok((rotated, comps));
        }
    }
    let largest = direct.iter().map(Vec::len).max().unwrap_or(0);
    Err(Error::ResourceLimit(format!("largest symmetry block has dimension {largest}, limit {MAX_BLOCK_DIM}")))
}

/// Complete spectrum, ascending.
pub fn spectrum(h: &LocalHamiltonian) -> Result<Vec<f64>> {
    let (h2, comps) = sectors(h)?;
    let lay = layout(&h2)?;
    let mut all = Vec::with_capacity(lay.dim);
    for comp in &comps {
        all.extend(block_eigvals(&lay.block(comp))?.into_iter().map(|e| e + h.offset()));
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Lowest eigenvalue of `H`.
pub fn ground_energy(h: &LocalHamiltonian) -> Result<f64> {
    let (h2, comps) = sectors(h)?;
    let lay = layout(&h2)?;
    let mut best = f64::INFINITY;
    for comp in &comps {
        best = best.min(block_eigvals(&lay.block(comp))?[0]);
    }
    Ok(best + h.offset())
}

/// Lowest eigenvalue and a normalized eigenvector in the computational basis.
/// Among degenerate sectors the one holding the smallest basis index wins.
pub fn ground_state(h: &LocalHamiltonian) -> Result<(f64, Vec<C64>)> {
    let lay = layout(h)?;
    let comps = lay.components();
    if let Some(big) = comps.iter().find(|c| c.len() > MAX_BLOCK_DIM) {
        return Err(Error::ResourceLimit(format!("symmetry block of dimension {} exceeds {MAX_BLOCK_DIM}", big.len())));
    }
    let mut best: Option<(f64, Vec<C64>)> = None;
    for comp in &comps {
        let (vals, vecs) = eigh_array(&lay.block(comp))?;
        if best.as_ref().is_none_or(|(e, _)| vals[0] < *e - 1e-12) {
            let mut psi = vec![C64::new(0.0, 0.0); lay.dim];
            for (k, &idx) in comp.iter().enumerate() {
                psi[idx] = vecs[[k, 0]];
            }
            best = Some((vals[0], psi));
        }
    }
    let (e, psi) = best.expect("at least one component");
    Ok((e + h.offset(), psi))
}

/// Schmidt decomposition of a dense state across `bond` (sites `1..=bond`
/// versus the rest): `ψ = U diag(s) V†` with `U` indexed by the left block.
pub(crate) fn schmidt_decomposition(
    psi: &[C64],
    n_sites: usize,
    phys_dim: usize,
    bond: usize,
) -> Result<(Array2<C64>, Vec<f64>, Array2<C64>)> {
    if bond == 0 || bond >= n_sites {
        return invalid(format!("bond {bond} out of range 1..={}", n_sites - 1));
    }
    let rows = phys_dim.pow(bond as u32);
    if psi.len() != phys_dim.pow(n_sites as u32) {
        return invalid("amplitude count does not match chain");
    }
    let m = Array2::from_shape_vec((rows, psi.len() / rows), psi.to_vec()).expect("shape");
    svd_array(&m.view())
}

/// Normalized Schmidt spectrum of a dense state across `bond`.
pub fn schmidt(psi: &[C64], n_sites: usize, phys_dim: usize, bond: usize) -> Result<SchmidtSpectrum> {
    let (_, sv, _) = schmidt_decomposition(psi, n_sites, phys_dim, bond)?;
    SchmidtSpectrum::from_unnormalized(sv.into_iter().filter(|&x| x > 0.0).collect())
}

/// Reduced density matrix of the sites right of `bond`.
pub(crate) fn reduced_density_right(psi: &[C64], n_sites: usize, phys_dim: usize, bond: usize) -> Array2<C64> {
    let rows = phys_dim.pow(bond as u32);
    let cols = phys_dim.pow((n_sites - bond) as u32);
    let m = ndarray::ArrayView2::from_shape((rows, cols), psi).expect("shape");
    let mt = m.t();
    let conj = m.mapv(|z| z.conj());
    mt.dot(&conj)
}
