//! Dense complex kernels: SVD, Hermitian eigendecomposition and the
//! Hermitian matrix exponential.
//!
//! Everything here is a thin layer over LAPACK (through `ndarray-linalg`).
//! The layer adds the conventions the rest of the crate relies on:
//! singular values are sorted descending with a stable tie-break, and values
//! below [`SINGULAR_VALUE_FLOOR`] times the largest are clamped to zero so
//! that rounding noise never shows up as a phantom Schmidt weight.

use ndarray::{s, Array1, Array2, ArrayView2, ShapeBuilder};
use ndarray_linalg::{EigValsh, Eigh as _, JobSvd, QRInto, SVD, SVDDC, UPLO};
pub use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};

/// Relative threshold below which singular values are treated as zero.
pub const SINGULAR_VALUE_FLOOR: f64 = 1e-14;

/// Largest tolerated `|h - h†|` entry, relative to `max(1, max |h|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    data: Array2<C64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows * cols != entries.len() {
            return invalid(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len()));
        }
        let data =
            Array2::from_shape_vec((rows, cols), entries).map_err(|e| crate::Error::InvalidInput(e.to_string()))?;
        Self::from_array(data)
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_array(data: Array2<C64>) -> Result<Self> {
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("matrix has non-finite entries");
        }
        Ok(Self { data })
    }

    pub(crate) fn from_array_unchecked(data: Array2<C64>) -> Self {
        Self { data }
    }

    pub fn identity(n: usize) -> Self {
        Self { data: Array2::eye(n) }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { data: Array2::zeros((rows, cols)) }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = Array2::zeros((n, n));
        for (i, &v) in values.iter().enumerate() {
            data[[i, i]] = C64::new(v, 0.0);
        }
        Self { data }
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[[row, col]]
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<C64> {
        self.data
    }

    pub fn dagger(&self) -> Self {
        Self { data: dagger(&self.data.view()) }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self { data: self.data.dot(&other.data) }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self { data: kron(&self.data, &other.data) }
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self { data: self.data.mapv(|z| z * factor) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { data: &self.data + &other.data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { data: &self.data - &other.data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        is_hermitian(&self.data, tol)
    }
}

/// Thin singular value decomposition `m = u · diag(s) · v_dag`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: DenseMatrix,
    pub s: Vec<f64>,
    pub v_dag: DenseMatrix,
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

pub fn svd(m: &DenseMatrix) -> Result<Svd> {
    let (u, s, v_dag) = svd_array(&m.data.view())?;
    Ok(Svd { u: DenseMatrix::from_array_unchecked(u), s, v_dag: DenseMatrix::from_array_unchecked(v_dag) })
}

pub fn eigh(h: &DenseMatrix) -> Result<Eigh> {
    check_hermitian(&h.data)?;
    let (values, vectors) = eigh_array(&h.data)?;
    Ok(Eigh { values, vectors: DenseMatrix::from_array_unchecked(vectors) })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(h: &DenseMatrix) -> Result<Vec<f64>> {
    check_hermitian(&h.data)?;
    eigvalsh_array(&h.data)
}

/// `exp(scale · h)` for Hermitian `h`, through its eigendecomposition.
pub fn hermitian_exp(h: &DenseMatrix, scale: f64) -> Result<DenseMatrix> {
    check_hermitian(&h.data)?;
    Ok(DenseMatrix::from_array_unchecked(hermitian_exp_array(&h.data, scale)?))
}

fn check_hermitian(h: &Array2<C64>) -> Result<()> {
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return invalid("matrix has non-finite entries");
    }
    if !is_hermitian(h, HERMITIAN_TOL) {
        return invalid("matrix is not Hermitian");
    }
    Ok(())
}

pub(crate) fn is_hermitian(h: &Array2<C64>, tol: f64) -> bool {
    if h.nrows() != h.ncols() {
        return false;
    }
    let scale = h.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let n = h.nrows();
    for i in 0..n {
        for j in i..n {
            if (h[[i, j]] - h[[j, i]].conj()).norm() > tol * scale {
                return false;
            }
        }
    }
    true
}

pub(crate) fn dagger(m: &ArrayView2<C64>) -> Array2<C64> {
    let (r, c) = m.dim();
    Array2::from_shape_fn((c, r), |(i, j)| m[[j, i]].conj())
}

pub(crate) fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            out.slice_mut(s![i * br..(i + 1) * br, j * bc..(j + 1) * bc]).assign(&b.mapv(|z| z * aij));
        }
    }
    out
}

/// Thin SVD with descending, floored singular values.
pub(crate) fn svd_array(m: &ArrayView2<C64>) -> Result<(Array2<C64>, Vec<f64>, Array2<C64>)> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return invalid("matrix has non-finite entries");
    }
    let (rows, cols) = m.dim();
    let k = rows.min(cols);
    let (u, sv, vt) = match m.svddc(JobSvd::Some) {
        Ok((Some(u), sv, Some(vt))) => (u, sv, vt),
        // Divide and conquer occasionally fails to converge; QR iteration is slower but sturdier.
        _ => {
            let (u, sv, vt) = m.svd(true, true)?;
            let u = u.expect("requested U");
            let vt = vt.expect("requested V†");
            (u.slice(s![.., ..k]).to_owned(), sv, vt.slice(s![..k, ..]).to_owned())
        }
    };
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let largest = order.first().map(|&i| sv[i]).unwrap_or(0.0);
    let floor = SINGULAR_VALUE_FLOOR * largest;
    let s_sorted: Vec<f64> = order.iter().map(|&i| if sv[i] < floor { 0.0 } else { sv[i] }).collect();
    if order.iter().enumerate().all(|(pos, &i)| pos == i) {
        return Ok((u, s_sorted, vt));
    }
    let mut u_sorted = Array2::zeros((rows, k));
    let mut vt_sorted = Array2::zeros((k, cols));
    for (pos, &i) in order.iter().enumerate() {
        u_sorted.column_mut(pos).assign(&u.column(i));
        vt_sorted.row_mut(pos).assign(&vt.row(i));
    }
    Ok((u_sorted, s_sorted, vt_sorted))
}

pub(crate) fn eigh_array(h: &Array2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    // The solver reads row-major input as its transpose, which for a complex
    // Hermitian matrix is the conjugate; hand it a column-major copy.
    let mut col_major = Array2::zeros(h.dim().f());
    col_major.assign(h);
    let (vals, vecs) = col_major.eigh(UPLO::Lower)?;
    Ok((vals.to_vec(), vecs.as_standard_layout().into_owned()))
}

pub(crate) fn eigvalsh_array(h: &Array2<C64>) -> Result<Vec<f64>> {
    Ok(h.eigvalsh(UPLO::Lower)?.to_vec())
}

pub(crate) fn eigvalsh_real(h: Array2<f64>) -> Result<Vec<f64>> {
    Ok(h.eigvalsh(UPLO::Lower)?.to_vec())
}

pub(crate) fn hermitian_exp_array(h: &Array2<C64>, scale: f64) -> Result<Array2<C64>> {
    let (vals, vecs) = eigh_array(h)?;
    let weights: Array1<C64> = vals.iter().map(|&v| C64::new((scale * v).exp(), 0.0)).collect();
    let scaled = &vecs * &weights.insert_axis(ndarray::Axis(0));
    Ok(scaled.dot(&dagger(&vecs.view())))
}

/// Reduced QR, `m = q · r` with `q` having `min(rows, cols)` orthonormal columns.
pub(crate) fn qr_array(m: Array2<C64>) -> Result<(Array2<C64>, Array2<C64>)> {
    Ok(m.qr_into()?)
}

fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Lowest eigenpair of a Hermitian operator given only its action, by
/// restarted Krylov-subspace Rayleigh–Ritz starting from `start`.
///
/// Each cycle builds an orthonormal Krylov basis of up to `krylov_dim`
/// vectors (with full reorthogonalization), diagonalizes the projected
/// matrix and restarts from the lowest Ritz vector. Stops when the residual
/// norm drops below `tol`. Returns the eigenvalue, the unit eigenvector and
/// whether the tolerance was met.
pub(crate) fn lowest_eigenpair(
    apply: impl Fn(&Array1<C64>) -> Array1<C64>,
    start: Array1<C64>,
    krylov_dim: usize,
    max_cycles: usize,
    tol: f64,
) -> Result<(f64, Array1<C64>, bool)> {
    let dim = start.len();
    let krylov_dim = krylov_dim.clamp(1, dim.max(1));
    let norm0 = inner(&start, &start).re.sqrt();
    if !(norm0 > 0.0) || !norm0.is_finite() {
        return invalid("Krylov start vector has zero or non-finite norm");
    }
    let mut x = start.mapv(|z| z / norm0);
    let mut theta = f64::NAN;
    for _ in 0..max_cycles {
        let mut basis: Vec<Array1<C64>> = vec![x.clone()];
        let mut images: Vec<Array1<C64>> = Vec::with_capacity(krylov_dim);
        loop {
            let w = apply(basis.last().expect("nonempty"));
            images.push(w.clone());
            if basis.len() == krylov_dim {
                break;
            }
            let mut w = w;
            for _ in 0..2 {
                for v in &basis {
                    let c = inner(v, &w);
                    w.scaled_add(-c, v);
                }
            }
            let nw = inner(&w, &w).re.sqrt();
            if nw < 1e-12 {
                break;
            }
            basis.push(w.mapv(|z| z / nw));
        }
        let k = basis.len();
        let mut projected = Array2::<C64>::zeros((k, k));
        for i in 0..k {
            for j in 0..k {
                projected[[i, j]] = inner(&basis[i], &images[j]);
            }
        }
        let herm = (&projected + &dagger(&projected.view())).mapv(|z| z * 0.5);
        let (vals, vecs) = eigh_array(&herm)?;
        theta = vals[0];
        let mut ritz = Array1::<C64>::zeros(dim);
        let mut image = Array1::<C64>::zeros(dim);
        for j in 0..k {
            ritz.scaled_add(vecs[[j, 0]], &basis[j]);
            image.scaled_add(vecs[[j, 0]], &images[j]);
        }
        let nr = inner(&ritz, &ritz).re.sqrt();
        ritz.mapv_inplace(|z| z / nr);
        image.mapv_inplace(|z| z / nr);
        let mut residual = image;
        residual.scaled_add(C64::new(-theta, 0.0), &ritz);
        x = ritz;
        if inner(&residual, &residual).re.sqrt() < tol {
            return Ok((theta, x, true));
        }
    }
    Ok((theta, x, false))
}
