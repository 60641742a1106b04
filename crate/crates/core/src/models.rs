//! Chain Hamiltonians as sums of one- and two-site terms with a designated
//! Alice/Bob cut.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::linalg::{eigvalsh_array, DenseMatrix, C64, HERMITIAN_TOL};

/// Largest support handled by [`interaction_norm`].
pub const MAX_DENSE_SUPPORT: usize = exact::MAX_DENSE_SITES;

/// One Hermitian term. Two-site matrices are indexed `s_i·d + s_j` with `i < j`.
/// With `jw_string` set, the operator carries a parity string `Z` on every
/// site strictly between `i` and `j`.
#[derive(Clone, Debug)]
pub struct Term {
    sites: Vec<usize>,
    matrix: DenseMatrix,
    jw_string: bool,
}

impl Term {
    pub fn one_site(site: usize, matrix: DenseMatrix) -> Result<Self> {
        Self::new(vec![site], matrix, false)
    }

    pub fn two_site(i: usize, j: usize, matrix: DenseMatrix) -> Result<Self> {
        Self::new(vec![i, j], matrix, false)
    }

    /// Two-site term with a parity string between the sites.
    pub fn two_site_with_string(i: usize, j: usize, matrix: DenseMatrix) -> Result<Self> {
        Self::new(vec![i, j], matrix, true)
    }

    fn new(sites: Vec<usize>, matrix: DenseMatrix, jw_string: bool) -> Result<Self> {
        if sites.len() == 2 && sites[0] >= sites[1] {
            return invalid(format!("two-site term needs increasing sites, got {sites:?}"));
        }
        if matrix.rows() != matrix.cols() {
            return invalid("term matrix must be square");
        }
        if sites.len() == 2 {
            let d = (matrix.rows() as f64).sqrt().round() as usize;
            if d * d != matrix.rows() {
                return invalid("two-site term matrix dimension is not a square");
            }
        }
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return invalid(format!("term on sites {sites:?} is not Hermitian"));
        }
        Ok(Self { sites, matrix, jw_string })
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn has_string(&self) -> bool {
        self.jw_string
    }

    /// Local dimension implied by the matrix size.
    pub fn phys_dim(&self) -> usize {
        match self.sites.len() {
            1 => self.matrix.rows(),
            _ => (self.matrix.rows() as f64).sqrt().round() as usize,
        }
    }

    /// Every site the operator touches, string included.
    pub fn support(&self) -> Vec<usize> {
        match (self.sites.as_slice(), self.jw_string) {
            ([i, j], true) => (*i..=*j).collect(),
            _ => self.sites.clone(),
        }
    }

    /// Whether the term couples sites on both sides of `cut` (sites `< cut`
    /// versus `>= cut`, 0-based).
    pub fn crosses(&self, cut: usize) -> bool {
        self.sites.len() == 2 && self.sites[0] < cut && self.sites[1] >= cut
    }

    pub(crate) fn relabeled(&self, map: impl Fn(usize) -> usize) -> Self {
        Self { sites: self.sites.iter().map(|&s| map(s)).collect(), ..self.clone() }
    }

    pub(crate) fn with_matrix(&self, matrix: DenseMatrix) -> Self {
        Self { matrix, ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct LocalHamiltonian {
    n_sites: usize,
    phys_dim: usize,
    terms: Vec<Term>,
    offset: f64,
    ab_cut: usize,
    pair_layout: Option<Vec<(usize, usize)>>,
}

impl LocalHamiltonian {
    /// `ab_cut` is a bond index in `1..n_sites`; 0 is accepted only for a
    /// single site, where there is no bond.
    pub fn new(
        n_sites: usize,
        phys_dim: usize,
        terms: Vec<Term>,
        offset: f64,
        ab_cut: usize,
        pair_layout: Option<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        if n_sites == 0 || phys_dim < 2 {
            return invalid("need at least one site and phys_dim >= 2");
        }
        let cut_ok = if n_sites == 1 { ab_cut == 0 } else { (1..n_sites).contains(&ab_cut) };
        if !cut_ok {
            return invalid(format!("ab_cut {ab_cut} out of range for {n_sites} sites"));
        }
        if !offset.is_finite() {
            return invalid("offset must be finite");
        }
        for t in &terms {
            if t.sites.iter().any(|&s| s >= n_sites) {
                return invalid(format!("term on sites {:?} exceeds chain of {n_sites}", t.sites));
            }
            if t.phys_dim() != phys_dim {
                return invalid(format!("term on sites {:?} has local dimension {}", t.sites, t.phys_dim()));
            }
        }
        if let Some(layout) = &pair_layout {
            let mut seen = vec![false; n_sites];
            for &(a, b) in layout {
                for s in [a, b] {
                    if s >= n_sites || seen[s] {
                        return invalid("pair layout sites must be distinct and in range");
                    }
                    seen[s] = true;
                }
            }
        }
        Ok(Self { n_sites, phys_dim, terms, offset, ab_cut, pair_layout })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn phys_dim(&self) -> usize {
        self.phys_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Constant added to every energy.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn ab_cut(&self) -> usize {
        self.ab_cut
    }

    /// For the toy model: `(site of A_j, site of B_j)` for `j = 1..=n`.
    pub fn pair_layout(&self) -> Option<&[(usize, usize)]> {
        self.pair_layout.as_deref()
    }

    /// Terms coupling Alice's and Bob's halves.
    pub fn crossing_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.crosses(self.ab_cut))
    }

    /// Same Hamiltonian with every term conjugated by the local unitary `u`
    /// (`H → U^{⊗n} H U^{†⊗n}`). Parity strings are left untouched, so this
    /// is only meaningful for string-free models.
    pub(crate) fn conjugated(&self, u: &Array2<C64>) -> Self {
        let u2 = crate::linalg::kron(u, u);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let w = if t.sites.len() == 1 { u } else { &u2 };
                let mut m = w.dot(t.matrix.as_array()).dot(&crate::linalg::dagger(&w.view()));
                // Rounding leftovers would otherwise join symmetry sectors.
                let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
                m.mapv_inplace(|z| if z.norm() <= 1e-14 * scale { C64::new(0.0, 0.0) } else { z });
                t.with_matrix(DenseMatrix::from_array_unchecked(m))
            })
            .collect();
        Self { terms, ..self.clone() }
    }
}

/// Staggered fermion hopping chain: `N` sites (even, at least 4), spacing `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermionChainSpec {
    n_sites: usize,
    spacing: f64,
}

impl FermionChainSpec {
    pub fn new(n_sites: usize, spacing: f64) -> Result<Self> {
        if n_sites < 4 || !n_sites.is_multiple_of(2) {
            return invalid(format!("fermion chain needs even N >= 4, got {n_sites}"));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return invalid(format!("lattice spacing must be positive, got {spacing}"));
        }
        Ok(Self { n_sites, spacing })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn pauli_x() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("valid")
}

pub(crate) fn pauli_y() -> DenseMatrix {
    let z = c(0.0, 0.0);
    DenseMatrix::new(2, 2, vec![z, c(0.0, -1.0), c(0.0, 1.0), z]).expect("valid")
}

pub(crate) fn pauli_z() -> DenseMatrix {
    DenseMatrix::diag(&[1.0, -1.0])
}

/// `|0⟩⟨1|`, removes an occupied mode.
fn lowering() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).expect("valid")
}

/// `|1⟩⟨0|`.
fn raising() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).expect("valid")
}

/// `1 − |Φ+⟩⟨Φ+|` on two qubits.
fn bell_penalty() -> DenseMatrix {
    let mut m = Array2::from_diag(&ndarray::arr1(&[c(1.0, 0.0); 4]));
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[[i, j]] -= c(0.5, 0.0);
    }
    DenseMatrix::from_array(m).expect("finite")
}

/// `n_pairs` Bell-pair penalties on `2·n_pairs` qubits ordered
/// `A_n..A_1 B_1..B_n`, so pair `j` occupies sites `n−j` and `n+j−1` and
/// every term straddles the middle bond.
pub fn toy_model(n_pairs: usize) -> Result<LocalHamiltonian> {
    if n_pairs == 0 {
        return invalid("toy model needs at least one pair");
    }
    let n = n_pairs;
    let layout: Vec<(usize, usize)> = (1..=n).map(|j| (n - j, n + j - 1)).collect();
    let terms = layout.iter().map(|&(a, b)| Term::two_site(a, b, bell_penalty())).collect::<Result<Vec<_>>>()?;
    LocalHamiltonian::new(2 * n, 2, terms, 0.0, n, Some(layout))
}

/// Open Heisenberg antiferromagnet `Σ σ·σ` with unit coupling.
pub fn heisenberg_af(n_sites: usize) -> Result<LocalHamiltonian> {
    if n_sites < 2 {
        return invalid("Heisenberg chain needs at least two sites");
    }
    let (x, y, z) = (pauli_x(), pauli_y(), pauli_z());
    let bond = x.kron(&x).add(&y.kron(&y)).add(&z.kron(&z));
    let terms = (0..n_sites - 1).map(|i| Term::two_site(i, i + 1, bond.clone())).collect::<Result<Vec<_>>>()?;
    LocalHamiltonian::new(n_sites, 2, terms, 0.0, n_sites / 2, None)
}

/// Open transverse-field Ising chain at the critical point, `−Σ ZZ − Σ X`.
/// A single site is allowed (field only, no cut).
pub fn tfi_critical(n_sites: usize) -> Result<LocalHamiltonian> {
    if n_sites == 0 {
        return invalid("Ising chain needs at least one site");
    }
    let z = pauli_z();
    let zz = z.kron(&z).scaled(c(-1.0, 0.0));
    let field = pauli_x().scaled(c(-1.0, 0.0));
    let mut terms = Vec::with_capacity(2 * n_sites);
    for i in 0..n_sites.saturating_sub(1) {
        terms.push(Term::two_site(i, i + 1, zz.clone())?);
    }
    for i in 0..n_sites {
        terms.push(Term::one_site(i, field.clone())?);
    }
    LocalHamiltonian::new(n_sites, 2, terms, 0.0, n_sites / 2, None)
}

/// Jordan–Wigner image of the periodic staggered hopping chain
/// `Σ_n [i(ψ†_n ψ_{n+1} − ψ†_{n+1} ψ_n)/2a + 1/a]`, with `ψ_n = (∏_{m<n} Z_m) σ⁻_n`
/// and `|1⟩` the occupied state. The wrap-around hop becomes a two-site term on
/// `(0, N−1)` carrying a parity string, so the spectrum matches the fermion
/// chain exactly.
pub fn staggered_fermion_spin(spec: &FermionChainSpec) -> Result<LocalHamiltonian> {
    let n = spec.n_sites;
    let scale = c(0.0, 1.0 / (2.0 * spec.spacing));
    let (up, down) = (raising(), lowering());
    let bulk = up.kron(&down).sub(&down.kron(&up)).scaled(scale);
    let wrap = down.kron(&up).sub(&up.kron(&down)).scaled(scale);
    let mut terms = (0..n - 1).map(|i| Term::two_site(i, i + 1, bulk.clone())).collect::<Result<Vec<_>>>()?;
    terms.push(Term::two_site_with_string(0, n - 1, wrap)?);
    LocalHamiltonian::new(n, 2, terms, n as f64 / spec.spacing, n / 2, None)
}

/// Operator norm of the sum of terms crossing the Alice/Bob cut.
///
/// Crossing terms are grouped into clusters with disjoint supports; the
/// clusters commute, so the extreme eigenvalues of the sum are the sums of the
/// per-cluster extremes.
pub fn interaction_norm(h: &LocalHamiltonian) -> Result<f64> {
    let crossing: Vec<&Term> = h.crossing_terms().collect();
    if crossing.is_empty() {
        return Ok(0.0);
    }
    let clusters = cluster_by_support(&crossing, h.n_sites);
    let (mut lo, mut hi) = (0.0, 0.0);
    for cluster in clusters {
        let mut support: Vec<usize> = cluster.iter().flat_map(|t| t.support()).collect();
        support.sort_unstable();
        support.dedup();
        if support.len() > MAX_DENSE_SUPPORT {
            return Err(Error::ResourceLimit(format!(
                "interaction support of {} sites exceeds {MAX_DENSE_SUPPORT}",
                support.len()
            )));
        }
        let position = |s: usize| support.binary_search(&s).expect("site in support");
        let terms: Vec<Term> = cluster.iter().map(|t| t.relabeled(position)).collect();
        let m = exact::dense_from_terms(&terms, support.len(), h.phys_dim)?;
        let vals = eigvalsh_array(&m)?;
        lo += vals[0];
        hi += vals[vals.len() - 1];
    }
    Ok(f64::max(lo.abs(), hi.abs()))
}

/// Groups terms whose supports overlap, transitively.
fn cluster_by_support<'a>(terms: &[&'a Term], n_sites: usize) -> Vec<Vec<&'a Term>> {
    let mut parent: Vec<usize> = (0..n_sites).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in terms {
        let support = t.support();
        for &s in &support[1..] {
            let (a, b) = (find(&mut parent, support[0]), find(&mut parent, s));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut clusters: Vec<Vec<&Term>> = Vec::new();
    for &t in terms {
        let r = find(&mut parent, t.sites[0]);
        match roots.iter().position(|&x| x == r) {
            Some(k) => clusters[k].push(t),
            None => {
                roots.push(r);
                clusters.push(vec![t]);
            }
        }
    }
    clusters
}

/// CLI-addressable model names: `toy:<n>`, `haf:<N>`, `tfi:<N>`, `fermion:<N>:<a>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelSpec {
    Toy(usize),
    Heisenberg(usize),
    Ising(usize),
    Fermion(FermionChainSpec),
}

impl ModelSpec {
    pub fn build(&self) -> Result<LocalHamiltonian> {
        match self {
            Self::Toy(n) => toy_model(*n),
            Self::Heisenberg(n) => heisenberg_af(*n),
            Self::Ising(n) => tfi_critical(*n),
            Self::Fermion(spec) => staggered_fermion_spin(spec),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let count = |p: &str| -> Result<usize> {
            p.parse().map_err(|_| Error::InvalidInput(format!("bad size {p:?} in model {s:?}")))
        };
        match parts.as_slice() {
            ["toy", n] => Ok(Self::Toy(count(n)?)),
            ["haf", n] => Ok(Self::Heisenberg(count(n)?)),
            ["tfi", n] => Ok(Self::Ising(count(n)?)),
            ["fermion", n, a] => {
                let a: f64 = a.parse().map_err(|_| Error::InvalidInput(format!("bad spacing {a:?}")))?;
                Ok(Self::Fermion(FermionChainSpec::new(count(n)?, a)?))
            }
            _ => invalid(format!("unknown model {s:?}; expected toy:<n>, haf:<N>, tfi:<N> or fermion:<N>:<a>")),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Toy(n) => write!(f, "toy:{n}"),
            Self::Heisenberg(n) => write!(f, "haf:{n}"),
            Self::Ising(n) => write!(f, "tfi:{n}"),
            Self::Fermion(spec) => write!(f, "fermion:{}:{}", spec.n_sites, spec.spacing),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_layout_is_nested() {
        let h = toy_model(3).unwrap();
        assert_eq!(h.n_sites(), 6);
        assert_eq!(h.ab_cut(), 3);
        assert_eq!(h.pair_layout().unwrap(), &[(2, 3), (1, 4), (0, 5)]);
        assert!(h.terms().iter().all(|t| t.crosses(h.ab_cut())));
    }

    #[test]
    fn bell_penalty_spectrum() {
        let vals = eigvalsh_array(bell_penalty().as_array()).unwrap();
        let want = [0.0, 1.0, 1.0, 1.0];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).abs() < 1e-12);
        }
    }

    #[test]
    fn cut_positions() {
        assert_eq!(heisenberg_af(12).unwrap().ab_cut(), 6);
        assert_eq!(tfi_critical(7).unwrap().ab_cut(), 3);
        assert_eq!(tfi_critical(1).unwrap().ab_cut(), 0);
        assert!(heisenberg_af(1).is_err());
        assert!(toy_model(0).is_err());
    }

    #[test]
    fn interaction_norms() {
        assert!((interaction_norm(&heisenberg_af(4).unwrap()).unwrap() - 3.0).abs() < 1e-10);
        assert!((interaction_norm(&tfi_critical(4).unwrap()).unwrap() - 1.0).abs() < 1e-10);
        assert!((interaction_norm(&toy_model(3).unwrap()).unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn fermion_spec_validation() {
        assert!(FermionChainSpec::new(5, 1.0).is_err());
        assert!(FermionChainSpec::new(2, 1.0).is_err());
        assert!(FermionChainSpec::new(4, 0.0).is_err());
        assert!(FermionChainSpec::new(4, 1.0).is_ok());
    }

    #[test]
    fn model_strings_round_trip() {
        for s in ["toy:4", "haf:12", "tfi:8", "fermion:8:0.5"] {
            let spec: ModelSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("ising:4".parse::<ModelSpec>().is_err());
        assert!("haf:x".parse::<ModelSpec>().is_err());
        assert!("fermion:5:1".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn non_hermitian_term_rejected() {
        assert!(Term::one_site(0, lowering()).is_err());
        assert!(Term::two_site(1, 0, pauli_z().kron(&pauli_z())).is_err());
    }
}
