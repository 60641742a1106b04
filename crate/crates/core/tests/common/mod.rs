//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use enttemp::C64;

/// Ground energy of the open critical Ising chain `−Σ ZZ − Σ X` from its
/// free-fermion modes.
pub fn tfi_free_fermion_energy(n: usize) -> f64 {
    -(1..=n).map(|m| 2.0 * ((2 * m - 1) as f64 * std::f64::consts::PI / (2.0 * (2 * n + 1) as f64)).sin()).sum::<f64>()
}

/// `Σ σ·σ` on an open chain, applied with bit operations (site 0 is the
/// most significant bit).
pub fn heisenberg_apply(n: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (s, &x) in v.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for i in 0..n - 1 {
            let (a, b) = (n - 1 - i, n - 2 - i);
            let same = ((s >> a) & 1) == ((s >> b) & 1);
            if same {
                out[s] += x;
            } else {
                out[s] -= x;
                out[s ^ (1 << a) ^ (1 << b)] += 2.0 * x;
            }
        }
    }
    out
}

/// Lowest eigenvalue of a real symmetric operator by Lanczos with full
/// reorthogonalization, started from `start`.
pub fn lanczos_lowest(apply: impl Fn(&[f64]) -> Vec<f64>, start: Vec<f64>, steps: usize) -> f64 {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let norm = dot(&start, &start).sqrt();
    let mut basis = vec![start.iter().map(|x| x / norm).collect::<Vec<f64>>()];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for k in 0..steps {
        let mut w = apply(&basis[k]);
        let a = dot(&w, &basis[k]);
        alpha.push(a);
        for q in &basis {
            let c = dot(&w, q);
            w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
        }
        let b = dot(&w, &w).sqrt();
        if b < 1e-12 || k + 1 == steps {
            break;
        }
        beta.push(b);
        basis.push(w.into_iter().map(|x| x / b).collect());
    }
    tridiagonal_lowest(&alpha, &beta)
}

/// Lowest eigenvalue of a symmetric tridiagonal matrix by bisection on the
/// Sturm sequence.
fn tridiagonal_lowest(alpha: &[f64], beta: &[f64]) -> f64 {
    let bound = alpha.iter().map(|a| a.abs()).sum::<f64>() + 2.0 * beta.iter().map(|b| b.abs()).sum::<f64>();
    let below = |x: f64| {
        let mut count = 0;
        let mut d = 1.0;
        for (k, &a) in alpha.iter().enumerate() {
            let b2 = if k == 0 { 0.0 } else { beta[k - 1] * beta[k - 1] };
            d = a - x - if k == 0 { 0.0 } else { b2 / d };
            if d == 0.0 {
                d = 1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Heisenberg ground energy in the zero-magnetization sector.
pub fn heisenberg_ground_energy(n: usize) -> f64 {
    let dim = 1usize << n;
    let start: Vec<f64> = (0..dim)
        .map(|s: usize| {
            if s.count_ones() as usize * 2 == n {
                0.5 + (s.wrapping_mul(2_654_435_761) % 1000) as f64 / 1000.0
            } else {
                0.0
            }
        })
        .collect();
    lanczos_lowest(|v| heisenberg_apply(n, v), start, 200)
}

/// Schmidt coefficients of a big-endian dense state by singular values of
/// the reshaped amplitude matrix, computed from the eigenvalues of `M M†`
/// via Jacobi rotations.
pub fn schmidt_by_jacobi(psi: &[C64], n: usize, bond: usize) -> Vec<f64> {
    let (rows, cols) = (1usize << bond, 1usize << (n - bond));
    let mut g = vec![vec![C64::new(0.0, 0.0); rows]; rows];
    for i in 0..rows {
        for j in 0..rows {
            g[i][j] = (0..cols).map(|k| psi[i * cols + k] * psi[j * cols + k].conj()).sum();
        }
    }
    let mut eig = hermitian_jacobi_eigenvalues(g);
    eig.sort_by(|a, b| b.total_cmp(a));
    eig.into_iter().map(|x| x.max(0.0).sqrt()).collect()
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.
#[allow(clippy::needless_range_loop)]
pub fn hermitian_jacobi_eigenvalues(mut a: Vec<Vec<C64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let phase = apq / apq.norm();
                let (app, aqq) = (a[p][p].re, a[q][q].re);
                let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                let (c, s) = (theta.cos(), theta.sin());
                // Columns: p' = c·p − s·conj(phase)·q, q' = s·phase·p + c·q.
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * c - y * s * phase.conj();
                    row[q] = x * s * phase + y * c;
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = x * c - y * s * phase;
                    a[q][k] = x * s * phase.conj() + y * c;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i].re).collect()
}

/// `⟨ψ|φ⟩`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Von Neumann entropy in bits of Schmidt coefficients.
pub fn entropy_bits(coefficients: &[f64]) -> f64 {
    let total: f64 = coefficients.iter().map(|x| x * x).sum();
    -coefficients.iter().map(|x| x * x / total).filter(|&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}
