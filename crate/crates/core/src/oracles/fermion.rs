//! Free staggered fermions on a periodic chain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::linalg::C64;
use crate::models::{staggered_fermion_spin, FermionChainSpec, LocalHamiltonian};

/// Single-particle energies `−sin(2πk/N)/a`, `k = 0..N`.
pub fn fermion_mode_energies(spec: &FermionChainSpec) -> Vec<f64> {
    let n = spec.n_sites() as f64;
    (0..spec.n_sites()).map(|k| -(2.0 * std::f64::consts::PI * k as f64 / n).sin() / spec.spacing()).collect()
}

/// Ground energy by filling every negative mode on top of the constant `N/a`.
/// Equals `(N − cot(π/N))/a`.
pub fn fermion_ground_energy(spec: &FermionChainSpec) -> f64 {
    let filled: f64 = fermion_mode_energies(spec).into_iter().filter(|&e| e < 0.0).sum();
    spec.n_sites() as f64 / spec.spacing() + filled
}

/// Every many-body energy (all `2^N` mode occupations), ascending.
pub fn fermion_spectrum(spec: &FermionChainSpec) -> Result<Vec<f64>> {
    let n = spec.n_sites();
    if n > 16 {
        return Err(Error::ResourceLimit(format!("full spectrum limited to 16 modes, got {n}")));
    }
    let modes = fermion_mode_energies(spec);
    let offset = n as f64 / spec.spacing();
    let mut all: Vec<f64> = (0..1usize << n)
        .map(|occ| offset + (0..n).filter(|k| occ >> k & 1 == 1).map(|k| modes[k]).sum::<f64>())
        .collect();
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// The hopping term across the middle bond plus its `1/a` share of the constant.
fn cut_term(spec: &FermionChainSpec) -> Result<LocalHamiltonian> {
    let full = staggered_fermion_spin(spec)?;
    let cut = full.ab_cut();
    let term =
        full.terms().iter().find(|t| t.sites() == [cut - 1, cut]).cloned().expect("bulk chain has a bond at the cut");
    LocalHamiltonian::new(spec.n_sites(), 2, vec![term], 1.0 / spec.spacing(), cut, None)
}

fn random_parity_block(rng: &mut ChaCha8Rng, sites: usize, parity: u32) -> Vec<C64> {
    (0..1usize << sites)
        .map(|idx| {
            if idx.count_ones() % 2 == parity {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// Smallest expectation of the cut-crossing term (hopping plus `1/a`) over
/// `samples` random states that are products across the middle cut, each
/// half having definite fermion parity.
pub fn fermion_product_bound(spec: &FermionChainSpec, samples: usize, seed: u64) -> Result<f64> {
    let n = spec.n_sites();
    if n > exact::MAX_DENSE_SITES {
        return Err(Error::ResourceLimit(format!(
            "product-state sampling limited to {} sites",
            exact::MAX_DENSE_SITES
        )));
    }
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let h = cut_term(spec)?;
    let half = n / 2;
    let mut best = f64::INFINITY;
    for index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let pa = rng.random_range(0..2u32);
        let pb = rng.random_range(0..2u32);
        let left = random_parity_block(&mut rng, half, pa);
        let right = random_parity_block(&mut rng, n - half, pb);
        let psi: Vec<C64> = left.iter().flat_map(|&l| right.iter().map(move |&r| l * r)).collect();
        best = best.min(exact::expectation(&h, &psi)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let four = FermionChainSpec::new(4, 1.0).unwrap();
        assert!((fermion_ground_energy(&four) - 3.0).abs() < 1e-12);
        let eight = FermionChainSpec::new(8, 1.0).unwrap();
        let cot = 1.0 / (std::f64::consts::PI / 8.0).tan();
        assert!((fermion_ground_energy(&eight) - (8.0 - cot)).abs() < 1e-12);
        let half = FermionChainSpec::new(4, 0.5).unwrap();
        assert!((fermion_ground_energy(&half) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_starts_at_ground() {
        let spec = FermionChainSpec::new(6, 1.0).unwrap();
        let all = fermion_spectrum(&spec).unwrap();
        assert_eq!(all.len(), 64);
        assert!((all[0] - fermion_ground_energy(&spec)).abs() < 1e-12);
    }

    #[test]
    fn vacuum_pays_exactly_the_constant() {
        let spec = FermionChainSpec::new(4, 0.5).unwrap();
        let h = cut_term(&spec).unwrap();
        let mut vac = vec![C64::new(0.0, 0.0); 16];
        vac[0] = C64::new(1.0, 0.0);
        assert!((exact::expectation(&h, &vac).unwrap() - 2.0).abs() < 1e-15);
    }
}
