//! Property tests over random spectra, point sets and states.

mod common;

use enttemp::models::{heisenberg_af, staggered_fermion_spin, tfi_critical, toy_model};
use enttemp::oneshot::majorizes;
use enttemp::tradeoff::{imaginary_step, pareto_front, TradeoffPoint};
use enttemp::{exact, FermionChainSpec, MatrixProductState, SchmidtSpectrum};
use proptest::prelude::*;

fn spectrum() -> impl Strategy<Value = SchmidtSpectrum> {
    prop::collection::vec(1e-6f64..1.0, 1..12).prop_map(|w| SchmidtSpectrum::from_weights(&w).unwrap())
}

fn points() -> impl Strategy<Value = Vec<TradeoffPoint>> {
    prop::collection::vec((0u8..20, 0u8..20), 0..40).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(k, (s, e))| TradeoffPoint {
                sample: k,
                moves: 1,
                digest: String::new(),
                delta_s: s as f64 * 0.05,
                delta_e: e as f64 * 0.1,
            })
            .collect()
    })
}

fn dominated(p: &TradeoffPoint, q: &TradeoffPoint) -> bool {
    q.delta_e <= p.delta_e && q.delta_s >= p.delta_s && (q.delta_e < p.delta_e || q.delta_s > p.delta_s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sharpening_never_increases_entropy(spec in spectrum(), eps in 0.0f64..3.0) {
        let sharp = spec.sharpened(eps).unwrap();
        prop_assert!(sharp.entropy_bits() <= spec.entropy_bits() + 1e-12);
        prop_assert!(majorizes(&sharp, &spec));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn majorization_is_transitive(a in spectrum(), b in spectrum(), c in spectrum()) {
        prop_assert!(majorizes(&a, &a));
        if majorizes(&a, &b) && majorizes(&b, &c) {
            prop_assert!(majorizes(&a, &c));
        }
        let product = SchmidtSpectrum::from_weights(&[1.0]).unwrap();
        prop_assert!(majorizes(&product, &a));
        // Entropy is Schur concave.
        if majorizes(&a, &b) {
            prop_assert!(a.entropy_bits() <= b.entropy_bits() + 1e-9);
        }
    }

    #[test]
    fn pareto_front_equals_dominance_filter(pts in points()) {
        let front = pareto_front(&pts);
        let mut want: Vec<&TradeoffPoint> =
            pts.iter().filter(|p| !pts.iter().any(|q| dominated(p, q))).collect();
        want.sort_by(|a, b| a.delta_s.total_cmp(&b.delta_s).then(a.sample.cmp(&b.sample)));
        let got: Vec<&TradeoffPoint> = front.points().iter().collect();
        prop_assert_eq!(got, want);
        let again = pareto_front(front.points());
        prop_assert_eq!(again.points(), front.points());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn imaginary_step_lowers_energy(seed in 0u64..1000, tau in 0.005f64..0.05, model in 0usize..4) {
        let h = match model {
            0 => heisenberg_af(8).unwrap(),
            1 => tfi_critical(8).unwrap(),
            2 => staggered_fermion_spin(&FermionChainSpec::new(8, 1.0).unwrap()).unwrap(),
            _ => toy_model(4).unwrap(),
        };
        let psi = MatrixProductState::random(8, 2, 4, seed).unwrap();
        let e_before = psi.energy(&h).unwrap();
        let next = match imaginary_step(&psi, &h, tau, 64, 0.0) {
            Ok(next) => next,
            // Long-range terms have no nearest-neighbour Trotter split.
            Err(_) if model >= 2 => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(next.energy(&h).unwrap() <= e_before + 1e-10);
    }

    #[test]
    fn mps_agrees_with_dense(seed in 0u64..1000, n in 2usize..=12, chi in 1usize..6) {
        let psi = MatrixProductState::random(n, 2, chi, seed).unwrap();
        let dense = psi.to_dense().unwrap();
        let h = tfi_critical(n).unwrap();
        let reference = common::inner(&dense, &exact::apply(&h, &dense).unwrap()).re;
        prop_assert!((psi.energy(&h).unwrap() - reference).abs() < 1e-9);
        let bond = n / 2;
        let ours = psi.schmidt(bond).unwrap();
        let theirs = exact::schmidt(&dense, n, 2, bond).unwrap();
        prop_assert!((ours.entropy_bits() - theirs.entropy_bits()).abs() < 1e-9);
    }
}
