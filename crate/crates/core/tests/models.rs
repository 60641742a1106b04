mod common;

use enttemp::models::{heisenberg_af, interaction_norm, staggered_fermion_spin, tfi_critical, toy_model};
use enttemp::{exact, FermionChainSpec, ModelSpec};

#[test]
fn ising_matches_free_fermion_modes() {
    for n in [2, 4, 6, 8, 10] {
        let e = exact::ground_energy(&tfi_critical(n).unwrap()).unwrap();
        assert!((e - common::tfi_free_fermion_energy(n)).abs() < 1e-9, "n = {n}");
    }
}

#[test]
fn heisenberg_matches_lanczos_reference() {
    for n in [4, 6, 8] {
        let e = exact::ground_energy(&heisenberg_af(n).unwrap()).unwrap();
        assert!((e - common::heisenberg_ground_energy(n)).abs() < 1e-8, "n = {n}");
    }
}

#[test]
fn two_site_heisenberg_singlet() {
    let e = exact::ground_energy(&heisenberg_af(2).unwrap()).unwrap();
    assert!((e + 3.0).abs() < 1e-12);
}

#[test]
fn toy_model_ground_is_zero_with_unit_gap() {
    let spectrum = exact::spectrum(&toy_model(2).unwrap()).unwrap();
    assert!(spectrum[0].abs() < 1e-12);
    let first_excited = spectrum.iter().copied().find(|&x| x > 1e-9).unwrap();
    assert!((first_excited - 1.0).abs() < 1e-12);
}

#[test]
fn interaction_norms() {
    assert!((interaction_norm(&heisenberg_af(6).unwrap()).unwrap() - 3.0).abs() < 1e-12);
    assert!((interaction_norm(&tfi_critical(6).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    assert!((interaction_norm(&toy_model(3).unwrap()).unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn fermion_chain_cut_and_offset() {
    let spec = FermionChainSpec::new(6, 0.5).unwrap();
    let h = staggered_fermion_spin(&spec).unwrap();
    assert_eq!(h.ab_cut(), 3);
    assert!((h.offset() - 12.0).abs() < 1e-15);
    assert!(FermionChainSpec::new(5, 1.0).is_err());
    assert!(FermionChainSpec::new(6, 0.0).is_err());
}

#[test]
fn model_names_round_trip() {
    for name in ["toy:3", "haf:10", "tfi:12", "fermion:8:0.5"] {
        let spec: ModelSpec = name.parse().unwrap();
        assert_eq!(spec.to_string(), name);
        assert!(spec.build().is_ok());
    }
    for bad in ["haf", "tfi:x", "ising:4", "fermion:7:1", "haf:1"] {
        assert!(bad.parse::<ModelSpec>().and_then(|s| s.build()).is_err(), "{bad}");
    }
}
