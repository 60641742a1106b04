//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line straight to stdout so the summary shows even when
//! output capture is on.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use enttemp::models::{heisenberg_af, staggered_fermion_spin, tfi_critical, toy_model};
use enttemp::oneshot::{majorizes, rank_sweep, RankSearch};
use enttemp::oracles::{
    fermion_ground_energy, fermion_product_bound, max_overlap_at_rank, method1_ansatz, method2_cost,
    method2_overlap_bound,
};
use enttemp::tradeoff::{
    boost_top_weight, ent_temperature, find_ground, imaginary_step, near_ground_coefficients, pareto_front,
    power_law_fit_in, sample_tradeoff, GroundSearch, SamplerConfig, TradeoffPoint, NEAR_GROUND_WINDOW,
};
use enttemp::{exact, FermionChainSpec, MatrixProductState, SchmidtSpectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let pass = pass && elapsed <= budget;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!(
        "[{verdict}] criterion {id}: {name} ({:.1}s of {}s) {detail}\n",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let _ = std::io::stdout().write_all(line.as_bytes());
    assert!(pass, "criterion {id} failed: {detail}");
}

#[test]
fn criterion_1_toy_one_shot_cost() {
    let start = Instant::now();
    let h = toy_model(4).unwrap();
    // The sweep is `min_energy_at_rank` at every chi from 1 to 16.
    let sweep = rank_sweep(&h, &RankSearch::default()).unwrap();
    let mut worst = 0.0f64;
    for m in 1..=4 {
        let r = &sweep[(1 << (4 - m)) - 1];
        assert_eq!(r.chi, 1 << (4 - m));
        worst = worst.max((r.delta_e - 0.5 * m as f64).abs());
    }
    let mut by_entropy: Vec<(f64, f64)> = sweep.iter().map(|r| (r.delta_s0, r.delta_e)).collect();
    by_entropy.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = by_entropy.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-9);
    report(
        1,
        "toy model rank-constrained cost is m/2",
        worst <= 1e-6 && monotone && sweep.len() == 16,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("max |ΔE − m/2| = {worst:.2e}, sweep monotone: {monotone}"),
    );
}

#[test]
fn criterion_2_method1_ansatz() {
    let start = Instant::now();
    let r = method1_ansatz(10, 5).unwrap();
    let per_pair = r.delta_e / 5.0;
    let p = r.alpha * r.alpha;
    let residual = (-p * p.log2() - (1.0 - p) * (1.0 - p).log2() - 0.5).abs();
    let full = method1_ansatz(8, 8).unwrap().delta_e;
    report(
        2,
        "product ansatz cost per pair",
        (0.37..=0.38).contains(&per_pair) && residual < 1e-10 && full == 4.0,
        start.elapsed(),
        Duration::from_secs(1),
        &format!("ΔE/m = {per_pair:.6}, entropy residual {residual:.1e}, ΔE(m = n = 8) = {full}"),
    );
}

#[test]
fn criterion_3_method2_overlap() {
    let start = Instant::now();
    let closed = (1..=8u32).all(|m| (method2_cost(m) - (1.0 - 0.5f64.powi(m as i32))).abs() < 1e-15);
    let h = toy_model(3).unwrap();
    let (_, omega) = exact::ground_state(&h).unwrap();
    let mut worst = 0.0f64;
    for m in [1u32, 2] {
        let best = max_overlap_at_rank(&omega, 8, 8, 1 << (3 - m), 7).unwrap();
        worst = worst.max((best.overlap - 2f64.powf(-(m as f64) / 2.0)).abs());
        worst = worst.max((method2_overlap_bound(m) - 2f64.powf(-(m as f64) / 2.0)).abs());
    }
    report(
        3,
        "maximal-overlap cost 1 − 2^-m",
        closed && worst <= 1e-6,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("closed form ok: {closed}, max overlap error {worst:.2e}"),
    );
}

#[test]
fn criterion_4_ground_state_fidelity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for n in [8, 10, 12] {
        for (label, h) in [("haf", heisenberg_af(n).unwrap()), ("tfi", tfi_critical(n).unwrap())] {
            let exact_e = exact::ground_energy(&h).unwrap();
            let (_, e) = find_ground(&h, &GroundSearch { seed: n as u64, ..GroundSearch::default() }).unwrap();
            let rel = ((e - exact_e) / exact_e).abs();
            worst = worst.max(rel);
            detail.push_str(&format!("{label}:{n} {rel:.1e}; "));
        }
    }
    report(
        4,
        "imaginary-time ground energies vs exact diagonalization",
        worst <= 1e-5,
        start.elapsed(),
        Duration::from_secs(300),
        &format!("relative errors {detail}"),
    );
}

#[test]
fn criterion_5_linear_temperature_near_ground() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (label, h) in [("tfi:12", tfi_critical(12).unwrap()), ("haf:12", heisenberg_af(12).unwrap())] {
        let (ground, e0) = find_ground(&h, &GroundSearch { seed: 5, ..GroundSearch::default() }).unwrap();
        let cfg = SamplerConfig { n_samples: 2000, seed: 5, ..SamplerConfig::default() };
        let points = sample_tradeoff(&h, &ground, e0, &cfg).unwrap();
        let temperature = ent_temperature(&pareto_front(&points));
        let inside =
            temperature.iter().filter(|(s, _)| *s >= NEAR_GROUND_WINDOW.0 && *s <= NEAR_GROUND_WINDOW.1).count();
        match power_law_fit_in(&temperature, NEAR_GROUND_WINDOW) {
            Some((a, gamma)) => {
                ok &= (0.8..=1.2).contains(&gamma);
                detail.push_str(&format!("{label}: γ = {gamma:.3}, A = {a:.3} over {inside} front points; "));
            }
            None => {
                ok = false;
                detail.push_str(&format!("{label}: no fit; "));
            }
        }
    }
    report(
        5,
        "Pareto-front temperature linear in ΔS near the ground state",
        ok,
        start.elapsed(),
        Duration::from_secs(600),
        &format!("{detail}window ΔS ∈ [{}, {}] bits", NEAR_GROUND_WINDOW.0, NEAR_GROUND_WINDOW.1),
    );
}

#[test]
fn criterion_6_near_ground_expansion() {
    let start = Instant::now();
    let h = tfi_critical(8).unwrap();
    let (e0, psi) = exact::ground_state(&h).unwrap();
    let c = near_ground_coefficients(&psi, &h, e0).unwrap();
    let entropy = |eps: f64| exact::schmidt(&boost_top_weight(&psi, &h, eps).unwrap(), 8, 2, 4).unwrap().entropy_bits();
    let step = 1e-6;
    let slope = (entropy(step) - entropy(-step)) / (2.0 * step);
    let slope_err = (slope - c.c1).abs();

    // ΔE/ε² = c2 + b·ε + O(ε²): the intercept of a straight-line fit over
    // the range is the quadratic coefficient.
    let grid: Vec<f64> = (0..=20).map(|k| 1e-4 * 100f64.powf(k as f64 / 20.0)).collect();
    let ratios: Vec<f64> = grid
        .iter()
        .map(|&eps| (exact::expectation(&h, &boost_top_weight(&psi, &h, eps).unwrap()).unwrap() - e0) / (eps * eps))
        .collect();
    let n = grid.len() as f64;
    let mx = grid.iter().sum::<f64>() / n;
    let my = ratios.iter().sum::<f64>() / n;
    let sxy: f64 = grid.iter().zip(&ratios).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = grid.iter().map(|x| (x - mx).powi(2)).sum();
    let intercept = my - sxy / sxx * mx;
    let c2_err = ((intercept - c.c2) / c.c2).abs();
    let spread = ratios.iter().map(|r| ((r - c.c2) / c.c2).abs()).fold(0.0, f64::max);
    let ds_ratios: Vec<f64> = grid.iter().map(|&eps| (entropy(0.0) - entropy(eps)) / eps).collect();
    let ds_spread = ds_ratios.iter().map(|r| ((r + c.c1) / c.c1).abs()).fold(0.0, f64::max);
    report(
        6,
        "near-ground entropy and energy coefficients",
        slope_err <= 1e-4 && c2_err <= 1e-3 && spread <= 0.05 && ds_spread <= 0.05,
        start.elapsed(),
        Duration::from_secs(60),
        &format!(
            "c1 = {:.6}, slope error {slope_err:.1e}; c2 = {:.6}, fitted {intercept:.6} (rel {c2_err:.1e}), \
             pointwise ΔE/ε² within {:.2}% and ΔS/ε within {:.2}% over [1e-4, 1e-2]",
            c.c1,
            c.c2,
            100.0 * spread,
            100.0 * ds_spread
        ),
    );
}

#[test]
fn criterion_7_staggered_fermions() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in [4, 6, 8] {
        let spec = FermionChainSpec::new(n, 1.0).unwrap();
        let ed = exact::ground_energy(&staggered_fermion_spin(&spec).unwrap()).unwrap();
        worst = worst.max((fermion_ground_energy(&spec) - ed).abs());
    }
    let mut bounds = String::new();
    let mut bound_ok = true;
    for a in [1.0, 0.5] {
        let spec = FermionChainSpec::new(8, a).unwrap();
        let min = fermion_product_bound(&spec, 1000, 11).unwrap();
        bound_ok &= min >= 1.0 / a - 1e-9;
        bounds.push_str(&format!("a = {a}: min {min:.6} vs 1/a = {}; ", 1.0 / a));
    }
    let e_a1 = fermion_ground_energy(&FermionChainSpec::new(8, 1.0).unwrap());
    let e_a2 = fermion_ground_energy(&FermionChainSpec::new(8, 0.5).unwrap());
    report(
        7,
        "fermion chain ground energy and product-state bound",
        worst <= 1e-8 && bound_ok,
        start.elapsed(),
        Duration::from_secs(120),
        &format!(
            "max |E0 − ED| = {worst:.1e}; {bounds}E0(N=8) = {e_a1:.6} at a = 1, {e_a2:.6} at a = 0.5 (scales as 1/a)"
        ),
    );
}

fn random_spectrum(rng: &mut ChaCha8Rng) -> SchmidtSpectrum {
    let len = rng.random_range(1..10);
    let w: Vec<f64> = (0..len).map(|_| rng.random_range(1e-6..1.0)).collect();
    SchmidtSpectrum::from_weights(&w).unwrap()
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    let sharpen_ok = (0..10_000).all(|_| {
        let s = random_spectrum(&mut rng);
        let eps = rng.random_range(0.0..2.0);
        s.sharpened(eps).unwrap().entropy_bits() <= s.entropy_bits() + 1e-12
    });
    if !sharpen_ok {
        failures.push("sharpening");
    }

    let majorization_ok = (0..1_000).all(|_| {
        let (a, b, c) = (random_spectrum(&mut rng), random_spectrum(&mut rng), random_spectrum(&mut rng));
        let transitive = !(majorizes(&a, &b) && majorizes(&b, &c)) || majorizes(&a, &c);
        let consistent = !majorizes(&a, &b) || a.entropy_bits() <= b.entropy_bits() + 1e-9;
        transitive && consistent && majorizes(&a, &a)
    });
    if !majorization_ok {
        failures.push("majorization");
    }

    let front_ok = (0..1_000).all(|_| {
        let len = rng.random_range(0..30);
        let pts: Vec<TradeoffPoint> = (0..len)
            .map(|k| TradeoffPoint {
                sample: k,
                moves: 1,
                digest: String::new(),
                delta_s: rng.random_range(0..15) as f64 * 0.1,
                delta_e: rng.random_range(0..15) as f64 * 0.1,
            })
            .collect();
        let dominated = |p: &TradeoffPoint| {
            pts.iter().any(|q| {
                q.delta_e <= p.delta_e && q.delta_s >= p.delta_s && (q.delta_e < p.delta_e || q.delta_s > p.delta_s)
            })
        };
        let mut want: Vec<usize> = pts.iter().filter(|p| !dominated(p)).map(|p| p.sample).collect();
        let mut got: Vec<usize> = pareto_front(&pts).points().iter().map(|p| p.sample).collect();
        want.sort_unstable();
        got.sort_unstable();
        want == got
    });
    if !front_ok {
        failures.push("pareto front");
    }

    let mut step_ok = true;
    for h in [heisenberg_af(10).unwrap(), tfi_critical(10).unwrap()] {
        for seed in 0..5 {
            let psi = MatrixProductState::random(10, 2, 4, seed).unwrap();
            for tau in [0.001, 0.01, 0.05] {
                let next = imaginary_step(&psi, &h, tau, 64, 0.0).unwrap();
                step_ok &= next.energy(&h).unwrap() <= psi.energy(&h).unwrap() + 1e-10;
            }
        }
    }
    // Non-nearest-neighbour models have no two-site Trotter split and are refused.
    let fermion = staggered_fermion_spin(&FermionChainSpec::new(8, 1.0).unwrap()).unwrap();
    for h in [toy_model(4).unwrap(), fermion] {
        step_ok &= imaginary_step(&MatrixProductState::random(8, 2, 2, 0).unwrap(), &h, 0.01, 8, 0.0).is_err();
    }
    if !step_ok {
        failures.push("imaginary step");
    }

    let mut dense_ok = true;
    for n in [2, 5, 8, 12] {
        let psi = MatrixProductState::random(n, 2, 6, n as u64).unwrap();
        let dense = psi.to_dense().unwrap();
        let h = if n % 2 == 0 { heisenberg_af(n).unwrap() } else { tfi_critical(n).unwrap() };
        let reference = common::inner(&dense, &exact::apply(&h, &dense).unwrap()).re;
        dense_ok &= (psi.energy(&h).unwrap() - reference).abs() < 1e-9;
        for bond in 1..n {
            let a = psi.schmidt(bond).unwrap();
            let b = exact::schmidt(&dense, n, 2, bond).unwrap();
            dense_ok &= a.coefficients().iter().zip(b.coefficients()).all(|(x, y)| (x - y).abs() < 1e-9);
        }
    }
    if !dense_ok {
        failures.push("MPS vs dense");
    }

    report(
        8,
        "property suites",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(300),
        &if failures.is_empty() { "all suites hold".to_string() } else { format!("failed: {}", failures.join(", ")) },
    );
}

fn run_cli(args: &[&str], out: &std::path::Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_enttemp"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("ENTTEMP_CONFIG")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

#[test]
fn criterion_9_cli_determinism() {
    let start = Instant::now();
    let runs: [(&[&str], &[&str]); 3] = [
        (
            &["pareto", "--model", "haf:8", "--seed", "9", "--samples", "100", "--format", "csv"],
            &["points.csv", "front.csv", "temperature.csv"],
        ),
        (&["toy", "--n", "3", "--seed", "9", "--restarts", "5", "--format", "csv"], &["toy.csv"]),
        (&["scaling", "--d", "1", "--c", "0.5", "--format", "csv"], &["scaling.csv"]),
    ];
    let mut identical = true;
    let mut compared = 0;
    for (args, files) in runs {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        identical &= run_cli(args, a.path()) && run_cli(args, b.path());
        for f in files {
            let (x, y) = (std::fs::read(a.path().join(f)), std::fs::read(b.path().join(f)));
            identical &= matches!((x, y), (Ok(x), Ok(y)) if x == y);
            compared += 1;
        }
    }
    report(
        9,
        "re-runs with the same seed write byte-identical CSV",
        identical,
        start.elapsed(),
        Duration::from_secs(300),
        &format!("{compared} CSV files compared across pareto, toy and scaling"),
    );
}
