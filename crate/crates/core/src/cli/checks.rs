//! Named reference checks run by `enttemp check`.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{DenseMatrix, C64};
use crate::models::{heisenberg_af, staggered_fermion_spin, tfi_critical, toy_model, FermionChainSpec};
use crate::mps::MatrixProductState;
use crate::oneshot::{min_energy_at_rank, toy_cost, RankSearch};
use crate::oracles::*;
use crate::tradeoff::{boost_top_weight, find_ground, near_ground_coefficients, pareto_front, sharpen, GroundSearch};
use crate::{exact, tradeoff};

pub const SUITES: &[&str] =
    &["method1", "method2", "toy", "channel", "naive", "fermion", "scaling", "ground", "near_ground", "invariants"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured − expected| ≤ tolerance`.
    Absolute,
    /// `|measured − expected| ≤ tolerance·|expected|`.
    Relative,
    /// `measured ≥ expected − tolerance`.
    AtLeast,
    /// `measured ≤ expected + tolerance`.
    AtMost,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

struct Recorder {
    suite: &'static str,
    results: Vec<CheckResult>,
}

impl Recorder {
    fn push(&mut self, name: impl Into<String>, measured: f64, expected: f64, tolerance: f64, comparison: Comparison) {
        let diff = measured - expected;
        let pass = match comparison {
            Comparison::Absolute => diff.abs() <= tolerance,
            Comparison::Relative => diff.abs() <= tolerance * expected.abs(),
            Comparison::AtLeast => diff >= -tolerance,
            Comparison::AtMost => diff <= tolerance,
        };
        self.results.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            measured,
            expected,
            tolerance,
            comparison,
            pass,
        });
    }
}

/// Runs one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Result<Vec<CheckResult>>> {
    let suite = *SUITES.iter().find(|&&s| s == name)?;
    let mut rec = Recorder { suite, results: Vec::new() };
    let outcome = match suite {
        "method1" => method1(&mut rec),
        "method2" => method2(&mut rec),
        "toy" => toy(&mut rec),
        "channel" => channel(&mut rec),
        "naive" => naive(&mut rec),
        "fermion" => fermion(&mut rec),
        "scaling" => scaling(&mut rec),
        "ground" => ground(&mut rec),
        "near_ground" => near_ground(&mut rec),
        "invariants" => invariants(&mut rec),
        _ => unreachable!("suite list and dispatch agree"),
    };
    Some(outcome.map(|()| rec.results))
}

fn method1(rec: &mut Recorder) -> Result<()> {
    let half = method1_ansatz(10, 5)?;
    rec.push("cost per pair at m = n/2", half.delta_e / 5.0, 0.375, 0.005, Comparison::Absolute);
    let p = half.alpha * half.alpha;
    let h2 = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
    rec.push("entropy equation at m = n/2", h2, 0.5, 1e-10, Comparison::Absolute);
    let full = method1_ansatz(6, 6)?;
    rec.push("full extraction cost n/2", full.delta_e, 3.0, 0.0, Comparison::Absolute);
    let worst = (1..=8).map(|m| method1_ansatz(8, m).map(|r| r.delta_e / m as f64)).collect::<Result<Vec<_>>>()?;
    rec.push("cost per pair never above 1/2", worst.into_iter().fold(0.0, f64::max), 0.5, 1e-12, Comparison::AtMost);
    Ok(())
}

/// Overlap bound for one extracted pair as quoted to five digits.
#[allow(clippy::approx_constant)]
const PUBLISHED_OVERLAP_BOUND: f64 = 0.70711;

fn method2(rec: &mut Recorder) -> Result<()> {
    rec.push("cost(1)", method2_cost(1), 0.5, 1e-15, Comparison::Absolute);
    rec.push("bound(1)", method2_overlap_bound(1), PUBLISHED_OVERLAP_BOUND, 1e-5, Comparison::Absolute);
    let h = toy_model(3)?;
    let (_, omega) = exact::ground_state(&h)?;
    for m in [1u32, 2] {
        let rank = 8 >> m;
        let best = max_overlap_at_rank(&omega, 8, 8, rank, 1)?;
        rec.push(
            format!("overlap at rank {rank}, n=3"),
            best.overlap,
            method2_overlap_bound(m),
            1e-6,
            Comparison::Absolute,
        );
    }
    Ok(())
}

fn toy(rec: &mut Recorder) -> Result<()> {
    let n = 3;
    let h = toy_model(n)?;
    let cfg = RankSearch::default();
    for m in 1..=n {
        let chi = 1 << (n - m);
        let r = min_energy_at_rank(&h, chi, &cfg)?;
        rec.push(format!("n=3, chi={chi}"), r.delta_e, toy_cost(n, m)?, 1e-6, Comparison::Absolute);
    }
    Ok(())
}

fn channel(rec: &mut Recorder) -> Result<()> {
    let z = DenseMatrix::diag(&[1.0, -1.0]);
    rec.push("identity channel", channel_energy_cost(&KrausChannel::identity(2), &z)?, 0.0, 0.0, Comparison::Absolute);
    rec.push(
        "fully depolarizing, Pauli z",
        channel_energy_cost(&KrausChannel::fully_depolarizing_qubit(), &z)?,
        1.0,
        1e-12,
        Comparison::Absolute,
    );
    let h = tfi_critical(2)?;
    let (e0, psi) = exact::ground_state(&h)?;
    let dense = DenseMatrix::from_array(exact::dense_matrix(&h)?)?;
    let spectrum = exact::spectrum(&h)?;
    let cost = channel_energy_cost(&KrausChannel::replacement(&psi)?, &dense)?;
    rec.push("replacement by ground state", cost, spectrum[spectrum.len() - 1] - e0, 1e-10, Comparison::Absolute);
    Ok(())
}

fn naive(rec: &mut Recorder) -> Result<()> {
    rec.push("haf:4", naive_protocol_bound(&heisenberg_af(4)?)?, 6.0, 1e-10, Comparison::Absolute);
    rec.push("tfi:4", naive_protocol_bound(&tfi_critical(4)?)?, 2.0, 1e-10, Comparison::Absolute);
    rec.push(
        "toy:2 full extraction below bound",
        toy_cost(2, 2)?,
        naive_protocol_bound(&toy_model(2)?)?,
        0.0,
        Comparison::AtMost,
    );
    Ok(())
}

fn fermion(rec: &mut Recorder) -> Result<()> {
    for n in [4, 6, 8] {
        let spec = FermionChainSpec::new(n, 1.0)?;
        let ed = exact::ground_energy(&staggered_fermion_spin(&spec)?)?;
        rec.push(format!("ground energy N={n}"), fermion_ground_energy(&spec), ed, 1e-8, Comparison::Absolute);
    }
    for a in [1.0, 0.5] {
        let spec = FermionChainSpec::new(8, a)?;
        let min = fermion_product_bound(&spec, 1000, 7)?;
        rec.push(format!("product-state bound N=8, a={a}"), min, 1.0 / a, 1e-9, Comparison::AtLeast);
    }
    Ok(())
}

fn scaling(rec: &mut Recorder) -> Result<()> {
    let one = QftScalingParams::new(1, 1.0, 1.0)?;
    let pts = qft_scaling_curve(&one, &[0.5, 1.5])?;
    rec.push("d=1, c=1 ratio per unit entropy", pts[1].delta_e / pts[0].delta_e, 64.0, 1e-9, Comparison::Relative);
    let two = QftScalingParams::new(2, 1.0, 1.0)?;
    let pts = qft_scaling_curve(&two, &[1.0, 2.0])?;
    rec.push("d=2 exponent", (pts[1].delta_e / pts[0].delta_e).log2(), 2.0, 1e-12, Comparison::Absolute);
    Ok(())
}

fn ground(rec: &mut Recorder) -> Result<()> {
    let cfg = GroundSearch { seed: 1, ..GroundSearch::default() };
    for (label, h) in [("haf:8", heisenberg_af(8)?), ("tfi:8", tfi_critical(8)?)] {
        let (_, e) = find_ground(&h, &cfg)?;
        rec.push(format!("{label} ground energy"), e, exact::ground_energy(&h)?, 1e-5, Comparison::Relative);
    }
    Ok(())
}

fn near_ground(rec: &mut Recorder) -> Result<()> {
    let h = tfi_critical(8)?;
    let (e0, psi) = exact::ground_state(&h)?;
    let coeffs = near_ground_coefficients(&psi, &h, e0)?;
    let entropy = |eps: f64| -> Result<f64> {
        let state = boost_top_weight(&psi, &h, eps)?;
        Ok(exact::schmidt(&state, h.n_sites(), 2, h.ab_cut())?.entropy_bits())
    };
    let step = 1e-5;
    let slope = (entropy(step)? - entropy(-step)?) / (2.0 * step);
    rec.push("entropy slope", slope, coeffs.c1, 1e-4, Comparison::Absolute);
    let eps = 1e-4;
    let de = exact::expectation(&h, &boost_top_weight(&psi, &h, eps)?)? - e0;
    rec.push("energy curvature at eps=1e-4", de / (eps * eps), coeffs.c2, 1e-3, Comparison::Relative);
    Ok(())
}

fn invariants(rec: &mut Recorder) -> Result<()> {
    let psi = MatrixProductState::random(8, 2, 8, 3)?;
    let before = psi.entropy_bits(4)?;
    let after = sharpen(&psi, 4, 0.3)?.entropy_bits(4)?;
    rec.push("sharpening lowers entropy", after, before, 0.0, Comparison::AtMost);
    let h = heisenberg_af(8)?;
    let dense: Vec<C64> = psi.to_dense()?;
    rec.push("MPS energy matches dense", psi.energy(&h)?, exact::expectation(&h, &dense)?, 1e-10, Comparison::Absolute);
    let pts: Vec<tradeoff::TradeoffPoint> = (0..50)
        .map(|k| tradeoff::TradeoffPoint {
            sample: k,
            moves: 1,
            digest: String::new(),
            delta_s: ((k * 37) % 11) as f64,
            delta_e: ((k * 53) % 13) as f64,
        })
        .collect();
    let front = pareto_front(&pts);
    let again = pareto_front(front.points());
    rec.push("pareto front idempotent", again.len() as f64, front.len() as f64, 0.0, Comparison::Absolute);
    Ok(())
}
