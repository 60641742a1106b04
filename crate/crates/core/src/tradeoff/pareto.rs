//! Nondominated filtering of `(ΔE, ΔS)` samples.

use std::cmp::Ordering;

use serde::Serialize;

/// One sampled state: energy above the ground energy and entropy extracted
/// at the Alice/Bob cut (bits), with where it came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TradeoffPoint {
    pub sample: usize,
    /// Number of moves applied before the point was recorded, from 1.
    pub moves: usize,
    /// Hex digest of the move sequence that produced the state.
    pub digest: String,
    pub delta_s: f64,
    pub delta_e: f64,
}

impl TradeoffPoint {
    /// `ΔE/ΔS`, or `None` when nothing was extracted.
    pub fn temperature(&self) -> Option<f64> {
        (self.delta_s != 0.0).then(|| self.delta_e / self.delta_s)
    }
}

/// Points no other point beats on both energy (lower) and entropy (higher),
/// sorted by `delta_s` ascending.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ParetoFront {
    points: Vec<TradeoffPoint>,
}

impl ParetoFront {
    pub fn points(&self) -> &[TradeoffPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<TradeoffPoint> {
        self.points
    }
}

/// Keeps every point that no other point dominates. Exact duplicates of a
/// nondominated point are all kept. Non-finite points are dropped.
pub fn pareto_front(points: &[TradeoffPoint]) -> ParetoFront {
    let mut order: Vec<usize> =
        (0..points.len()).filter(|&i| points[i].delta_s.is_finite() && points[i].delta_e.is_finite()).collect();
    // Entropy descending, then energy ascending, then input order.
    order.sort_by(|&a, &b| {
        let (p, q) = (&points[a], &points[b]);
        q.delta_s.total_cmp(&p.delta_s).then(p.delta_e.total_cmp(&q.delta_e)).then(a.cmp(&b))
    });
    let mut kept = Vec::new();
    let mut best_above = f64::INFINITY;
    let mut start = 0;
    while start < order.len() {
        let s = points[order[start]].delta_s;
        let end = start + order[start..].iter().take_while(|&&i| points[i].delta_s == s).count();
        let group_min = points[order[start]].delta_e;
        if group_min < best_above {
            kept.extend(order[start..end].iter().copied().filter(|&i| points[i].delta_e == group_min));
        }
        best_above = best_above.min(group_min);
        start = end;
    }
    kept.sort_by(|&a, &b| match points[a].delta_s.total_cmp(&points[b].delta_s) {
        Ordering::Equal => a.cmp(&b),
        other => other,
    });
    ParetoFront { points: kept.into_iter().map(|i| points[i].clone()).collect() }
}

/// `(ΔS, ΔE/ΔS)` along the front. Points with `ΔS = 0` are skipped with a warning.
pub fn ent_temperature(front: &ParetoFront) -> Vec<(f64, f64)> {
    front
        .points
        .iter()
        .filter_map(|p| match p.temperature() {
            Some(t) => Some((p.delta_s, t)),
            None => {
                log::warn!("skipping front point with zero entropy change (sample {})", p.sample);
                None
            }
        })
        .collect()
}

/// Least-squares fit of `y = A·x^γ` in log-log space, returning `(A, γ)`.
/// Pairs with a nonpositive coordinate are ignored; `None` with fewer than
/// two usable pairs or no spread in `x`.
pub fn power_law_fit(pairs: &[(f64, f64)]) -> Option<(f64, f64)> {
    let logs: Vec<(f64, f64)> =
        pairs.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let gamma = sxy / sxx;
    Some(((my - gamma * mx).exp(), gamma))
}

/// Entropy window, in bits, for the near-ground temperature fit. Below the
/// lower edge the front is set by the Trotter and truncation error of the
/// reference ground state rather than by the trade-off itself.
pub const NEAR_GROUND_WINDOW: (f64, f64) = (1e-3, 0.2);

/// [`power_law_fit`] of `(ΔS, T)` pairs with `ΔS` inside `window`, bounds
/// inclusive.
pub fn power_law_fit_in(pairs: &[(f64, f64)], window: (f64, f64)) -> Option<(f64, f64)> {
    let inside: Vec<(f64, f64)> = pairs.iter().copied().filter(|(x, _)| *x >= window.0 && *x <= window.1).collect();
    power_law_fit(&inside)
}
