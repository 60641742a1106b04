//! Energy cost versus extracted entropy for critical and higher-dimensional
//! field theories, up to a prefactor.

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QftScalingParams {
    dimension: u32,
    central_charge: f64,
    prefactor: f64,
}

impl QftScalingParams {
    /// `central_charge` only matters in one dimension, where it must be positive.
    pub fn new(dimension: u32, central_charge: f64, prefactor: f64) -> Result<Self> {
        if dimension == 0 {
            return invalid("spatial dimension must be at least 1");
        }
        if dimension == 1 && !(central_charge > 0.0 && central_charge.is_finite()) {
            return invalid(format!("central charge must be positive, got {central_charge}"));
        }
        if !(prefactor > 0.0 && prefactor.is_finite()) {
            return invalid(format!("prefactor must be positive, got {prefactor}"));
        }
        Ok(Self { dimension, central_charge, prefactor })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn central_charge(&self) -> f64 {
        self.central_charge
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingPoint {
    pub delta_s: f64,
    pub delta_e: f64,
    /// `ΔE/ΔS`; undefined at `ΔS = 0`.
    pub t_ent: Option<f64>,
}

/// `ΔE = prefactor·exp((6 ln 2 / c)·ΔS)` in one dimension and
/// `ΔE = prefactor·ΔS^{d/(d−1)}` in `d > 1`.
pub fn qft_scaling_curve(p: &QftScalingParams, delta_s: &[f64]) -> Result<Vec<ScalingPoint>> {
    delta_s
        .iter()
        .map(|&s| {
            if !(s >= 0.0 && s.is_finite()) {
                return invalid(format!("entropy change must be finite and nonnegative, got {s}"));
            }
            let delta_e = if p.dimension == 1 {
                p.prefactor * (6.0 * std::f64::consts::LN_2 / p.central_charge * s).exp()
            } else {
                let d = p.dimension as f64;
                p.prefactor * s.powf(d / (d - 1.0))
            };
            Ok(ScalingPoint { delta_s: s, delta_e, t_ent: (s > 0.0).then(|| delta_e / s) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimension() {
        let p = QftScalingParams::new(1, 1.0, 2.5).unwrap();
        let pts = qft_scaling_curve(&p, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(pts[0].delta_e, 2.5);
        assert!(pts[0].t_ent.is_none());
        assert!((pts[2].delta_e / pts[1].delta_e - 64.0).abs() < 1e-9);
    }

    #[test]
    fn two_dimensions_quadratic() {
        let p = QftScalingParams::new(2, 0.0, 1.0).unwrap();
        let pts = qft_scaling_curve(&p, &[0.5, 1.0]).unwrap();
        assert!((pts[1].delta_e / pts[0].delta_e - 4.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(QftScalingParams::new(0, 1.0, 1.0).is_err());
        assert!(QftScalingParams::new(1, 0.0, 1.0).is_err());
        assert!(QftScalingParams::new(1, 1.0, -1.0).is_err());
        let p = QftScalingParams::new(1, 1.0, 1.0).unwrap();
        assert!(qft_scaling_curve(&p, &[-0.1]).is_err());
    }
}
