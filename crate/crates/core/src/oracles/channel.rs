//! Energy cost of quantum channels and the naive local-protocol bound.

use ndarray::Array2;

use crate::error::{invalid, Result};
use crate::linalg::{dagger, eigvalsh_array, DenseMatrix, C64, HERMITIAN_TOL};
use crate::models::{interaction_norm, LocalHamiltonian};

/// Allowed deviation of `Σ K†K` from the identity.
pub const CPTP_TOL: f64 = 1e-10;

/// A trace-preserving channel `ρ ↦ Σ K ρ K†`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<DenseMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<DenseMatrix>) -> Result<Self> {
        let Some(first) = ops.first() else {
            return invalid("a channel needs at least one Kraus operator");
        };
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if ops.iter().any(|k| k.rows() != out_dim || k.cols() != in_dim) {
            return invalid("Kraus operators must share one shape");
        }
        let mut sum = Array2::<C64>::zeros((in_dim, in_dim));
        for k in &ops {
            sum += &dagger(&k.as_array().view()).dot(k.as_array());
        }
        let deviation = (&sum - &Array2::<C64>::eye(in_dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > CPTP_TOL {
            return invalid(format!("Kraus operators are not trace preserving (deviation {deviation:.3e})"));
        }
        Ok(Self { ops })
    }

    pub fn identity(dim: usize) -> Self {
        Self { ops: vec![DenseMatrix::identity(dim)] }
    }

    /// `ρ ↦ tr(ρ)·1/2` on a qubit, from the four Pauli operators.
    pub fn fully_depolarizing_qubit() -> Self {
        let half = C64::new(0.5, 0.0);
        let ops =
            [DenseMatrix::identity(2), crate::models::pauli_x(), crate::models::pauli_y(), crate::models::pauli_z()]
                .into_iter()
                .map(|p| p.scaled(half))
                .collect();
        Self { ops }
    }

    /// `ρ ↦ tr(ρ)|φ⟩⟨φ|` for a unit vector `φ`.
    pub fn replacement(target: &[C64]) -> Result<Self> {
        let norm: f64 = target.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > CPTP_TOL {
            return invalid("replacement target must be normalized");
        }
        let d = target.len();
        let ops = (0..d)
            .map(|i| {
                let mut k = Array2::zeros((d, d));
                for (row, &amp) in target.iter().enumerate() {
                    k[[row, i]] = amp;
                }
                DenseMatrix::from_array(k)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops)
    }

    pub fn kraus_ops(&self) -> &[DenseMatrix] {
        &self.ops
    }

    pub fn input_dim(&self) -> usize {
        self.ops[0].cols()
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &Array2<C64>) -> Array2<C64> {
        let mut out = Array2::zeros((self.ops[0].rows(), self.ops[0].rows()));
        for k in &self.ops {
            let k = k.as_array();
            out += &k.dot(rho).dot(&dagger(&k.view()));
        }
        out
    }

    /// Heisenberg-picture action `Σ K† X K`.
    pub fn adjoint(&self, x: &Array2<C64>) -> Array2<C64> {
        let mut out = Array2::zeros((self.input_dim(), self.input_dim()));
        for k in &self.ops {
            let k = k.as_array();
            out += &dagger(&k.view()).dot(x).dot(k);
        }
        out
    }
}

fn check_observable(ch: &KrausChannel, h: &DenseMatrix) -> Result<()> {
    if h.rows() != ch.input_dim() || h.cols() != ch.input_dim() || ch.ops[0].rows() != ch.input_dim() {
        return invalid("channel and Hamiltonian dimensions differ");
    }
    if !h.is_hermitian(HERMITIAN_TOL) {
        return invalid("Hamiltonian is not Hermitian");
    }
    Ok(())
}

/// `‖H − E*(H)‖∞`: the largest energy change the channel can cause in
/// either direction, `sup_ρ |tr(E(ρ)H) − tr(ρH)|`.
pub fn channel_energy_cost(ch: &KrausChannel, h: &DenseMatrix) -> Result<f64> {
    check_observable(ch, h)?;
    let diff = h.as_array() - &ch.adjoint(h.as_array());
    let herm = (&diff + &dagger(&diff.view())).mapv(|z| z * 0.5);
    let vals = eigvalsh_array(&herm)?;
    Ok(vals[0].abs().max(vals[vals.len() - 1].abs()))
}

/// `tr(E(ρ)H) − tr(ρH)` for one density matrix.
pub fn channel_energy_change(ch: &KrausChannel, h: &DenseMatrix, rho: &Array2<C64>) -> Result<f64> {
    check_observable(ch, h)?;
    let h = h.as_array();
    let before: C64 = rho.dot(h).diag().sum();
    let after: C64 = ch.apply(rho).dot(h).diag().sum();
    Ok((after - before).re)
}

/// `2‖V_AB‖∞`, the largest energy a state product across the cut can cost
/// relative to the ground state through the coupling alone.
pub fn naive_protocol_bound(h: &LocalHamiltonian) -> Result<f64> {
    Ok(2.0 * interaction_norm(h)?)
}
