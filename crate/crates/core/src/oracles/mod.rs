//! Closed-form and small exact reference results that the numerics are
//! checked against.

mod ansatz;
mod channel;
mod fermion;
mod overlap;
mod scaling;

pub use ansatz::{
    lagrange_best_fit, lagrange_residual, method1_ansatz, paired_product_state, LagrangeFit, Method1Ansatz,
    LOG_EIGENVALUE_FLOOR,
};
pub use channel::{channel_energy_change, channel_energy_cost, naive_protocol_bound, KrausChannel, CPTP_TOL};
pub use fermion::{fermion_ground_energy, fermion_mode_energies, fermion_product_bound, fermion_spectrum};
pub use overlap::{max_overlap_at_rank, method2_cost, method2_overlap_bound, OverlapAscent};
pub use scaling::{qft_scaling_curve, QftScalingParams, ScalingPoint};
