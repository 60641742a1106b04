//! Energy/entanglement trade-off sampling: imaginary-time evolution,
//! Schmidt sharpening, Pareto fronts and entanglement temperatures.

mod near_ground;
mod pareto;
mod sampler;
mod sharpen;
mod tebd;

pub use near_ground::{boost_top_weight, near_ground_coefficients, NearGroundCoefficients, DEGENERACY_TOL};
pub use pareto::{
    ent_temperature, pareto_front, power_law_fit, power_law_fit_in, ParetoFront, TradeoffPoint, NEAR_GROUND_WINDOW,
};
pub use sampler::{sample_tradeoff, SamplerConfig, ENERGY_TOL};
pub use sharpen::sharpen;
pub use tebd::{find_ground, imaginary_step, GroundSearch};
