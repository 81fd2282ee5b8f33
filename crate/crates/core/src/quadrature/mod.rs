//! Slice quadrature, second-kind and weighted norms, the reduced volume
//! integral, and a Monte Carlo volume oracle.

mod monte_carlo;
mod norms;
mod rule;

pub use monte_carlo::{
    slice_embedded_norm_sq_mc, uniform_points, volume_integral_mc, volume_norm_sq_mc, McConfig, McEstimate,
    Welford, MIN_SAMPLES,
};
pub use norms::{
    delta_volume_norm_sq_reduced, inner_product, norm_sq_on, slice_integral, slice_norm, slice_norm_sq,
    truncation_extent, volume_norm_sq_reduced, weighted_slice_norm_sq, RuleParams, WeightId,
    DEFAULT_DECAY_EXPONENT, DIVERGENCE_RATIO, LAMBDA, MIN_HALF_PLANE_EXTENT, TAIL_TOLERANCE,
};
pub use rule::{
    build_rule, gauss_legendre, integrate_slice, pairwise_sum, pairwise_sum_f64, QuadratureRule, Region,
    HALF_PLANE_SCALE,
};
