//! Gamma-function machinery: log-gamma, Gindikin gamma, Λ factors, reflection and
//! duplication, the half-gamma ratio and the τ transforms.

pub mod gamma;
pub mod spectral;

pub use gamma::{gamma, gamma_real, gamma_vector, ln_gamma, near_pole, rgamma, POLE_GUARD};
pub use spectral::{
    component_sum, gindikin_gamma, half_gamma_ratio, lambda_matrix, reflection_duplication, tau_transform, tau_transform_q,
    Direction, SpectralPoint,
};
