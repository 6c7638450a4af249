//! Sign characters κ_a, the orthogonal basis J, gamma matrices A(α), their
//! diagonalization, the ε-factor, determinants and σ-induced orders.

pub mod basis;
pub mod gamma_matrix;
pub mod order;

pub use basis::{build_j, kappa_vector, CharacterBasis};
pub use gamma_matrix::{
    check_det_conjecture, det_conjecture_value, det_gamma_matrix, diagonalize_gamma_matrix, epsilon_factor,
    gamma_matrix_general, gamma_matrix_reduced, predicted_diagonal, q_factor, EpsilonFactor, GammaForm, GammaMatrix,
};
pub use order::{order_map_sigma, reversal_conjugation_check, SigmaOrder};
