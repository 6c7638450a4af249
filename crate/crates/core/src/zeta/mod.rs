//! Local zeta functions, measure calibration and functional-equation verifiers.

pub mod chart;
pub mod engine;
pub mod fibered;
pub mod quadrature;
pub mod series;
pub mod test_function;
pub mod verify;

pub use engine::{local_zeta, zeta_distribution, zeta_vector, ZetaVector};
pub use quadrature::{QuadratureSpec, Scheme};
pub use test_function::{make_test_function, TestFunction, TestKind};
