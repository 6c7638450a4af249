//! Local zeta functions on homogeneous cones.
//!
//! The crate models homogeneous cones through their structure constants and a small
//! catalog of concrete realizations, builds every ingredient of the completed
//! functional equation (gamma matrices, sign characters, Λ factors, the ε-factor)
//! and verifies the identities numerically.

pub mod characters;
pub mod cone;
pub mod error;
pub mod report;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
