//! Verification reports, check dispatch and the desk suite.

pub mod checks;
pub mod describe;
pub mod suite;
pub mod types;

pub use types::{pairs, residuals, VerificationReport, SCHEMA_VERSION};
pub use suite::{run_suite, RunDocument};
