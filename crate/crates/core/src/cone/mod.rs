//! Cone structure data, catalog realizations, orbit charts and invariant measures.

pub mod graph;
pub mod ingest;
pub mod matrix;
pub mod model;
pub mod multiplier;
pub mod signs;
pub mod structure;

pub use matrix::IntMatrix;
pub use model::{catalog_names, load_catalog_cone, parity_times, solve_mod2, ChartPoint, ConeModel, Realization, Side};
pub use signs::{kappa, ParityVector, SignVector};
pub use structure::{check_completion_condition, derive_constants, ConeStructure};
