//! Operator entropy functionals over dense complex Hermitian matrices, with
//! seeded instance generators and property-based certification suites for a
//! family of operator inequalities (Jensen refinements, natural power mean
//! subadditivity, relative operator entropy bounds and their corollaries).

pub mod entropy;
pub mod error;
pub mod gen;
pub mod matrix;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use matrix::{HermitianMatrix, OrderVerdict, SpectralDecomposition, ToleranceConfig};
pub use scalar::ScalarFunction;
