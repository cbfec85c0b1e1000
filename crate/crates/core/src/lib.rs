//! Exact counting of matrices with prescribed determinant over finite
//! scalar sets, with the additive energies and point-hyperplane incidence
//! tools used to study how those counts grow.

pub mod cli;
pub mod detcount;
pub mod energy;
pub mod error;
pub mod families;
pub mod ground;
pub mod harness;
pub mod incidence;
pub mod matkit;
mod par;
pub mod ring;
pub mod scalar;

pub use detcount::{BigCount, Engine, Limits, SpectrumHistogram};
pub use error::{Error, Result};
pub use families::{generate, FamilyKind, FamilySpec};
pub use ground::GroundSet;
pub use matkit::Matrix;
pub use scalar::{FieldSpec, Prime, Scalar};
