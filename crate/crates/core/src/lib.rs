//! Exact computations with structure constants of finite-dimensional algebras:
//! the change-of-basis action, weight gradings and their truncations,
//! degeneration certificates and the level-one classification.

pub mod action;
pub mod algebras;
pub mod catalog;
pub mod degen;
pub mod error;
pub mod field;
pub mod grading;
pub mod linalg;
pub mod modspan;
pub mod poly;
pub mod tensor;

pub use action::{act, BasisChange};
pub use degen::{classify, ClassificationLabel, DegenerationVerdict, VerdictKind};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use grading::WeightVector;
pub use tensor::StructureVector;
