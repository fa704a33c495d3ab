//! Bound quiver algebras over exact fields: normal forms, modules, minimal
//! projective resolutions, zeroth Hochschild homology and trace maps, and
//! certificates of infinite homological dimension coming from loops and
//! cycles.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod hochschild;
pub mod lambda;
pub mod linalg;
pub mod module;
pub mod noloop;
pub mod quiver;
pub mod quotient;
pub mod resolution;

pub use error::{Error, Result};
pub use field::{Field, FieldTag, PrimeField, Rationals, Scalar};
pub use linalg::{Matrix, Subspace};
pub use quiver::{Cycle, Path, PathVector, Quiver};
