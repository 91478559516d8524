//! Representations of bound quiver algebras over prime fields, their
//! homological invariants, and extension-dimension bounds.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod extdim;
pub mod homology;
pub mod linalg;
pub mod par;
pub mod rep;

pub use algebra::{injective, projective, simple, AlgebraSpec, PathAlgebra};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rep::{decompose, hom_space, is_iso, DimensionVector, Morphism, Representation};
