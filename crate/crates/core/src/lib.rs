//! Exact computational invariant theory of finite matrix groups.

pub mod error;
pub mod groups;
pub mod linalg;
pub mod numbers;
pub mod poly;
pub mod polyaction;
pub mod series;
pub mod groth;
pub mod homology;
pub mod csp;

pub use error::{Error, Result};
pub use linalg::{EchelonBasis, Matrix};
pub use poly::Poly;
pub use numbers::{
    CharacterField, CyclotomicField, CyclotomicNumber, Field, FieldSpec, FiniteField, LiftContext, Rational,
    RationalField,
};
