//! Exact scalars: rationals, cyclotomic numbers and finite fields.

pub mod cyclotomic;
pub mod field;
pub mod finite_field;
pub mod lift;
pub mod parse;
pub mod rational;

pub use cyclotomic::{cyclotomic_embed, cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use field::{CyclotomicField, Field, FieldSpec, RationalField};
pub use finite_field::{FiniteField, FiniteFieldElement};
pub use lift::{
    brauer_lift, cyclotomic_order, element_order, BrauerLiftContext, CharacterField, Eigenvalues, LiftContext,
};
pub use rational::{format_rational, parse_rational, rat, rat_frac, Rational};
