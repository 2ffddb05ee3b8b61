//! Exact coefficient arithmetic: rationals, number fields, dense matrices.

mod field;
mod matrix;
mod rational;

pub use field::{FieldElement, NumberField};
pub use matrix::Matrix;
pub use rational::Rational;
