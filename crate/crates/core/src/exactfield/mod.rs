//! Exact arithmetic over Q, Q(i) and one transcendental, plus exact linear algebra.

mod element;
pub mod literal;
mod matrix;
mod poly;
mod scalar;

pub use element::{BaseField, FieldDescriptor, FieldElement};
pub use matrix::{column_echelon, ExactMatrix, Vector};
pub use poly::Poly;
pub use scalar::Scalar;
