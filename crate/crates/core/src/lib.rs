//! Exact Reidemeister/Milnor-Turaev torsion.
//!
//! * [`exactfield`]: Q, Q(i), Q(t), Q(i)(t) and exact linear algebra.
//! * [`complexes`]: cochain complexes, the torsion isomorphism with Turaev's
//!   sign, tau-chains, long exact sequences and the fusion identity.
//! * [`cellcx`]: cellular complexes over a group ring, twisted cochains and the
//!   Milnor-Turaev torsion with its Euler-structure and orientation laws.
//! * [`maptorus`]: mapping cones of cellular self-maps and Lefschetz zeta functions.

pub mod cellcx;
pub mod complexes;
mod error;
pub mod exactfield;
pub mod maptorus;
pub mod par;
pub mod random;
pub mod sweeps;

pub use error::{Error, Result};
pub use exactfield::{BaseField, ExactMatrix, FieldDescriptor, FieldElement, Poly, Scalar, Vector};
