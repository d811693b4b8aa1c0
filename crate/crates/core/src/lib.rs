//! Exact computer algebra for binary forms and the rings they parametrize.
//!
//! * [`exactalg`]: sparse polynomials over ℤ and matrices over them.
//! * [`forms`]: binary forms, the GL₂(ℤ) action, discriminants.
//! * [`arithmat`]: arithmetic matrices and element arithmetic in the order of a form.
//! * [`param`]: the change-of-basis matrices relating the rings of `B` and `B∘M`.
//! * [`verify`]: symbolic certification of the parametrization identity and quartic covariants.

pub mod arithmat;
pub mod error;
pub mod serde_int;
pub mod exactalg;
pub mod forms;
pub mod param;
pub mod verify;

pub use error::Error;
pub use exactalg::{IntMatrix, Matrix, PolyMatrix, Polynomial, Scalar, Variable};
