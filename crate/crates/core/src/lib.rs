//! Split and normed composition algebras, the 2×2 matrix representation of
//! K'⊕K over K'⊗K, and the rotation and boost generators it supports.

pub mod cli;
pub mod clifford;
pub mod composition_algebra;
pub mod error;
pub mod matrix_rep;
pub mod scalar;
pub mod spin_action;
pub mod tensor_algebra;
pub mod tolerances;

pub use error::{Error, Result};
