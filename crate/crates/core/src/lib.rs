//! Exact computations with Lie algebras, left-symmetric algebras and
//! prehomogeneous vector spaces.
//!
//! Everything runs over the rationals. Lie algebras carry dense structure
//! constants, representations carry one action matrix per basis vector, and
//! every positive claim (a generic point, a right identity, a Frobenius
//! functional) comes with data that can be re-checked independently.

pub mod castling;
pub mod catalog;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod lsa;
pub mod prehom;
pub mod repr;
pub mod symplectic;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
