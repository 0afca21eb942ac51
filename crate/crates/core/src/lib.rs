//! Exact exterior calculus for parallel forms on flat models of G₂,
//! Spin(7) and Calabi–Yau geometry, together with cone/cylinder
//! differential graded algebras and Lie-algebra-valued forms.

pub mod blade;
pub mod cone;
pub mod error;
pub mod form;
pub mod gauge;
pub mod holonomy;
pub mod kahler;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod polyform;
pub mod random;
pub mod report;
pub mod scalar;
pub mod verifier;

pub use blade::Blade;
pub use error::{Error, Result};
pub use form::{derivation_extend, ConstForm, DerivationSpec};
pub use scalar::{Rational, Scalar};
