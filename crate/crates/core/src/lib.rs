//! Exact construction and verification of the equation systems of the polar
//! varieties V(k) and W(d), the diptych varieties with de <= 4, and the
//! parallel-unprojection key variety W in 16 variables.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every check is either a symbolic identity, an ideal membership certified
//! by a Groebner basis, or vanishing at exact rational points.

pub mod diptych;
pub mod error;
pub mod export;
pub mod groebner;
pub mod matrix;
pub mod polar;
pub mod ring;
pub mod sample;
pub mod smallcases;
pub mod system;

pub use error::{Error, Result};
pub use ring::{Monomial, Polynomial, Rational, RationalPoint, Substitution, VarTable};
pub use system::EquationSystem;
