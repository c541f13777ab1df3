//! Certified higher order Turán and order-two Laguerre inequalities for the
//! root sequences of P-recursive sequences.

pub mod error;
pub mod certify;
pub mod exact;
pub mod inequality;
pub mod interval;
pub mod logexpr;
pub mod oeis;
pub mod roots;
pub mod sequence;
pub mod specio;

pub use error::*;
pub use exact::{poly_gcd, rat, ratfunc_simplify, ratio, Polynomial, Rational, RationalFunction};
