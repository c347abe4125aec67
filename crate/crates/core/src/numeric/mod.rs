//! Exact arithmetic substrate: arbitrary-precision rationals, univariate
//! polynomials over the rationals, Sturm-based real root isolation, and
//! comparable real algebraic numbers.
//!
//! Everything in this module is exact. There is no floating point anywhere;
//! root isolation refines rational brackets and equality of algebraic numbers
//! is decided through square-free gcds and interval refinement, never through
//! a numeric tolerance.

mod algebraic;
mod poly;
mod rational;

pub use algebraic::{
    isolate_real_roots, poly_sign_summary, sturm_count_in_window, AlgSpan, AlgebraicReal,
    SignSummary,
};
pub(crate) use algebraic::sign_at_algebraic;
pub use poly::Poly;
pub use rational::{format_ratio, parse_rational, rat, rat_from, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    /// The zero polynomial vanishes everywhere; callers must treat that case
    /// themselves instead of asking for a root list.
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
}
