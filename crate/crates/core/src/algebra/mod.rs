//! Exact term algebra.
//!
//! Every function handled by the crate is a finite sum of
//! `c · u^a v^b t^d · e^(p·u + q·v + s·t)` with Gaussian-rational `c, p, q, s`.
//! The span of these basis functions is a ring, closed under partial
//! differentiation and under multiplication by the operator coefficients of
//! all five geometries.

mod expr;
mod gaussian;

pub use expr::{Expression, Term, TermKey, Var, DEFAULT_TERM_CAP};
pub(crate) use gaussian::fmt_rational_explicit;
pub use gaussian::GaussianRational;
