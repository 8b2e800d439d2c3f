//! Exact polyharmonic analysis on the Thurston geometries Sol, Nil, SL2~,
//! H²×R and S²×R.
//!
//! Functions live in a term algebra of polynomial-exponential sums with
//! Gaussian-rational coefficients ([`algebra`]). Each geometry's
//! Laplace–Beltrami operator τ acts on it exactly ([`geometry`]), so
//! `τ^r(f) = 0` is decided by structural comparison and the proper
//! harmonicity degree of an expression is computed without rounding
//! ([`analysis`]). On top sit constructors for explicit r-harmonic families
//! ([`families`]), an exact nullspace solver ([`linalg`]), a finite-difference
//! oracle ([`numeric`]), a text format ([`textio`]) and the command-line
//! front end ([`cli`]).

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod families;
pub mod geometry;
pub mod linalg;
pub mod numeric;
pub mod textio;

pub use algebra::{Expression, GaussianRational, Term, TermKey, Var, DEFAULT_TERM_CAP};
pub use analysis::{harmonicity_degree, is_r_harmonic, Degree, DegreeReport, DEFAULT_MAX_R};
pub use error::{Error, Result};
pub use families::{FamilyResult, PredictionStatus};
pub use geometry::{euclidean_laplacian_2d, kappa, tau, tau_iter, GeometryId, Notation};
