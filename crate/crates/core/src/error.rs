use thiserror::Error;

use crate::algebra::Var;
use crate::geometry::GeometryId;
use crate::textio::ParseError;

/// Errors produced by the algebra, operators, constructors and numeric checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expression grew to {terms} terms, over the cap of {cap}{}", at_iteration(*.iteration))]
    ExpressionTooLarge {
        terms: usize,
        cap: usize,
        /// Index of the τ iteration that overflowed, when known.
        iteration: Option<u32>,
    },

    #[error("expression depends on t")]
    DependsOnT,

    #[error("tau of basis element {index} has a component outside the basis span")]
    EscapesBasis { index: usize },

    #[error("basis element {index} is repeated")]
    DuplicateBasis { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no nullspace vector of tau^r has a nonzero leading coefficient")]
    NoProperSolution,

    #[error("all family parameters are zero")]
    ZeroFamily,

    #[error("input is not harmonic for the Euclidean Laplacian")]
    NotHarmonic,

    #[error("derivative of order {order} along {axis} vanishes identically")]
    DerivativeVanishes { order: u32, axis: Var },

    #[error("top coefficients (b_{{2r-2}}, b_{{2r-1}}) of P are both zero")]
    DegreeConditionViolated,

    #[error("constructor is not defined on {0}")]
    UnsupportedGeometry(GeometryId),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn at_iteration(iteration: Option<u32>) -> String {
    match iteration {
        Some(k) => format!(" at iteration {k}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn with_iteration(self, k: u32) -> Self {
        match self {
            Error::ExpressionTooLarge { terms, cap, .. } => Error::ExpressionTooLarge {
                terms,
                cap,
                iteration: Some(k),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
