//! Proper harmonicity degree: the least `r` with `τ^r(f) = 0`.

use std::fmt;

use crate::algebra::Expression;
use crate::error::Result;
use crate::geometry::{tau, tau_iter, GeometryId};

/// Default iteration bound for [`harmonicity_degree`].
pub const DEFAULT_MAX_R: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Exact(u32),
    /// `τ^r(f) ≠ 0` for every `r` up to the bound.
    Exceeded(u32),
}

impl Degree {
    pub fn exact(self) -> Option<u32> {
        match self {
            Degree::Exact(r) => Some(r),
            Degree::Exceeded(_) => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Exact(r) => write!(f, "{r}"),
            Degree::Exceeded(m) => write!(f, "Exceeded({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub degree: Degree,
    /// True iff `degree = Exact(r)` with `r ≥ 1`.
    pub proper: bool,
    /// Term counts of `τ^0(f), τ^1(f), …` up to the last nonzero iterate.
    pub chain: Vec<usize>,
    /// `τ^{r-1}(f)` for an exact degree `r ≥ 1`; the last iterate computed when exceeded.
    pub witness: Option<Expression>,
}

/// Applies τ until the iterate vanishes or `max_r` applications are spent.
///
/// The zero function has degree 0 and is not proper.
pub fn harmonicity_degree(
    g: GeometryId,
    f: &Expression,
    max_r: u32,
    cap: usize,
) -> Result<DegreeReport> {
    if f.is_zero() {
        return Ok(DegreeReport {
            degree: Degree::Exact(0),
            proper: false,
            chain: Vec::new(),
            witness: None,
        });
    }
    let mut chain = Vec::new();
    let mut cur = f.clone();
    for r in 1..=max_r {
        chain.push(cur.len());
        let next = tau(g, &cur, cap).map_err(|e| e.with_iteration(r))?;
        if next.is_zero() {
            return Ok(DegreeReport {
                degree: Degree::Exact(r),
                proper: true,
                chain,
                witness: Some(cur),
            });
        }
        cur = next;
    }
    Ok(DegreeReport {
        degree: Degree::Exceeded(max_r),
        proper: false,
        chain,
        witness: Some(cur),
    })
}

/// Whether `τ^r(f) = 0` exactly.
pub fn is_r_harmonic(g: GeometryId, f: &Expression, r: u32, cap: usize) -> Result<bool> {
    Ok(tau_iter(g, f, r, cap)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TERM_CAP as CAP;
    use crate::textio::parse;

    fn degree(g: GeometryId, src: &str) -> Degree {
        harmonicity_degree(g, &parse(src).unwrap(), DEFAULT_MAX_R, CAP)
            .unwrap()
            .degree
    }

    #[test]
    fn small_degrees() {
        assert_eq!(degree(GeometryId::Sol, "x*y"), Degree::Exact(1));
        assert_eq!(degree(GeometryId::Sol, "exp(t)"), Degree::Exceeded(64));
        assert_eq!(degree(GeometryId::Nil, "x^5*y^2*t^4"), Degree::Exact(8));
        assert_eq!(degree(GeometryId::Nil, "x*y^3*t^7"), Degree::Exact(10));
    }

    #[test]
    fn zero_function() {
        let r = harmonicity_degree(GeometryId::Nil, &Expression::zero(), 5, CAP).unwrap();
        assert_eq!(r.degree, Degree::Exact(0));
        assert!(!r.proper);
        assert!(r.chain.is_empty());
        assert!(is_r_harmonic(GeometryId::Sol, &Expression::zero(), 1, CAP).unwrap());
    }

    #[test]
    fn report_shape() {
        let f = parse("t^4").unwrap();
        let r = harmonicity_degree(GeometryId::Sol, &f, 10, CAP).unwrap();
        assert_eq!(r.degree, Degree::Exact(3));
        assert_eq!(r.chain.len(), 3);
        assert_eq!(r.witness, Some(parse("24").unwrap()));
        let r = harmonicity_degree(GeometryId::Sol, &parse("exp(t)").unwrap(), 7, CAP).unwrap();
        assert_eq!(r.chain.len(), 7);
        assert!(!r.proper);
    }

    #[test]
    fn overflow_reports_iteration() {
        let f = parse("(x + y + t)^6*exp(t)").unwrap();
        let err = harmonicity_degree(GeometryId::Nil, &f, 10, f.len()).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::ExpressionTooLarge {
                iteration: Some(1),
                ..
            }
        ));
    }
}
