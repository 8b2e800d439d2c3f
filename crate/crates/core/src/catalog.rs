//! The example catalog replayed by `polyharm verify-paper`.
//!
//! A catalog is a TOML file of `[[case]]` records. Each case names a geometry,
//! gives either an expression (`expr`) or a constructor call (`[case.family]`),
//! and states the expected harmonicity degree, whether the function is proper,
//! and a mandatory `citation` describing where the claim comes from:
//!
//! ```toml
//! [[case]]
//! id = "nil-monomial-1-3-7"
//! geometry = "nil"
//! expected_degree = 10
//! expected_proper = true
//! citation = "Nil monomial x y^3 t^7, proper 10-harmonic"
//! [case.family]
//! name = "nil-monomial"
//! m = 1
//! n = 3
//! alpha = 7
//! ```
//!
//! Coefficient lists are strings in the expression grammar (`"3/8"`, `"1 + 2*i"`);
//! polynomial parameters are expressions (`poly = "t^3"`, `f = "z^2"`).

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Expression, GaussianRational, Var};
use crate::analysis::{harmonicity_degree, Degree};
use crate::error::{Error, Result};
use crate::families::{self, FamilyResult, PredictionStatus, Sl2Axis, SolAxis};
use crate::geometry::{GeometryId, Notation};
use crate::numeric::cross_check_within;
use crate::textio::{parse, parse_with};

/// The catalog shipped with the crate.
pub const BUILTIN_CATALOG: &str = include_str!("../catalog/examples.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    X,
    #[default]
    Y,
}

/// A constructor invocation, shared by catalog records and the `family` command.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum FamilyCall {
    SolHarmonic {
        n: u32,
        #[serde(default)]
        axis: AxisName,
        #[serde(default)]
        linear_factor: bool,
    },
    SolPoly {
        m: u32,
        n: u32,
    },
    #[serde(rename = "sol-Fr", alias = "sol-fr")]
    SolFr {
        r: u32,
        a: Vec<String>,
        b: Vec<String>,
    },
    SolProduct {
        a: Vec<String>,
        b: Vec<String>,
    },
    NilProduct {
        h1: String,
        d: u32,
        alpha: u32,
        #[serde(default)]
        lenient: bool,
    },
    NilMonomial {
        m: u32,
        n: u32,
        alpha: u32,
    },
    #[serde(rename = "nil-B", alias = "nil-b")]
    NilB {
        b: Vec<String>,
    },
    Sl2Axis {
        poly: String,
        axis: AxisName,
    },
    Sl2F2 {
        b: Vec<String>,
    },
    /// `(f(z) + g(z̄)) · P(t)`; the geometry comes from the caller.
    ProductSpace {
        f: String,
        g: String,
        p: String,
        r: u32,
    },
}

/// Parses a constant such as `"-3/8"` or `"(1 + i)/2"`.
pub fn parse_constant(src: &str) -> Result<GaussianRational> {
    let e = parse(src)?;
    if e.is_zero() {
        return Ok(GaussianRational::default());
    }
    let constant = match e.iter().next() {
        Some((k, c)) if e.len() == 1 && k.is_constant() => Some(c.clone()),
        _ => None,
    };
    constant.ok_or_else(|| Error::InvalidParameter(format!("'{src}' is not a constant")))
}

fn constants<const N: usize>(what: &str, srcs: &[String]) -> Result<[GaussianRational; N]> {
    if srcs.len() != N {
        return Err(Error::DimensionMismatch(format!(
            "{what} needs {N} coefficients, got {}",
            srcs.len()
        )));
    }
    let v = srcs
        .iter()
        .map(|s| parse_constant(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(v.try_into().expect("length checked"))
}

/// Coefficients `[c_0, …, c_k]` of a polynomial in a single variable.
pub fn poly_coefficients(f: &Expression, var: Var) -> Result<Vec<GaussianRational>> {
    let mut out = Vec::new();
    for (k, c) in f.iter() {
        let pure = k.is_polynomial() && Var::ALL.iter().all(|&w| w == var || k.power(w) == 0);
        if !pure {
            return Err(Error::InvalidParameter(format!(
                "expected a polynomial in {var} alone"
            )));
        }
        let n = k.power(var) as usize;
        if out.len() <= n {
            out.resize(n + 1, GaussianRational::default());
        }
        out[n] = c.clone();
    }
    Ok(out)
}

impl FamilyCall {
    /// Command-line name of the family.
    pub fn id(&self) -> &'static str {
        match self {
            FamilyCall::SolHarmonic { .. } => "sol-harmonic",
            FamilyCall::SolPoly { .. } => "sol-poly",
            FamilyCall::SolFr { .. } => "sol-Fr",
            FamilyCall::SolProduct { .. } => "sol-product",
            FamilyCall::NilProduct { .. } => "nil-product",
            FamilyCall::NilMonomial { .. } => "nil-monomial",
            FamilyCall::NilB { .. } => "nil-B",
            FamilyCall::Sl2Axis { .. } => "sl2-axis",
            FamilyCall::Sl2F2 { .. } => "sl2-f2",
            FamilyCall::ProductSpace { .. } => "product-space",
        }
    }

    /// Runs the constructor. `geometry` is only consulted by `product-space`.
    pub fn build(&self, geometry: GeometryId, cap: usize) -> Result<FamilyResult> {
        match self {
            FamilyCall::SolHarmonic {
                n,
                axis,
                linear_factor,
            } => {
                let axis = match axis {
                    AxisName::Y => SolAxis::YMajor,
                    AxisName::X => SolAxis::XMajor,
                };
                Ok(families::sol_harmonic(*n, axis, *linear_factor))
            }
            FamilyCall::SolPoly { m, n } => families::sol_polyharmonic(*m, *n, cap),
            FamilyCall::SolFr { r, a, b } => {
                families::sol_example_fr(*r, &constants::<4>("a", a)?, &constants::<4>("b", b)?)
            }
            FamilyCall::SolProduct { a, b } => {
                let [a2, a3] = constants::<2>("a", a)?;
                let [b2, b3] = constants::<2>("b", b)?;
                families::sol_example_product(&a2, &a3, &b2, &b3)
            }
            FamilyCall::NilProduct {
                h1,
                d,
                alpha,
                lenient,
            } => {
                let h1 = parse_with(h1, Notation::Real)?;
                if *lenient {
                    families::nil_product_family_bound(&h1, *d, *alpha)
                } else {
                    families::nil_product_family(&h1, *d, *alpha)
                }
            }
            FamilyCall::NilMonomial { m, n, alpha } => {
                Ok(families::nil_monomial_family(*m, *n, *alpha))
            }
            FamilyCall::NilB { b } => families::nil_biharmonic_b(&constants::<12>("b", b)?),
            FamilyCall::Sl2Axis { poly, axis } => {
                let p = poly_coefficients(&parse_with(poly, Notation::Real)?, Var::T)?;
                let axis = match axis {
                    AxisName::X => Sl2Axis::X,
                    AxisName::Y => Sl2Axis::Y,
                };
                families::sl2_axis_family(&p, axis)
            }
            FamilyCall::Sl2F2 { b } => families::sl2_example_f2(&constants::<6>("b", b)?),
            FamilyCall::ProductSpace { f, g, p, r } => {
                let f = poly_coefficients(&parse_with(f, Notation::Complex)?, Var::U)?;
                let g = poly_coefficients(&parse_with(g, Notation::Complex)?, Var::V)?;
                let mut p = poly_coefficients(&parse_with(p, Notation::Real)?, Var::T)?;
                let len = 2 * *r as usize;
                if p.len() > len {
                    return Err(Error::DimensionMismatch(format!(
                        "P has degree {} but r = {r} allows at most {}",
                        p.len() - 1,
                        len.saturating_sub(1)
                    )));
                }
                p.resize(len, GaussianRational::default());
                families::product_space_family(geometry, &f, &g, &p, *r)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogCase {
    pub id: String,
    pub geometry: GeometryId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyCall>,
    pub expected_degree: u32,
    pub expected_proper: bool,
    pub citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(rename = "case", default)]
    cases: Vec<CatalogCase>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid TOML: {0}")]
    Syntax(String),
    #[error("catalog case '{id}': {reason}")]
    Invalid { id: String, reason: String },
}

/// Parses and validates a catalog: ids are unique, citations non-empty, and
/// each case has exactly one of `expr` and `family`.
pub fn load_catalog(text: &str) -> std::result::Result<Vec<CatalogCase>, CatalogError> {
    let file: CatalogFile =
        toml::from_str(text).map_err(|e| CatalogError::Syntax(e.to_string()))?;
    let mut seen = HashSet::new();
    for case in &file.cases {
        let invalid = |reason: &str| CatalogError::Invalid {
            id: case.id.clone(),
            reason: reason.to_string(),
        };
        if !seen.insert(case.id.as_str()) {
            return Err(invalid("duplicate id"));
        }
        if case.citation.trim().is_empty() {
            return Err(invalid("citation is empty"));
        }
        if case.expr.is_some() == case.family.is_some() {
            return Err(invalid("exactly one of expr and family is required"));
        }
    }
    Ok(file.cases)
}

/// Settings shared by every case of a verification run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub max_r: u32,
    pub term_cap: usize,
    pub seed: u64,
    pub fd_step: f64,
    pub fd_tol: f64,
    /// Finite-difference points per case; 0 skips the numeric check.
    pub points: usize,
    /// Half-width of the sampling box for the finite-difference check.
    pub radius: f64,
}

/// Default sampling half-width for catalog cases.
///
/// Several catalog functions carry `e^{±6t}` factors, and the stencil's
/// round-off grows like `ε·|f|/h²`; harmonic cases, whose symbolic τ is 0,
/// see that floor as absolute error. A quarter box keeps it near `1e-8`.
pub const CATALOG_SAMPLE_RADIUS: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub geometry: GeometryId,
    pub citation: String,
    pub expected_degree: u32,
    pub expected_proper: bool,
    pub computed_degree: Option<u32>,
    pub computed_proper: Option<bool>,
    pub predicted_degree: Option<u32>,
    pub prediction_status: Option<PredictionStatus>,
    pub max_rel_error: Option<f64>,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// FNV-1a, so every case draws its own reproducible point stream.
fn case_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn run_case(case: &CatalogCase, cfg: &VerifyConfig) -> CaseOutcome {
    let mut out = CaseOutcome {
        id: case.id.clone(),
        geometry: case.geometry,
        citation: case.citation.clone(),
        expected_degree: case.expected_degree,
        expected_proper: case.expected_proper,
        computed_degree: None,
        computed_proper: None,
        predicted_degree: None,
        prediction_status: None,
        max_rel_error: None,
        failures: Vec::new(),
        pass: false,
    };
    if let Err(e) = check_case(case, cfg, &mut out) {
        out.failures.push(e.to_string());
    }
    out.pass = out.failures.is_empty();
    out
}

fn check_case(case: &CatalogCase, cfg: &VerifyConfig, out: &mut CaseOutcome) -> Result<()> {
    let g = case.geometry;
    let (expr, family) = match (&case.expr, &case.family) {
        (Some(src), None) => (parse_with(src, g.notation())?, None),
        (None, Some(call)) => {
            let fam = call.build(g, cfg.term_cap)?;
            if fam.geometry != g {
                out.failures.push(format!(
                    "constructor lives on {}, case says {g}",
                    fam.geometry
                ));
            }
            out.predicted_degree = Some(fam.predicted_degree);
            out.prediction_status = Some(fam.prediction_status);
            (fam.expr.clone(), Some(fam))
        }
        _ => {
            return Err(Error::InvalidParameter(
                "exactly one of expr and family is required".into(),
            ))
        }
    };

    let report = harmonicity_degree(g, &expr, cfg.max_r, cfg.term_cap)?;
    out.computed_proper = Some(report.proper);
    match report.degree {
        Degree::Exact(r) => {
            out.computed_degree = Some(r);
            if r != case.expected_degree {
                out.failures.push(format!(
                    "degree: expected {}, computed {r}",
                    case.expected_degree
                ));
            }
            if let Some(fam) = &family {
                if !fam.agrees_with(r) {
                    out.failures.push(format!(
                        "prediction {} ({:?}) does not match computed {r}",
                        fam.predicted_degree, fam.prediction_status
                    ));
                }
            }
        }
        Degree::Exceeded(m) => out.failures.push(format!("degree exceeds {m}")),
    }
    if report.proper != case.expected_proper {
        out.failures.push(format!(
            "proper: expected {}, computed {}",
            case.expected_proper, report.proper
        ));
    }

    if cfg.points > 0 {
        let checks = cross_check_within(
            g,
            &expr,
            cfg.points,
            cfg.fd_step,
            cfg.fd_tol,
            case_seed(cfg.seed, &case.id),
            cfg.radius,
        )?;
        let worst = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
        out.max_rel_error = Some(worst);
        if checks.iter().any(|c| !c.within_tol) {
            out.failures.push(format!(
                "finite-difference check: rel_error {worst:.3e} > {:e}",
                cfg.fd_tol
            ));
        }
    }
    Ok(())
}

/// Runs the cases concurrently and returns outcomes sorted by id.
pub fn verify(cases: &[CatalogCase], cfg: &VerifyConfig) -> Vec<CaseOutcome> {
    let mut outcomes: Vec<CaseOutcome> = cases.par_iter().map(|c| run_case(c, cfg)).collect();
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));
    outcomes
}

/// Keeps cases whose geometry name equals `filter` or whose id starts with it.
pub fn select(cases: &[CatalogCase], filter: Option<&str>) -> Vec<CatalogCase> {
    cases
        .iter()
        .filter(|c| filter.is_none_or(|f| c.geometry.name() == f || c.id.starts_with(f)))
        .cloned()
        .collect()
}
