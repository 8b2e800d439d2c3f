//! Constructors for explicit r-harmonic families on each geometry.
//!
//! Every constructor returns the expression together with the degree it is
//! expected to have and how firm that expectation is:
//!
//! * [`PredictionStatus::Certified`]: the family is proper of exactly that degree.
//! * [`PredictionStatus::UpperBound`]: the family is r-harmonic, but some
//!   parameter choices drop to a lower degree.
//! * [`PredictionStatus::PaperInconsistent`]: the stated degree formula
//!   disagrees with the worked examples; the predicted value is the one the
//!   examples support and the alternative is kept in the source string.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Expression, GaussianRational, Term, TermKey, Var};
use crate::analysis::{harmonicity_degree, DegreeReport};
use crate::error::{Error, Result};
use crate::geometry::{euclidean_laplacian_2d, GeometryId};
use crate::linalg::{from_coordinates, matrix_of_tau, nullspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PredictionStatus {
    Certified,
    UpperBound,
    PaperInconsistent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyResult {
    pub geometry: GeometryId,
    pub expr: Expression,
    pub predicted_degree: u32,
    pub prediction_source: String,
    pub prediction_status: PredictionStatus,
}

impl FamilyResult {
    /// Whether a computed degree is compatible with the prediction.
    pub fn agrees_with(&self, computed: u32) -> bool {
        match self.prediction_status {
            PredictionStatus::UpperBound => computed <= self.predicted_degree,
            PredictionStatus::Certified | PredictionStatus::PaperInconsistent => {
                computed == self.predicted_degree
            }
        }
    }

    /// Runs the degree engine with a bound comfortably above the prediction.
    pub fn certify(&self, cap: usize) -> Result<DegreeReport> {
        harmonicity_degree(self.geometry, &self.expr, self.predicted_degree + 2, cap)
    }
}

/// Which coordinate carries the polynomial part in the Sol harmonic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolAxis {
    /// `Σ c_k y^{n-2k} e^{2kt}`.
    YMajor,
    /// `Σ c_k x^{n-2k} e^{-2kt}`.
    XMajor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Axis {
    X,
    Y,
}

fn q(n: i64) -> GaussianRational {
    GaussianRational::from(n)
}

fn zero() -> GaussianRational {
    GaussianRational::zero()
}

fn x() -> Expression {
    Expression::var(Var::U)
}

fn y() -> Expression {
    Expression::var(Var::V)
}

fn t_pow(d: u32) -> Expression {
    Expression::monomial(0, 0, d)
}

fn e_t(s: i64) -> Expression {
    Expression::exponential(zero(), zero(), q(s))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn all_zero(cs: &[GaussianRational]) -> bool {
    cs.iter().all(Zero::is_zero)
}

fn linear_combination(coeffs: &[GaussianRational], parts: &[Expression]) -> Expression {
    coeffs.iter().zip(parts).map(|(c, p)| p.scale(c)).sum()
}

/// `(-1)^k / (4^k (k!)²) · n!/(n-2k)!`, the coefficient of the `k`-th
/// correction in the Sol harmonic family (with leading coefficient 1).
pub fn sol_harmonic_coefficient(n: u32, k: u32) -> GaussianRational {
    assert!(2 * k <= n, "k out of range");
    let num = factorial(n) / factorial(n - 2 * k);
    let f = factorial(k);
    let den = BigInt::from(4).pow(k) * &f * &f;
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    GaussianRational::real(BigRational::new(num * sign, den))
}

/// Harmonic functions on Sol built from a single power `y^n` (or `x^n`).
///
/// `YMajor` gives `Σ_k c_k y^{n-2k} e^{2kt}`; `XMajor` swaps the roles of `x`
/// and `y` and replaces `t` by `-t`. With `linear_factor` the sum is
/// multiplied by the other coordinate, which τ treats as a constant.
pub fn sol_harmonic(n: u32, axis: SolAxis, linear_factor: bool) -> FamilyResult {
    let (main, other, sign) = match axis {
        SolAxis::YMajor => (Var::V, x(), 1),
        SolAxis::XMajor => (Var::U, y(), -1),
    };
    let mut raw = Vec::new();
    for k in 0..=n / 2 {
        let mut key = TermKey::monomial(0, 0, 0).with_exp(zero(), zero(), q(2 * sign * k as i64));
        match main {
            Var::U => key.a = n - 2 * k,
            _ => key.b = n - 2 * k,
        }
        raw.push(Term::new(sol_harmonic_coefficient(n, k), key));
    }
    let mut expr = Expression::normalize(raw);
    if linear_factor {
        expr = &expr * &other;
    }
    FamilyResult {
        geometry: GeometryId::Sol,
        expr,
        predicted_degree: 1,
        prediction_source: "Sol: sum of c_k y^(n-2k) e^(2kt) with c_k = (-1)^k/(4^k (k!)^2) n!/(n-2k)! is proper harmonic".into(),
        prediction_status: PredictionStatus::Certified,
    }
}

/// Ansatz basis `x^{m-2i} y^{n-2j} e^{2t(j-i)}`, ordered by `(i, j)`.
pub fn sol_ansatz_basis(m: u32, n: u32) -> Vec<TermKey> {
    let mut basis = Vec::new();
    for i in 0..=m / 2 {
        for j in 0..=n / 2 {
            basis.push(TermKey::monomial(m - 2 * i, n - 2 * j, 0).with_exp(
                zero(),
                zero(),
                q(2 * (j as i64 - i as i64)),
            ));
        }
    }
    basis
}

/// Degree `min(⌊m/2⌋, ⌊n/2⌋) + 1` supported by the worked Sol examples.
pub fn sol_polyharmonic_degree(m: u32, n: u32) -> u32 {
    (m / 2).min(n / 2) + 1
}

/// A proper polyharmonic function on Sol with leading term `x^m y^n`.
///
/// τ maps the ansatz span to itself, so the smallest `r` for which `ker τ^r`
/// contains a vector with nonzero `x^m y^n` coordinate is the proper degree.
/// That vector is taken from the reduced echelon nullspace basis, scaled to a
/// leading coefficient of 1; the remaining free coordinates stay 0.
pub fn sol_polyharmonic(m: u32, n: u32, cap: usize) -> Result<FamilyResult> {
    let basis = sol_ansatz_basis(m, n);
    let tau_m = matrix_of_tau(GeometryId::Sol, &basis, cap)?;
    let mut power = tau_m.clone();
    for r in 1..=basis.len() as u32 {
        if let Some(v) = nullspace(&power).into_iter().find(|v| !v[0].is_zero()) {
            let lead = v[0].inv().expect("nonzero");
            let v: Vec<GaussianRational> = v.iter().map(|c| c * &lead).collect();
            let predicted = sol_polyharmonic_degree(m, n);
            return Ok(FamilyResult {
                geometry: GeometryId::Sol,
                expr: from_coordinates(&v, &basis),
                predicted_degree: predicted,
                prediction_source: format!(
                    "Sol: x^m y^n + lower terms; worked examples give min(m/2, n/2) + 1 = {predicted} \
                     (nullspace construction reached r = {r}); the stated formula min(m/2, n/2) + 2 gives {}",
                    predicted + 1
                ),
                prediction_status: PredictionStatus::PaperInconsistent,
            });
        }
        power = power.mul(&tau_m)?;
    }
    Err(Error::NoProperSolution)
}

/// `F_r = t^{2r} f_1(x, y) + t^{2r+1} f_2(x, y)` with
/// `f_1 = a_1 + a_2 x + a_3 y + a_4 xy` and `f_2` likewise from `b`.
pub fn sol_example_fr(
    r: u32,
    a: &[GaussianRational; 4],
    b: &[GaussianRational; 4],
) -> Result<FamilyResult> {
    if all_zero(a) && all_zero(b) {
        return Err(Error::ZeroFamily);
    }
    let basis = [Expression::one(), x(), y(), &x() * &y()];
    let f1 = linear_combination(a, &basis);
    let f2 = linear_combination(b, &basis);
    let expr = &(&t_pow(2 * r) * &f1) + &(&t_pow(2 * r + 1) * &f2);
    Ok(FamilyResult {
        geometry: GeometryId::Sol,
        expr,
        predicted_degree: r + 1,
        prediction_source: "Sol: F_r = t^(2r) f_1 + t^(2r+1) f_2 is proper (r+1)-harmonic".into(),
        prediction_status: PredictionStatus::Certified,
    })
}

/// `H = h_2 · h_3` with
/// `h_2 = a_2(2x² − e^{−2t}) + a_3(2x³ − 3x e^{−2t})` and
/// `h_3 = b_2(2y² − e^{2t}) + b_3(2y³ − 3y e^{2t})`.
pub fn sol_example_product(
    a2: &GaussianRational,
    a3: &GaussianRational,
    b2: &GaussianRational,
    b3: &GaussianRational,
) -> Result<FamilyResult> {
    if (a2.is_zero() && a3.is_zero()) || (b2.is_zero() && b3.is_zero()) {
        return Err(Error::ZeroFamily);
    }
    let two = q(2);
    let three = q(3);
    let h2 = &(&x().pow(2).scale(&two) - &e_t(-2)).scale(a2)
        + &(&x().pow(3).scale(&two) - &(&x() * &e_t(-2)).scale(&three)).scale(a3);
    let h3 = &(&y().pow(2).scale(&two) - &e_t(2)).scale(b2)
        + &(&y().pow(3).scale(&two) - &(&y() * &e_t(2)).scale(&three)).scale(b3);
    Ok(FamilyResult {
        geometry: GeometryId::Sol,
        expr: &h2 * &h3,
        predicted_degree: 2,
        prediction_source: "Sol: H = h_2 h_3 is proper biharmonic".into(),
        prediction_status: PredictionStatus::Certified,
    })
}

/// `H_1(x, y) · x^d · t^α` on Nil for a Euclidean-harmonic `H_1`.
///
/// Certified as proper `(2α + d + 1)`-harmonic when no `x`- or
/// `y`-derivative of `H_1` of order up to `2(2α + d + 1)` vanishes; τ is
/// applied at most that often, so higher orders cannot matter. A vanishing
/// derivative is an error here; see [`nil_product_family_bound`].
pub fn nil_product_family(h1: &Expression, d: u32, alpha: u32) -> Result<FamilyResult> {
    nil_product(h1, d, alpha, true)
}

/// Like [`nil_product_family`], but a vanishing derivative downgrades the
/// prediction to an upper bound instead of failing.
pub fn nil_product_family_bound(h1: &Expression, d: u32, alpha: u32) -> Result<FamilyResult> {
    nil_product(h1, d, alpha, false)
}

fn nil_product(h1: &Expression, d: u32, alpha: u32, strict: bool) -> Result<FamilyResult> {
    if h1.is_zero() {
        return Err(Error::ZeroFamily);
    }
    if !euclidean_laplacian_2d(h1)?.is_zero() {
        return Err(Error::NotHarmonic);
    }
    let predicted = 2 * alpha + d + 1;
    let mut status = PredictionStatus::Certified;
    'axes: for axis in [Var::U, Var::V] {
        let mut g = h1.clone();
        for order in 1..=2 * predicted {
            g = g.diff(axis);
            if g.is_zero() {
                if strict {
                    return Err(Error::DerivativeVanishes { order, axis });
                }
                status = PredictionStatus::UpperBound;
                break 'axes;
            }
        }
    }
    Ok(FamilyResult {
        geometry: GeometryId::Nil,
        expr: &(h1 * &Expression::monomial(d, 0, 0)) * &t_pow(alpha),
        predicted_degree: predicted,
        prediction_source: "Nil: H_1 x^d t^alpha is (2 alpha + d + 1)-harmonic".into(),
        prediction_status: status,
    })
}

/// Degree bound for `x^m y^n t^α` on Nil, split by the parity of `α`.
pub fn nil_monomial_bound(m: u32, n: u32, alpha: u32) -> u32 {
    let n_part = if alpha.is_multiple_of(2) {
        n / 2
    } else {
        n.div_ceil(2)
    };
    (m + alpha) / 2 + n_part + 1 + alpha / 2
}

pub fn nil_monomial_family(m: u32, n: u32, alpha: u32) -> FamilyResult {
    FamilyResult {
        geometry: GeometryId::Nil,
        expr: Expression::monomial(m, n, alpha),
        predicted_degree: nil_monomial_bound(m, n, alpha),
        prediction_source: "Nil: x^m y^n t^alpha is r-harmonic with r split by the parity of alpha"
            .into(),
        prediction_status: PredictionStatus::UpperBound,
    }
}

/// The twelve Nil biharmonic monomials, in coefficient order `b_1 … b_12`.
pub fn nil_b_basis() -> [Expression; 12] {
    let m = Expression::monomial;
    [
        m(2, 0, 0),
        m(0, 2, 0),
        m(0, 1, 1),
        m(3, 0, 0),
        m(2, 1, 0),
        m(2, 0, 1),
        m(1, 2, 0),
        m(0, 3, 0),
        m(3, 1, 0),
        m(1, 3, 0),
        m(0, 2, 1),
        m(3, 0, 1),
    ]
}

pub fn nil_biharmonic_b(b: &[GaussianRational; 12]) -> Result<FamilyResult> {
    if all_zero(b) {
        return Err(Error::ZeroFamily);
    }
    Ok(FamilyResult {
        geometry: GeometryId::Nil,
        expr: linear_combination(b, &nil_b_basis()),
        predicted_degree: 2,
        prediction_source: "Nil: the 12-parameter family B is biharmonic".into(),
        prediction_status: PredictionStatus::UpperBound,
    })
}

/// `p_d(t) · y` or `p_d(t) · x` on SL2~; `p[k]` is the coefficient of `t^k`.
pub fn sl2_axis_family(p: &[GaussianRational], axis: Sl2Axis) -> Result<FamilyResult> {
    match p.last() {
        Some(lead) if !lead.is_zero() => {}
        _ => return Err(Error::ZeroFamily),
    }
    let d = (p.len() - 1) as u32;
    let poly = linear_combination(p, &(0..=d).map(t_pow).collect::<Vec<_>>());
    let (factor, predicted, source) = match axis {
        Sl2Axis::Y => (
            y(),
            d / 2 + 1,
            "SL2~: p_d(t) y is proper (floor(d/2) + 1)-harmonic",
        ),
        Sl2Axis::X => (
            x(),
            d.div_ceil(2) + 1,
            "SL2~: p_d(t) x is proper (ceil(d/2) + 1)-harmonic",
        ),
    };
    Ok(FamilyResult {
        geometry: GeometryId::Sl2R,
        expr: &poly * &factor,
        predicted_degree: predicted,
        prediction_source: source.into(),
        prediction_status: PredictionStatus::Certified,
    })
}

/// `b_1 xt + b_2 t² + b_3 xt² + b_4 yt² + b_5 t³ + b_6 yt³` on SL2~.
///
/// Biharmonic for all `b`, but not always proper: `b = (2, 0, 0, 1, 0, 0)`
/// gives the harmonic `2xt + yt²`.
pub fn sl2_example_f2(b: &[GaussianRational; 6]) -> Result<FamilyResult> {
    if all_zero(b) {
        return Err(Error::ZeroFamily);
    }
    let m = Expression::monomial;
    let parts = [
        m(1, 0, 1),
        m(0, 0, 2),
        m(1, 0, 2),
        m(0, 1, 2),
        m(0, 0, 3),
        m(0, 1, 3),
    ];
    Ok(FamilyResult {
        geometry: GeometryId::Sl2R,
        expr: linear_combination(b, &parts),
        predicted_degree: 2,
        prediction_source:
            "SL2~: f_2 = b_1 xt + b_2 t^2 + b_3 xt^2 + b_4 yt^2 + b_5 t^3 + b_6 yt^3 is biharmonic"
                .into(),
        prediction_status: PredictionStatus::UpperBound,
    })
}

/// `(f(z) + g(z̄)) · P(t)` on H²×R or S²×R with polynomial `f`, `g` and
/// `P(t) = Σ_{k<2r} b_k t^k`, `(b_{2r-2}, b_{2r-1}) ≠ 0`.
pub fn product_space_family(
    geometry: GeometryId,
    f: &[GaussianRational],
    g: &[GaussianRational],
    p: &[GaussianRational],
    r: u32,
) -> Result<FamilyResult> {
    if !geometry.is_complex() {
        return Err(Error::UnsupportedGeometry(geometry));
    }
    if r == 0 || p.len() != 2 * r as usize {
        return Err(Error::DimensionMismatch(format!(
            "P needs 2r = {} coefficients, got {}",
            2 * r,
            p.len()
        )));
    }
    let top = 2 * r as usize;
    if p[top - 2].is_zero() && p[top - 1].is_zero() {
        return Err(Error::DegreeConditionViolated);
    }
    let holo: Expression = f
        .iter()
        .enumerate()
        .map(|(k, c)| Expression::monomial(k as u32, 0, 0).scale(c))
        .sum();
    let anti: Expression = g
        .iter()
        .enumerate()
        .map(|(k, c)| Expression::monomial(0, k as u32, 0).scale(c))
        .sum();
    let sum = &holo + &anti;
    if sum.is_zero() {
        return Err(Error::ZeroFamily);
    }
    let poly = linear_combination(p, &(0..2 * r).map(t_pow).collect::<Vec<_>>());
    let which = if geometry == GeometryId::H2xR {
        "H2xR"
    } else {
        "S2xR"
    };
    Ok(FamilyResult {
        geometry,
        expr: &sum * &poly,
        predicted_degree: r,
        prediction_source: format!(
            "{which}: (f(z) + g(conj z)) P(t) with deg P in {{2r-2, 2r-1}} is proper r-harmonic"
        ),
        prediction_status: PredictionStatus::Certified,
    })
}

/// `e^x cos y = ½(e^{x+iy} + e^{x-iy})`.
pub fn exp_cos() -> Expression {
    let half = GaussianRational::from_ratio(1, 2);
    let i = GaussianRational::i();
    &Expression::exponential(GaussianRational::one(), i.clone(), zero()).scale(&half)
        + &Expression::exponential(GaussianRational::one(), -i, zero()).scale(&half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TERM_CAP as CAP;
    use crate::analysis::Degree;
    use crate::geometry::tau;
    use crate::textio::parse;

    fn degree(r: &FamilyResult) -> Degree {
        r.certify(CAP).unwrap().degree
    }

    #[test]
    fn closed_form_coefficients() {
        assert_eq!(
            sol_harmonic_coefficient(2, 1),
            GaussianRational::from_ratio(-1, 2)
        );
        assert_eq!(sol_harmonic_coefficient(4, 1), q(-3));
        assert_eq!(
            sol_harmonic_coefficient(4, 2),
            GaussianRational::from_ratio(3, 8)
        );
    }

    #[test]
    fn sol_harmonic_small() {
        assert_eq!(
            sol_harmonic(0, SolAxis::YMajor, false).expr,
            Expression::one()
        );
        let f = sol_harmonic(2, SolAxis::YMajor, false).expr;
        assert_eq!(f, parse("y^2 - 1/2*exp(2*t)").unwrap());
        let f = sol_harmonic(4, SolAxis::YMajor, false).expr;
        assert_eq!(f, parse("y^4 - 3*y^2*exp(2*t) + 3/8*exp(4*t)").unwrap());
        assert!(tau(GeometryId::Sol, &f, CAP).unwrap().is_zero());
        let g = sol_harmonic(3, SolAxis::XMajor, true).expr;
        assert!(tau(GeometryId::Sol, &g, CAP).unwrap().is_zero());
    }

    #[test]
    fn sol_polyharmonic_base_case_matches_harmonic_family() {
        let r = sol_polyharmonic(0, 4, CAP).unwrap();
        assert_eq!(r.expr, sol_harmonic(4, SolAxis::YMajor, false).expr);
        assert_eq!(degree(&r), Degree::Exact(1));
    }

    #[test]
    fn sol_polyharmonic_2_4() {
        let r = sol_polyharmonic(2, 4, CAP).unwrap();
        assert_eq!(r.prediction_status, PredictionStatus::PaperInconsistent);
        assert_eq!(degree(&r), Degree::Exact(2));
        assert_eq!(
            r.expr.coeff(&TermKey::monomial(2, 4, 0)),
            GaussianRational::one()
        );
    }

    #[test]
    fn fr_and_product_examples() {
        let e = |k: usize| {
            let mut a: [GaussianRational; 4] = Default::default();
            a[k] = q(1);
            a
        };
        let zero4: [GaussianRational; 4] = Default::default();
        let r = sol_example_fr(0, &e(0), &zero4).unwrap();
        assert_eq!(r.expr, Expression::one());
        assert_eq!(degree(&r), Degree::Exact(1));
        let r = sol_example_fr(1, &e(1), &zero4).unwrap();
        assert_eq!(r.expr, parse("t^2*x").unwrap());
        assert_eq!(degree(&r), Degree::Exact(2));
        assert_eq!(sol_example_fr(1, &zero4, &zero4), Err(Error::ZeroFamily));

        let r = sol_example_product(&q(1), &q(0), &q(1), &q(0)).unwrap();
        assert_eq!(
            r.expr,
            parse("(2*x^2 - exp(-2*t))*(2*y^2 - exp(2*t))").unwrap()
        );
        assert_eq!(degree(&r), Degree::Exact(2));
        assert_eq!(
            sol_example_product(&q(0), &q(0), &q(1), &q(0)),
            Err(Error::ZeroFamily)
        );
    }

    #[test]
    fn nil_product_checks() {
        let r = nil_product_family(&exp_cos(), 0, 2).unwrap();
        assert_eq!(r.predicted_degree, 5);
        assert_eq!(degree(&r), Degree::Exact(5));
        let r = nil_product_family(&exp_cos(), 1, 0).unwrap();
        assert_eq!(degree(&r), Degree::Exact(2));
        assert_eq!(
            nil_product_family(&parse("x").unwrap(), 0, 0),
            Err(Error::DerivativeVanishes {
                order: 2,
                axis: Var::U
            })
        );
        let r = nil_product_family_bound(&parse("x").unwrap(), 0, 1).unwrap();
        assert_eq!(r.prediction_status, PredictionStatus::UpperBound);
        assert_eq!(
            nil_product_family(&parse("x^2").unwrap(), 0, 0),
            Err(Error::NotHarmonic)
        );
        assert_eq!(
            nil_product_family(&parse("x*t").unwrap(), 0, 0),
            Err(Error::DependsOnT)
        );
    }

    #[test]
    fn nil_monomial_bounds() {
        assert_eq!(nil_monomial_bound(1, 3, 7), 10);
        assert_eq!(nil_monomial_bound(5, 2, 4), 8);
        assert_eq!(nil_monomial_bound(2, 0, 0), 2);
    }

    #[test]
    fn nil_b_specializations() {
        let mut b: [GaussianRational; 12] = Default::default();
        b[2] = q(1);
        let r = nil_biharmonic_b(&b).unwrap();
        assert_eq!(r.expr, parse("y*t").unwrap());
        assert_eq!(degree(&r), Degree::Exact(2));
        let mut b: [GaussianRational; 12] = Default::default();
        b[0] = q(1);
        b[1] = q(-1);
        let r = nil_biharmonic_b(&b).unwrap();
        assert_eq!(degree(&r), Degree::Exact(1));
        assert!(r.agrees_with(1));
        assert_eq!(
            nil_biharmonic_b(&Default::default()),
            Err(Error::ZeroFamily)
        );
    }

    #[test]
    fn sl2_families() {
        let r = sl2_axis_family(&[q(1)], Sl2Axis::X).unwrap();
        assert_eq!(degree(&r), Degree::Exact(1));
        let t3 = [q(0), q(0), q(0), q(1)];
        assert_eq!(
            sl2_axis_family(&t3, Sl2Axis::Y).unwrap().predicted_degree,
            2
        );
        assert_eq!(
            sl2_axis_family(&t3, Sl2Axis::X).unwrap().predicted_degree,
            3
        );
        assert_eq!(
            sl2_axis_family(&[q(1), q(0)], Sl2Axis::X),
            Err(Error::ZeroFamily)
        );
        assert_eq!(sl2_axis_family(&[], Sl2Axis::X), Err(Error::ZeroFamily));

        let mut b: [GaussianRational; 6] = Default::default();
        b[0] = q(1);
        assert_eq!(degree(&sl2_example_f2(&b).unwrap()), Degree::Exact(2));
        let degenerate = [q(2), q(0), q(0), q(1), q(0), q(0)];
        assert_eq!(
            degree(&sl2_example_f2(&degenerate).unwrap()),
            Degree::Exact(1)
        );
    }

    #[test]
    fn product_space_errors() {
        let one = [q(1)];
        assert_eq!(
            product_space_family(GeometryId::Nil, &one, &[], &[q(0), q(1)], 1),
            Err(Error::UnsupportedGeometry(GeometryId::Nil))
        );
        assert_eq!(
            product_space_family(GeometryId::H2xR, &one, &[], &[q(1), q(0), q(0), q(0)], 2),
            Err(Error::DegreeConditionViolated)
        );
        assert_eq!(
            product_space_family(GeometryId::H2xR, &one, &[q(-1)], &[q(0), q(1)], 1),
            Err(Error::ZeroFamily)
        );
        let r = product_space_family(GeometryId::H2xR, &one, &[], &[q(0), q(1)], 1).unwrap();
        assert_eq!(r.expr, parse("t").unwrap());
        assert_eq!(degree(&r), Degree::Exact(1));
    }
}
