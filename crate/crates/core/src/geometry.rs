//! Laplace–Beltrami (τ) and conformality (κ) operators of the five
//! geometries, stored as coefficient tables over the term algebra.
//!
//! Every operator here is second order with no first-order part:
//!
//! ```text
//! τ(f)    = Σ c_k · ∂_{i_k} ∂_{j_k} f
//! κ(f, h) = Σ c'_k · ∂_{i_k} f · ∂_{j_k} h
//! ```
//!
//! | geometry | τ                                               |
//! |----------|-------------------------------------------------|
//! | Sol      | e^{-2t} f_xx + e^{2t} f_yy + f_tt               |
//! | Nil      | f_xx + f_yy + 2x f_yt + (1+x²) f_tt             |
//! | SL2~     | y²(f_xx + f_yy) + 2 f_tt − 2y f_xt              |
//! | H²×R     | 4(1 − z z̄)² f_{z z̄} + f_tt                      |
//! | S²×R     | (1 + z z̄)² f_{z z̄} + f_tt                       |
//!
//! The S²×R row comes from the conformal metric `4(dx² + dy²)/(1 + |z|²)²`:
//! with `λ = 2/(1 + |z|²)` the Laplacian is `λ^{-2}(∂_xx + ∂_yy)` and
//! `∂_xx + ∂_yy = 4 ∂_z ∂_z̄`. Its κ is `½(1 + z z̄)²(f_z h_z̄ + f_z̄ h_z) + f_t h_t`.
//! The SL2~ κ reads the symmetric coefficients off the second-order part of τ:
//! `y²(f_x h_x + f_y h_y) + 2 f_t h_t − y(f_x h_t + f_t h_x)`.
//! Both derived tables are pinned by the product rule
//! `τ(fh) = τ(f)h + 2κ(f,h) + fτ(h)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{Expression, GaussianRational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryId {
    Sol,
    Nil,
    Sl2R,
    H2xR,
    S2xR,
}

/// How the abstract `(u, v)` coordinates are spelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `(u, v) = (x, y)`.
    Real,
    /// `(u, v) = (z, z̄)`, spelled `z` and `zc`.
    Complex,
}

impl GeometryId {
    pub const ALL: [GeometryId; 5] = [
        GeometryId::Sol,
        GeometryId::Nil,
        GeometryId::Sl2R,
        GeometryId::H2xR,
        GeometryId::S2xR,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            GeometryId::Sol => "sol",
            GeometryId::Nil => "nil",
            GeometryId::Sl2R => "sl2",
            GeometryId::H2xR => "h2xr",
            GeometryId::S2xR => "s2xr",
        }
    }

    pub fn notation(self) -> Notation {
        match self {
            GeometryId::H2xR | GeometryId::S2xR => Notation::Complex,
            _ => Notation::Real,
        }
    }

    pub fn is_complex(self) -> bool {
        self.notation() == Notation::Complex
    }

    pub fn table(self) -> &'static OperatorTable {
        static TABLES: OnceLock<Vec<OperatorTable>> = OnceLock::new();
        let tables =
            TABLES.get_or_init(|| GeometryId::ALL.iter().map(|g| build_table(*g)).collect());
        &tables[self as usize]
    }
}

impl fmt::Display for GeometryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeometryId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sol" => Ok(GeometryId::Sol),
            "nil" => Ok(GeometryId::Nil),
            "sl2" | "sl2r" => Ok(GeometryId::Sl2R),
            "h2xr" => Ok(GeometryId::H2xR),
            "s2xr" => Ok(GeometryId::S2xR),
            other => Err(format!(
                "unknown geometry '{other}' (expected sol, nil, sl2, h2xr or s2xr)"
            )),
        }
    }
}

impl serde::Serialize for GeometryId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for GeometryId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One coefficient of a second-order operator: `prefactor · ∂_first ∂_second`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorEntry {
    pub prefactor: Expression,
    pub first: Var,
    pub second: Var,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTable {
    pub tau: Vec<OperatorEntry>,
    /// Listed symmetrically: an off-diagonal entry appears in both orders.
    pub kappa: Vec<OperatorEntry>,
}

fn entry(prefactor: Expression, first: Var, second: Var) -> OperatorEntry {
    OperatorEntry {
        prefactor,
        first,
        second,
    }
}

fn build_table(g: GeometryId) -> OperatorTable {
    use Var::{T, U, V};
    let c = |n: i64, d: i64| Expression::constant(GaussianRational::from_ratio(n, d));
    let zero = GaussianRational::default;
    let e_t = |s: i64| Expression::exponential(zero(), zero(), GaussianRational::from(s));
    let x = Expression::var(U);
    let y = Expression::var(V);
    let one = Expression::one();

    match g {
        GeometryId::Sol => OperatorTable {
            tau: vec![
                entry(e_t(-2), U, U),
                entry(e_t(2), V, V),
                entry(one.clone(), T, T),
            ],
            kappa: vec![entry(e_t(-2), U, U), entry(e_t(2), V, V), entry(one, T, T)],
        },
        GeometryId::Nil => {
            let one_plus_x2 = &one + &(&x * &x);
            OperatorTable {
                tau: vec![
                    entry(one.clone(), U, U),
                    entry(one.clone(), V, V),
                    entry(&c(2, 1) * &x, V, T),
                    entry(one_plus_x2.clone(), T, T),
                ],
                kappa: vec![
                    entry(one.clone(), U, U),
                    entry(one, V, V),
                    entry(x.clone(), V, T),
                    entry(x, T, V),
                    entry(one_plus_x2, T, T),
                ],
            }
        }
        GeometryId::Sl2R => {
            let y2 = &y * &y;
            OperatorTable {
                tau: vec![
                    entry(y2.clone(), U, U),
                    entry(y2.clone(), V, V),
                    entry(c(2, 1), T, T),
                    entry(&c(-2, 1) * &y, U, T),
                ],
                kappa: vec![
                    entry(y2.clone(), U, U),
                    entry(y2, V, V),
                    entry(c(2, 1), T, T),
                    entry(-&y, U, T),
                    entry(-&y, T, U),
                ],
            }
        }
        GeometryId::H2xR => {
            let w = &one - &(&x * &y);
            let w2 = &w * &w;
            OperatorTable {
                tau: vec![entry(&c(4, 1) * &w2, U, V), entry(one.clone(), T, T)],
                kappa: vec![
                    entry(&c(2, 1) * &w2, U, V),
                    entry(&c(2, 1) * &w2, V, U),
                    entry(one, T, T),
                ],
            }
        }
        GeometryId::S2xR => {
            let w = &one + &(&x * &y);
            let w2 = &w * &w;
            OperatorTable {
                tau: vec![entry(w2.clone(), U, V), entry(one.clone(), T, T)],
                kappa: vec![
                    entry(&c(1, 2) * &w2, U, V),
                    entry(&c(1, 2) * &w2, V, U),
                    entry(one, T, T),
                ],
            }
        }
    }
}

/// Laplace–Beltrami operator of `g` applied to `f`.
pub fn tau(g: GeometryId, f: &Expression, cap: usize) -> Result<Expression> {
    let mut acc = Expression::zero();
    for e in &g.table().tau {
        let second = f.diff(e.first).diff(e.second);
        if second.is_zero() {
            continue;
        }
        let term = e.prefactor.checked_mul(&second, cap)?;
        acc = acc.checked_add(&term, cap)?;
    }
    Ok(acc)
}

/// `τ^n(f)`; `n = 0` returns `f`.
pub fn tau_iter(g: GeometryId, f: &Expression, n: u32, cap: usize) -> Result<Expression> {
    let mut cur = f.clone();
    for k in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = tau(g, &cur, cap).map_err(|e| e.with_iteration(k + 1))?;
    }
    Ok(cur)
}

/// Conformality operator `κ(f, h) = g(∇f, ∇h)`.
pub fn kappa(g: GeometryId, f: &Expression, h: &Expression, cap: usize) -> Result<Expression> {
    let mut acc = Expression::zero();
    for e in &g.table().kappa {
        let df = f.diff(e.first);
        let dh = h.diff(e.second);
        if df.is_zero() || dh.is_zero() {
            continue;
        }
        let term = e.prefactor.checked_mul(&df, cap)?.checked_mul(&dh, cap)?;
        acc = acc.checked_add(&term, cap)?;
    }
    Ok(acc)
}

/// Flat Laplacian `f_uu + f_vv` of a function of `(u, v)` only.
pub fn euclidean_laplacian_2d(f: &Expression) -> Result<Expression> {
    if f.depends_on(Var::T) {
        return Err(Error::DependsOnT);
    }
    Ok(&f.diff(Var::U).diff(Var::U) + &f.diff(Var::V).diff(Var::V))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TERM_CAP as CAP;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn x() -> Expression {
        Expression::var(Var::U)
    }
    fn y() -> Expression {
        Expression::var(Var::V)
    }
    fn t() -> Expression {
        Expression::var(Var::T)
    }

    #[test]
    fn sol_t_squared() {
        assert_eq!(
            tau(GeometryId::Sol, &t().pow(2), CAP).unwrap(),
            Expression::constant(q(2))
        );
    }

    #[test]
    fn nil_yt() {
        assert_eq!(
            tau(GeometryId::Nil, &(&y() * &t()), CAP).unwrap(),
            x().scale(&q(2))
        );
    }

    #[test]
    fn h2xr_holomorphic_plus_antiholomorphic() {
        let f = &(&x().pow(2) + &y().pow(3)) * &t().pow(3);
        let expected = (&(&x().pow(2) + &y().pow(3)) * &t()).scale(&q(6));
        assert_eq!(tau(GeometryId::H2xR, &f, CAP).unwrap(), expected);
    }

    #[test]
    fn kappa_examples() {
        assert!(kappa(GeometryId::Sol, &x(), &y(), CAP).unwrap().is_zero());
        assert_eq!(kappa(GeometryId::Nil, &y(), &t(), CAP).unwrap(), x());
        let w = &Expression::one() - &(&x() * &y());
        assert_eq!(
            kappa(GeometryId::H2xR, &x(), &y(), CAP).unwrap(),
            (&w * &w).scale(&q(2))
        );
    }

    #[test]
    fn euclidean_laplacian() {
        let f = &x().pow(2) - &y().pow(2);
        assert!(euclidean_laplacian_2d(&f).unwrap().is_zero());
        assert_eq!(
            euclidean_laplacian_2d(&x().pow(2)).unwrap(),
            Expression::constant(q(2))
        );
        assert_eq!(euclidean_laplacian_2d(&t()), Err(Error::DependsOnT));
        let i = GaussianRational::i();
        let half = GaussianRational::from_ratio(1, 2);
        let h = &Expression::exponential(q(1), i.clone(), q(0)).scale(&half)
            + &Expression::exponential(q(1), -i, q(0)).scale(&half);
        assert!(euclidean_laplacian_2d(&h).unwrap().is_zero());
    }

    #[test]
    fn kappa_tables_are_symmetric() {
        for g in GeometryId::ALL {
            let k = &g.table().kappa;
            for e in k {
                assert!(
                    k.iter().any(|o| o.first == e.second
                        && o.second == e.first
                        && o.prefactor == e.prefactor),
                    "{g}: missing mirror of ({}, {})",
                    e.first,
                    e.second
                );
            }
        }
    }

    #[test]
    fn geometry_names_round_trip() {
        for g in GeometryId::ALL {
            assert_eq!(g.name().parse::<GeometryId>().unwrap(), g);
        }
        assert!("euclid".parse::<GeometryId>().is_err());
    }

    #[test]
    fn tau_iter_reports_iteration_on_overflow() {
        let f = (&x() + &y()).pow(3);
        let err = tau_iter(GeometryId::Sol, &(&f * &t().pow(4)), 3, 4).unwrap_err();
        assert!(
            matches!(
                err,
                Error::ExpressionTooLarge {
                    iteration: Some(1),
                    ..
                }
            ),
            "{err:?}"
        );
    }
}
