use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Default upper bound on the number of terms an operation may produce.
pub const DEFAULT_TERM_CAP: usize = 100_000;

/// The three abstract coordinates of the term algebra.
///
/// Real geometries read `(U, V)` as `(x, y)`; the product spaces read them
/// as the Wirtinger pair `(z, z̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    T,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::U, Var::V, Var::T];
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::U => "u",
            Var::V => "v",
            Var::T => "t",
        })
    }
}

/// Identifies the basis function `u^a v^b t^d · e^(p·u + q·v + s·t)`.
///
/// Field order is the canonical sort key `(s, p, q, d, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub s: GaussianRational,
    pub p: GaussianRational,
    pub q: GaussianRational,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

impl TermKey {
    /// The monomial `u^a v^b t^d` with no exponential factor.
    pub fn monomial(a: u32, b: u32, d: u32) -> Self {
        Self {
            s: GaussianRational::zero(),
            p: GaussianRational::zero(),
            q: GaussianRational::zero(),
            d,
            a,
            b,
        }
    }

    pub fn with_exp(
        mut self,
        p: GaussianRational,
        q: GaussianRational,
        s: GaussianRational,
    ) -> Self {
        self.p = p;
        self.q = q;
        self.s = s;
        self
    }

    pub fn power(&self, var: Var) -> u32 {
        match var {
            Var::U => self.a,
            Var::V => self.b,
            Var::T => self.d,
        }
    }

    fn power_mut(&mut self, var: Var) -> &mut u32 {
        match var {
            Var::U => &mut self.a,
            Var::V => &mut self.b,
            Var::T => &mut self.d,
        }
    }

    pub fn weight(&self, var: Var) -> &GaussianRational {
        match var {
            Var::U => &self.p,
            Var::V => &self.q,
            Var::T => &self.s,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.s.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.a == 0 && self.b == 0 && self.d == 0
    }

    /// Key of the product of two basis functions.
    pub fn combine(&self, other: &TermKey) -> TermKey {
        TermKey {
            s: &self.s + &other.s,
            p: &self.p + &other.p,
            q: &self.q + &other.q,
            d: self.d + other.d,
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

/// A coefficient attached to a basis function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: GaussianRational,
    pub key: TermKey,
}

impl Term {
    pub fn new(coeff: GaussianRational, key: TermKey) -> Self {
        Self { coeff, key }
    }
}

/// A finite linear combination of basis functions in canonical form.
///
/// Terms are sorted by [`TermKey`] and no stored coefficient is zero. The
/// basis functions are linearly independent, so the empty sum is the only
/// representation of the zero function.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expression {
    terms: BTreeMap<TermKey, GaussianRational>,
}

fn accumulate(map: &mut BTreeMap<TermKey, GaussianRational>, key: TermKey, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn check_cap(terms: usize, cap: usize) -> Result<()> {
    if terms > cap {
        Err(Error::ExpressionTooLarge {
            terms,
            cap,
            iteration: None,
        })
    } else {
        Ok(())
    }
}

impl Expression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_term(Term::new(c, TermKey::monomial(0, 0, 0)))
    }

    pub fn var(v: Var) -> Self {
        let mut key = TermKey::monomial(0, 0, 0);
        *key.power_mut(v) = 1;
        Self::from_term(Term::new(GaussianRational::one(), key))
    }

    /// `u^a v^b t^d`.
    pub fn monomial(a: u32, b: u32, d: u32) -> Self {
        Self::from_term(Term::new(
            GaussianRational::one(),
            TermKey::monomial(a, b, d),
        ))
    }

    /// `e^(p·u + q·v + s·t)`.
    pub fn exponential(p: GaussianRational, q: GaussianRational, s: GaussianRational) -> Self {
        Self::from_term(Term::new(
            GaussianRational::one(),
            TermKey::monomial(0, 0, 0).with_exp(p, q, s),
        ))
    }

    pub fn from_term(term: Term) -> Self {
        Self::normalize([term])
    }

    /// Merges equal keys, drops zero coefficients and sorts.
    pub fn normalize(raw: impl IntoIterator<Item = Term>) -> Self {
        let mut terms = BTreeMap::new();
        for Term { coeff, key } in raw {
            accumulate(&mut terms, key, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.iter()
            .map(|(k, c)| Term::new(c.clone(), k.clone()))
            .collect()
    }

    /// Coefficient of a basis function (zero when absent).
    pub fn coeff(&self, key: &TermKey) -> GaussianRational {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Whether any term carries a power of, or exponential weight in, `var`.
    pub fn depends_on(&self, var: Var) -> bool {
        self.terms
            .keys()
            .any(|k| k.power(var) > 0 || !k.weight(var).is_zero())
    }

    pub fn checked_add(&self, other: &Expression, cap: usize) -> Result<Expression> {
        let sum = self + other;
        check_cap(sum.len(), cap)?;
        Ok(sum)
    }

    pub fn checked_mul(&self, other: &Expression, cap: usize) -> Result<Expression> {
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                accumulate(&mut terms, k1.combine(k2), c1 * c2);
            }
            check_cap(terms.len(), cap)?;
        }
        Ok(Expression { terms })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &GaussianRational) -> Expression {
        if c.is_zero() {
            return Expression::zero();
        }
        Expression {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Exact partial derivative.
    ///
    /// Per term, `∂(w^n e^(λw)) = n·w^(n-1) e^(λw) + λ·w^n e^(λw)`.
    pub fn diff(&self, var: Var) -> Expression {
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            let n = key.power(var);
            if n > 0 {
                let mut lowered = key.clone();
                *lowered.power_mut(var) -= 1;
                accumulate(&mut terms, lowered, c * &GaussianRational::from(n as i64));
            }
            let w = key.weight(var);
            if !w.is_zero() {
                accumulate(&mut terms, key.clone(), c * w);
            }
        }
        Expression { terms }
    }

    /// `∂^n f / ∂var^n`.
    pub fn diff_n(&self, var: Var, n: u32) -> Expression {
        (0..n).fold(self.clone(), |f, _| f.diff(var))
    }

    pub fn pow(&self, n: u32) -> Expression {
        (0..n).fold(Expression::one(), |acc, _| &acc * self)
    }

    pub fn checked_pow(&self, n: u32, cap: usize) -> Result<Expression> {
        let mut acc = Expression::one();
        for _ in 0..n {
            acc = acc.checked_mul(self, cap)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::render(
            self,
            crate::textio::Format::Canonical,
        ))
    }
}

impl<'a> Add<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn add(self, rhs: &Expression) -> Expression {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (k, c) in &small.terms {
            accumulate(&mut terms, k.clone(), c.clone());
        }
        Expression { terms }
    }
}

impl<'a> Sub<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn sub(self, rhs: &Expression) -> Expression {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Expression> for &'a Expression {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        self.checked_mul(rhs, usize::MAX).expect("uncapped product")
    }
}

impl Neg for &Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Expression {
            type Output = Expression;
            fn $m(self, rhs: Expression) -> Expression {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Expression> for Expression {
            type Output = Expression;
            fn $m(self, rhs: &Expression) -> Expression {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Expression {
    fn sum<I: Iterator<Item = Expression>>(iter: I) -> Expression {
        iter.fold(Expression::zero(), |acc, x| &acc + &x)
    }
}

impl From<GaussianRational> for Expression {
    fn from(c: GaussianRational) -> Self {
        Expression::constant(c)
    }
}
