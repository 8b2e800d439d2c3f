//! Random small expressions shared by the property and acceptance suites.
#![allow(dead_code)]

use num_rational::BigRational;
use polyharm::{Expression, GaussianRational, GeometryId, Term, TermKey};
use proptest::prelude::*;
use rand::Rng;

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::new(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

/// Exponent weights kept within `[-1, 1]` so values stay moderate on the
/// sampling boxes used by the finite-difference checks.
const WEIGHTS: [(i64, i64); 5] = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)];

/// Shape limits for a random expression.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub max_pow: u32,
    /// Probability that a term carries an exponential factor.
    pub exp_prob: f64,
    pub complex_coeffs: bool,
}

impl Shape {
    pub const SMALL: Shape = Shape {
        max_terms: 3,
        max_pow: 2,
        exp_prob: 0.4,
        complex_coeffs: true,
    };
}

fn rand_weight<R: Rng>(rng: &mut R) -> GaussianRational {
    let (n, d) = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
    q(n, d)
}

/// A random term whose exponential weights suit `g`: on H²×R and S²×R the
/// `z` and `z̄` weights are complex conjugates, so `e^{pz + p̄z̄}` stays bounded.
pub fn random_term<R: Rng>(rng: &mut R, g: GeometryId, shape: Shape) -> Term {
    let coeff = if shape.complex_coeffs && rng.gen_bool(0.3) {
        gauss(
            (rng.gen_range(-4..=4), rng.gen_range(1..=3)),
            (rng.gen_range(-3..=3), rng.gen_range(1..=2)),
        )
    } else {
        let n = loop {
            let n = rng.gen_range(-5..=5);
            if n != 0 {
                break n;
            }
        };
        q(n, rng.gen_range(1..=4))
    };
    let mut key = TermKey::monomial(
        rng.gen_range(0..=shape.max_pow),
        rng.gen_range(0..=shape.max_pow),
        rng.gen_range(0..=shape.max_pow),
    );
    if rng.gen_bool(shape.exp_prob) {
        let s = rand_weight(rng);
        let (p, qq) = if g.is_complex() {
            let p = gauss(WEIGHTS[rng.gen_range(0..5)], WEIGHTS[rng.gen_range(0..5)]);
            let conj = p.conj();
            (p, conj)
        } else {
            (rand_weight(rng), rand_weight(rng))
        };
        key = key.with_exp(p, qq, s);
    }
    Term::new(coeff, key)
}

pub fn random_expr<R: Rng>(rng: &mut R, g: GeometryId, shape: Shape) -> Expression {
    let n = rng.gen_range(1..=shape.max_terms);
    Expression::normalize((0..n).map(|_| random_term(rng, g, shape)))
}

/// Proptest strategy: a seed expanded through [`random_expr`].
pub fn arb_expr(g: GeometryId, shape: Shape) -> impl Strategy<Value = Expression> {
    any::<u64>().prop_map(move |seed| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_expr(&mut rng, g, shape)
    })
}

pub fn arb_geometry() -> impl Strategy<Value = GeometryId> {
    prop::sample::select(GeometryId::ALL.to_vec())
}

pub fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| gauss((a, b), (c, d)))
}
