//! Floating-point evaluation and a finite-difference oracle for τ.
//!
//! [`fd_tau`] discretizes each geometry's Laplace–Beltrami operator directly
//! in real coordinates `(x, y, t)`, written out here independently of the
//! symbolic tables in [`crate::geometry`]. On H²×R and S²×R the Wirtinger
//! derivative is replaced by `∂_z ∂_z̄ = ¼(∂_x² + ∂_y²)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Expression, DEFAULT_TERM_CAP};
use crate::error::{Error, Result};
use crate::geometry::{tau, GeometryId};

pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const DEFAULT_FD_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Points on SL2~ closer than this to `y = 0` are rejected.
pub const SL2_MIN_ABS_Y: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    pub fn validate(&self, g: GeometryId) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite() && self.t.is_finite()) {
            return Err(Error::InvalidPoint(format!("{self:?} is not finite")));
        }
        match g {
            GeometryId::H2xR if self.x * self.x + self.y * self.y >= 1.0 => {
                Err(Error::InvalidPoint(format!(
                    "({}, {}) lies outside the unit disc",
                    self.x, self.y
                )))
            }
            GeometryId::Sl2R if self.y.abs() <= SL2_MIN_ABS_Y => Err(Error::InvalidPoint(format!(
                "|y| = {} must exceed {SL2_MIN_ABS_Y} on sl2",
                self.y.abs()
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckReport {
    pub point: EvalPoint,
    pub symbolic: Complex64,
    pub numeric: Complex64,
    /// `|symbolic − numeric| / max(1, |symbolic|)`.
    pub rel_error: f64,
    pub within_tol: bool,
}

fn eval_unchecked(f: &Expression, p: &EvalPoint, g: GeometryId) -> Complex64 {
    let (u, v) = if g.is_complex() {
        (Complex64::new(p.x, p.y), Complex64::new(p.x, -p.y))
    } else {
        (Complex64::new(p.x, 0.0), Complex64::new(p.y, 0.0))
    };
    let t = Complex64::new(p.t, 0.0);
    f.iter()
        .map(|(k, c)| {
            let exponent = k.p.to_complex64() * u + k.q.to_complex64() * v + k.s.to_complex64() * t;
            c.to_complex64() * u.powu(k.a) * v.powu(k.b) * t.powu(k.d) * exponent.exp()
        })
        .sum()
}

/// Evaluates `f` at `p`, substituting `(u, v) = (x, y)` on real geometries and
/// `(x + iy, x − iy)` on complex ones.
pub fn eval(f: &Expression, p: &EvalPoint, g: GeometryId) -> Result<Complex64> {
    p.validate(g)?;
    Ok(eval_unchecked(f, p, g))
}

/// Second-order central-difference approximation of `τ(f)(p)`.
pub fn fd_tau(g: GeometryId, f: &Expression, p: &EvalPoint, h: f64) -> Result<Complex64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidPoint(format!(
            "step h = {h} must be positive"
        )));
    }
    p.validate(g)?;
    let at = |dx: f64, dy: f64, dt: f64| {
        eval_unchecked(f, &EvalPoint::new(p.x + dx, p.y + dy, p.t + dt), g)
    };
    let f0 = at(0.0, 0.0, 0.0);
    let h2 = h * h;
    let fxx = (at(h, 0.0, 0.0) - f0 * 2.0 + at(-h, 0.0, 0.0)) / h2;
    let fyy = (at(0.0, h, 0.0) - f0 * 2.0 + at(0.0, -h, 0.0)) / h2;
    let ftt = (at(0.0, 0.0, h) - f0 * 2.0 + at(0.0, 0.0, -h)) / h2;
    let fyt = (at(0.0, h, h) - at(0.0, h, -h) - at(0.0, -h, h) + at(0.0, -h, -h)) / (4.0 * h2);
    let fxt = (at(h, 0.0, h) - at(h, 0.0, -h) - at(-h, 0.0, h) + at(-h, 0.0, -h)) / (4.0 * h2);
    let (x, y, t) = (p.x, p.y, p.t);
    let r2 = x * x + y * y;
    Ok(match g {
        GeometryId::Sol => fxx * (-2.0 * t).exp() + fyy * (2.0 * t).exp() + ftt,
        GeometryId::Nil => fxx + fyy + fyt * (2.0 * x) + ftt * (1.0 + x * x),
        GeometryId::Sl2R => (fxx + fyy) * (y * y) + ftt * 2.0 - fxt * (2.0 * y),
        GeometryId::H2xR => (fxx + fyy) * (1.0 - r2).powi(2) + ftt,
        GeometryId::S2xR => (fxx + fyy) * ((1.0 + r2).powi(2) / 4.0) + ftt,
    })
}

/// Half-width of the default sampling box.
pub const DEFAULT_SAMPLE_RADIUS: f64 = 1.0;

/// A pseudo-random valid point with coordinates in `[-radius, radius]`.
///
/// On H²×R the disc radius is further capped at 0.8; on SL2~ `|y|` is drawn
/// from `[0.2, max(0.2, radius)]`.
pub fn random_point<R: Rng>(g: GeometryId, rng: &mut R, radius: f64) -> EvalPoint {
    let t = rng.gen_range(-radius..=radius);
    match g {
        GeometryId::H2xR => {
            let r = radius.min(0.8) * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            EvalPoint::new(r * theta.cos(), r * theta.sin(), t)
        }
        GeometryId::Sl2R => {
            let mag = rng.gen_range(0.2..=radius.max(0.2));
            let y = if rng.gen_bool(0.5) { mag } else { -mag };
            EvalPoint::new(rng.gen_range(-radius..=radius), y, t)
        }
        _ => EvalPoint::new(
            rng.gen_range(-radius..=radius),
            rng.gen_range(-radius..=radius),
            t,
        ),
    }
}

pub fn rel_error(symbolic: Complex64, numeric: Complex64) -> f64 {
    (symbolic - numeric).norm() / symbolic.norm().max(1.0)
}

/// Compares symbolic `τ(f)` with [`fd_tau`] at one point.
pub fn check_point(
    g: GeometryId,
    f: &Expression,
    tau_f: &Expression,
    p: EvalPoint,
    h: f64,
    tol: f64,
) -> Result<CheckReport> {
    let symbolic = eval(tau_f, &p, g)?;
    let numeric = fd_tau(g, f, &p, h)?;
    let rel_error = rel_error(symbolic, numeric);
    Ok(CheckReport {
        point: p,
        symbolic,
        numeric,
        rel_error,
        within_tol: rel_error <= tol,
    })
}

/// Checks `f` at `n_points` points drawn from a ChaCha8 stream seeded with `seed`.
pub fn cross_check(
    g: GeometryId,
    f: &Expression,
    n_points: usize,
    h: f64,
    tol: f64,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    cross_check_within(g, f, n_points, h, tol, seed, DEFAULT_SAMPLE_RADIUS)
}

/// [`cross_check`] with points restricted to `[-radius, radius]`.
pub fn cross_check_within(
    g: GeometryId,
    f: &Expression,
    n_points: usize,
    h: f64,
    tol: f64,
    seed: u64,
    radius: f64,
) -> Result<Vec<CheckReport>> {
    let tau_f = tau(g, f, DEFAULT_TERM_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_points)
        .map(|_| check_point(g, f, &tau_f, random_point(g, &mut rng, radius), h, tol))
        .collect()
}
