//! Dense exact linear algebra over the Gaussian rationals.
//!
//! The nullspace routine clears denominators row by row, runs fraction-free
//! (Bareiss) elimination over the Gaussian integers, and only divides once at
//! the end to reach reduced row echelon form.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Expression, GaussianRational, Term, TermKey};
use crate::error::{Error, Result};
use crate::geometry::{tau, GeometryId};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `M^r`, with `M^0` the identity.
    pub fn pow(&self, r: u32) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..r {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        self.cols - nullspace(self).len()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `M^r` (square matrices only).
pub fn mat_pow(m: &ExactMatrix, r: u32) -> Result<ExactMatrix> {
    m.pow(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact in ℤ[i].
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&GaussInt {
            re: d.re.clone(),
            im: -d.im.clone(),
        });
        let (re, r1) = num.re.div_rem(&norm);
        let (im, r2) = num.im.div_rem(&norm);
        assert!(
            r1.is_zero() && r2.is_zero(),
            "inexact Bareiss division; elimination invariant broken"
        );
        GaussInt { re, im }
    }

    fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(self.re.clone().into(), self.im.clone().into())
    }
}

/// Scales a rational row to Gaussian integers by the lcm of its denominators.
fn integral_row(row: &[GaussianRational]) -> Vec<GaussInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.re().denom()).lcm(c.im().denom())
    });
    row.iter()
        .map(|c| GaussInt {
            re: (c.re() * &l).to_integer(),
            im: (c.im() * &l).to_integer(),
        })
        .collect()
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<GaussInt>> = (0..rows).map(|i| integral_row(m.row(i))).collect();
    let mut prev = GaussInt {
        re: BigInt::one(),
        im: BigInt::zero(),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot_row[c].mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = GaussInt {
                re: BigInt::zero(),
                im: BigInt::zero(),
            };
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let mut out: Vec<Vec<GaussianRational>> = Vec::with_capacity(rows);
    for (k, &pc) in pivots.iter().enumerate() {
        let inv = a[k][pc].to_rational().inv().expect("pivot is nonzero");
        out.push(a[k].iter().map(|v| &v.to_rational() * &inv).collect());
    }
    for k in (0..pivots.len()).rev() {
        let pc = pivots[k];
        let (upper, lower) = out.split_at_mut(k);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &(&f * &pivot_row[j]);
                }
            }
        }
    }
    out.resize(rows, vec![GaussianRational::zero(); cols]);
    let reduced = ExactMatrix::from_rows(out).unwrap_or_else(|_| ExactMatrix::zeros(rows, cols));
    (reduced, pivots)
}

/// Basis of `ker M`, one vector per free column in increasing column order.
///
/// Each vector has a 1 in its free column and 0 in every other free column.
pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![GaussianRational::zero(); m.cols];
            v[f] = GaussianRational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(k, f);
            }
            v
        })
        .collect()
}

/// Matrix of τ restricted to the span of `basis`: `τ(b_j) = Σ_i M_ij b_i`.
pub fn matrix_of_tau(g: GeometryId, basis: &[TermKey], cap: usize) -> Result<ExactMatrix> {
    let mut index = HashMap::with_capacity(basis.len());
    for (i, k) in basis.iter().enumerate() {
        if index.insert(k, i).is_some() {
            return Err(Error::DuplicateBasis { index: i });
        }
    }
    let n = basis.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (j, k) in basis.iter().enumerate() {
        let image = tau(
            g,
            &Expression::from_term(Term::new(GaussianRational::one(), k.clone())),
            cap,
        )?;
        for (key, c) in image.iter() {
            let &i = index.get(key).ok_or(Error::EscapesBasis { index: j })?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// Coordinates of `f` in `basis`, or `None` if `f` leaves the span.
pub fn coordinates(f: &Expression, basis: &[TermKey]) -> Option<Vec<GaussianRational>> {
    let v: Vec<GaussianRational> = basis.iter().map(|k| f.coeff(k)).collect();
    let covered = f.iter().all(|(k, _)| basis.contains(k));
    covered.then_some(v)
}

/// `Σ v_i · b_i`.
pub fn from_coordinates(v: &[GaussianRational], basis: &[TermKey]) -> Expression {
    Expression::normalize(
        v.iter()
            .zip(basis)
            .map(|(c, k)| Term::new(c.clone(), k.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TERM_CAP as CAP;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&ExactMatrix::identity(3)).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let ns = nullspace(&ExactMatrix::zeros(2, 2));
        assert_eq!(ns, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    }

    #[test]
    fn rank_deficient_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_of_complex_matrix() {
        let i = GaussianRational::i();
        let m =
            ExactMatrix::from_rows(vec![vec![q(1), i.clone()], vec![i.clone(), q(-1)]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![-i, q(1)]]);
    }

    #[test]
    fn powers() {
        let m = mat(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.pow(0).unwrap(), ExactMatrix::identity(2));
        assert!(m.pow(2).unwrap().is_zero());
        assert!(ExactMatrix::zeros(2, 2).pow(2).unwrap().is_zero());
        assert!(matches!(
            ExactMatrix::zeros(2, 3).pow(2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn tau_matrix_small_cases() {
        let m = matrix_of_tau(GeometryId::Sol, &[TermKey::monomial(0, 0, 0)], CAP).unwrap();
        assert_eq!(m, ExactMatrix::zeros(1, 1));

        let basis = [TermKey::monomial(0, 0, 1), TermKey::monomial(0, 0, 3)];
        let m = matrix_of_tau(GeometryId::Sol, &basis, CAP).unwrap();
        assert_eq!(m, mat(&[&[0, 6], &[0, 0]]));

        let err = matrix_of_tau(GeometryId::Sol, &[TermKey::monomial(0, 0, 2)], CAP).unwrap_err();
        assert_eq!(err, Error::EscapesBasis { index: 0 });
        let dup = [TermKey::monomial(1, 0, 0), TermKey::monomial(1, 0, 0)];
        assert_eq!(
            matrix_of_tau(GeometryId::Sol, &dup, CAP).unwrap_err(),
            Error::DuplicateBasis { index: 1 }
        );
    }
}
