use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::dyadic::Dyadic;
use super::scaled::ScaledIntMatrix;
use crate::error::{Error, Result};

/// A matrix of dyadic rationals stored over a common denominator:
/// entry `(r, c)` is `numerators[r * cols + c] / 2^exponent`.
///
/// The shared denominator is reduced as far as possible, so equality and
/// hashing are structural. Projection matrices live here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    numerators: Vec<BigInt>,
    exponent: u32,
}

impl RationalMatrix {
    pub fn from_parts(
        rows: usize,
        cols: usize,
        numerators: Vec<BigInt>,
        exponent: u32,
    ) -> Result<Self> {
        if numerators.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "RationalMatrix::from_parts",
                left: (rows, cols),
                right: (numerators.len(), 1),
            });
        }
        let mut m = RationalMatrix {
            rows,
            cols,
            numerators,
            exponent,
        };
        m.canonicalize();
        Ok(m)
    }

    pub fn from_dyadics(rows: usize, cols: usize, entries: &[Dyadic]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "RationalMatrix::from_dyadics",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let e = entries.iter().map(Dyadic::exponent).max().unwrap_or(0);
        let nums = entries
            .iter()
            .map(|d| d.numerator() << (e - d.exponent()))
            .collect();
        RationalMatrix::from_parts(rows, cols, nums, e)
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let m = ScaledIntMatrix::from_rows(rows);
        m.to_rational().expect("integer matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            numerators: vec![BigInt::zero(); rows * cols],
            exponent: 0,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.numerators[i * n + i] = BigInt::one();
        }
        m
    }

    fn canonicalize(&mut self) {
        if self.numerators.iter().all(Zero::is_zero) {
            self.exponent = 0;
            return;
        }
        let tz = self
            .numerators
            .iter()
            .filter_map(|e| e.trailing_zeros())
            .min()
            .unwrap_or(0);
        let shift = (tz as u32).min(self.exponent);
        if shift > 0 {
            for e in &mut self.numerators {
                *e >>= shift;
            }
            self.exponent -= shift;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    /// Common denominator is `2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn get(&self, r: usize, c: usize) -> Dyadic {
        Dyadic::new(self.numerators[r * self.cols + c].clone(), self.exponent)
    }

    pub fn num_row(&self, r: usize) -> &[BigInt] {
        &self.numerators[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "RationalMatrix::mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let a = &self.numerators[i * k + t];
                if a.is_zero() {
                    continue;
                }
                let brow = &rhs.numerators[t * m..(t + 1) * m];
                for (o, b) in out[i * m..(i + 1) * m].iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        RationalMatrix::from_parts(n, m, out, self.exponent + rhs.exponent)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut nums = Vec::with_capacity(self.numerators.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                nums.push(self.numerators[r * self.cols + c].clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            numerators: nums,
            exponent: self.exponent,
        }
    }

    fn combine(&self, rhs: &RationalMatrix, op: &'static str, sign: i32) -> Result<RationalMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let e = self.exponent.max(rhs.exponent);
        let (sa, sb) = (e - self.exponent, e - rhs.exponent);
        let nums = self
            .numerators
            .iter()
            .zip(&rhs.numerators)
            .map(|(a, b)| {
                let (a, b) = (a << sa, b << sb);
                if sign > 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        RationalMatrix::from_parts(self.rows, self.cols, nums, e)
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(rhs, "RationalMatrix::add", 1)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(rhs, "RationalMatrix::sub", -1)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (r + 1..self.cols).all(|c| {
                    self.numerators[r * self.cols + c] == self.numerators[c * self.cols + r]
                })
            })
    }

    pub fn trace(&self) -> Result<Dyadic> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "trace",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let s: BigInt = (0..self.rows)
            .map(|i| &self.numerators[i * self.cols + i])
            .sum();
        Ok(Dyadic::new(s, self.exponent))
    }

    /// `tr(A·B)` without forming the product.
    pub fn trace_product(&self, rhs: &RationalMatrix) -> Result<Dyadic> {
        if !self.is_square() || self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op: "trace_product",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let n = self.rows;
        let mut acc = BigInt::zero();
        for j in 0..n {
            for k in 0..n {
                let a = &self.numerators[j * n + k];
                if a.is_zero() {
                    continue;
                }
                let b = &rhs.numerators[k * n + j];
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        Ok(Dyadic::new(acc, self.exponent + rhs.exponent))
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> Dyadic {
        let s: BigInt = self.numerators.iter().map(|x| x * x).sum();
        Dyadic::new(s, 2 * self.exponent)
    }

    /// `gᵀ · self · g`; for an orthogonal `g` this is the projector of the
    /// image subspace under right multiplication by `g`.
    pub fn conjugate_by(&self, g: &ScaledIntMatrix) -> Result<RationalMatrix> {
        if !self.is_square() || g.rows() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "conjugate_by",
                left: self.shape(),
                right: g.shape(),
            });
        }
        let k = g.sqrt2_exponent();
        let ints = RationalMatrix {
            rows: g.rows(),
            cols: g.cols(),
            numerators: g.entries().to_vec(),
            exponent: 0,
        };
        let prod = ints.transpose().mul(self)?.mul(&ints)?;
        // (√2)^-k on both sides gives 2^-k
        RationalMatrix::from_parts(prod.rows, prod.cols, prod.numerators, prod.exponent + k)
    }

    /// `self^k` for square matrices, `k ≥ 1`.
    pub fn pow(&self, k: u32) -> Result<RationalMatrix> {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let s = 2f64.powi(-(self.exponent as i32));
        self.numerators
            .iter()
            .map(|e| e.to_f64().unwrap_or(f64::NAN) * s)
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
