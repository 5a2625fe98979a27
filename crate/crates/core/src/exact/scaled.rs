use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::RationalMatrix;
use crate::error::{Error, Result};

/// An integer matrix times `(√2)^-k`.
///
/// Every generator of the Clifford group and every product of them has this
/// shape, so one exponent per matrix is enough. Canonical form absorbs common
/// factors of 2 into the exponent: either some entry is odd or `k < 2`.
/// The all-zero matrix has `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    sqrt2_exponent: u32,
}

impl ScaledIntMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
        sqrt2_exponent: u32,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "ScaledIntMatrix::new",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let mut m = ScaledIntMatrix {
            rows,
            cols,
            entries,
            sqrt2_exponent,
        };
        m.canonicalize();
        Ok(m)
    }

    /// Integer matrix from nested rows; panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        ScaledIntMatrix::new(rows.len(), cols, entries, 0).expect("shape checked")
    }

    pub fn from_rows_scaled<R: AsRef<[i64]>>(rows: &[R], sqrt2_exponent: u32) -> Self {
        let m = ScaledIntMatrix::from_rows(rows);
        ScaledIntMatrix::new(m.rows, m.cols, m.entries, sqrt2_exponent).expect("shape checked")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScaledIntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
            sqrt2_exponent: 0,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScaledIntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    fn canonicalize(&mut self) {
        if self.entries.iter().all(Zero::is_zero) {
            self.sqrt2_exponent = 0;
            return;
        }
        let tz = self
            .entries
            .iter()
            .filter_map(|e| e.trailing_zeros())
            .min()
            .unwrap_or(0);
        let halvings = (tz as u32).min(self.sqrt2_exponent / 2);
        if halvings > 0 {
            for e in &mut self.entries {
                *e >>= halvings;
            }
            self.sqrt2_exponent -= 2 * halvings;
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

    pub fn sqrt2_exponent(&self) -> u32 {
        self.sqrt2_exponent
    }

    /// Integer entries in row-major order (before the √2 scale).
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Integer rows as `i64`, when they fit.
    pub fn int_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn mat_mul(&self, rhs: &ScaledIntMatrix) -> Result<ScaledIntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let a = &self.entries[i * k + t];
                if a.is_zero() {
                    continue;
                }
                let brow = &rhs.entries[t * m..(t + 1) * m];
                let orow = &mut out[i * m..(i + 1) * m];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        ScaledIntMatrix::new(n, m, out, self.sqrt2_exponent + rhs.sqrt2_exponent)
    }

    pub fn transpose(&self) -> ScaledIntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ScaledIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            sqrt2_exponent: self.sqrt2_exponent,
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ScaledIntMatrix) -> ScaledIntMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut entries = vec![BigInt::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        entries[(i * rhs.rows + p) * cols + j * rhs.cols + q] = a * rhs.get(p, q);
                    }
                }
            }
        }
        ScaledIntMatrix::new(
            rows,
            cols,
            entries,
            self.sqrt2_exponent + rhs.sqrt2_exponent,
        )
        .expect("shape computed")
    }

    /// `[self | rhs]`; both operands must share the scale.
    pub fn hstack(&self, rhs: &ScaledIntMatrix) -> Result<ScaledIntMatrix> {
        if self.rows != rhs.rows || self.sqrt2_exponent != rhs.sqrt2_exponent {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let cols = self.cols + rhs.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(rhs.row(r));
        }
        ScaledIntMatrix::new(self.rows, cols, entries, self.sqrt2_exponent)
    }

    /// Block diagonal `diag(self, rhs)`; both operands must share the scale.
    pub fn block_diag(&self, rhs: &ScaledIntMatrix) -> Result<ScaledIntMatrix> {
        if self.sqrt2_exponent != rhs.sqrt2_exponent {
            return Err(Error::DimensionMismatch {
                op: "block_diag",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let rows = self.rows + rhs.rows;
        let cols = self.cols + rhs.cols;
        let mut entries = vec![BigInt::zero(); rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[r * cols + c] = self.get(r, c).clone();
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                entries[(self.rows + r) * cols + self.cols + c] = rhs.get(r, c).clone();
            }
        }
        ScaledIntMatrix::new(rows, cols, entries, self.sqrt2_exponent)
    }

    /// Integer Gram matrix of the rows, `E Eᵀ` on the unscaled entries.
    pub fn int_gram(&self) -> Vec<BigInt> {
        let n = self.rows;
        let mut g = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v: BigInt = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                g[j * n + i] = v.clone();
                g[i * n + j] = v;
            }
        }
        g
    }

    pub fn has_orthogonal_rows(&self) -> bool {
        let n = self.rows;
        let g = self.int_gram();
        (0..n).all(|i| (0..n).all(|j| i == j || g[i * n + j].is_zero()))
    }

    /// `M Mᵀ = I` exactly.
    pub fn is_orthogonal(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        let scale = BigInt::one() << self.sqrt2_exponent;
        let g = self.int_gram();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    g[i * n + j] == scale
                } else {
                    g[i * n + j].is_zero()
                }
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.sqrt2_exponent == 0 && *self == ScaledIntMatrix::identity(self.rows)
    }

    /// Exact conversion; only possible when the √2 exponent is even.
    pub fn to_rational(&self) -> Result<RationalMatrix> {
        if !self.sqrt2_exponent.is_multiple_of(2) {
            return Err(Error::NonDyadic(format!(
                "matrix scaled by (√2)^-{}",
                self.sqrt2_exponent
            )));
        }
        RationalMatrix::from_parts(
            self.rows,
            self.cols,
            self.entries.clone(),
            self.sqrt2_exponent / 2,
        )
    }

    pub fn from_rational(m: &RationalMatrix) -> ScaledIntMatrix {
        let (rows, cols) = m.shape();
        ScaledIntMatrix::new(rows, cols, m.numerators().to_vec(), 2 * m.exponent())
            .expect("shape preserved")
    }

    /// Divides out the content of each row and fixes the sign so the first
    /// nonzero entry of every row is positive. Keeps the scale.
    pub fn primitive_rows(&self) -> ScaledIntMatrix {
        let mut entries = self.entries.clone();
        for r in 0..self.rows {
            let row = &mut entries[r * self.cols..(r + 1) * self.cols];
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g.is_zero() {
                continue;
            }
            let neg = row
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative());
            for x in row.iter_mut() {
                *x = &*x / &g;
                if neg {
                    *x = -&*x;
                }
            }
        }
        ScaledIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            sqrt2_exponent: 0,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let s = 2f64.sqrt().powi(-(self.sqrt2_exponent as i32));
        self.entries
            .iter()
            .map(|e| e.to_f64().unwrap_or(f64::NAN) * s)
            .collect()
    }
}

/// Orders by scale first, then entries lexicographically.
impl Ord for ScaledIntMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, self.sqrt2_exponent, &self.entries).cmp(&(
            other.rows,
            other.cols,
            other.sqrt2_exponent,
            &other.entries,
        ))
    }
}

impl PartialOrd for ScaledIntMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ScaledIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2_exponent > 0 {
            write!(f, "(√2)^-{} · ", self.sqrt2_exponent)?;
        }
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h2() -> ScaledIntMatrix {
        ScaledIntMatrix::from_rows_scaled(&[[1, 1], [1, -1]], 1)
    }

    fn h4() -> ScaledIntMatrix {
        ScaledIntMatrix::from_rows_scaled(
            &[[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]],
            2,
        )
    }

    #[test]
    fn hadamard_blocks_square_to_identity() {
        let p = h2().mat_mul(&h2()).unwrap();
        assert_eq!(p, ScaledIntMatrix::identity(2));
        assert_eq!(p.sqrt2_exponent(), 0);
        assert_eq!(h4().mat_mul(&h4()).unwrap(), ScaledIntMatrix::identity(4));
        assert!(h2().is_orthogonal() && h4().is_orthogonal());
    }

    #[test]
    fn h4_is_h2_kron_h2() {
        assert_eq!(h2().kron(&h2()), h4());
    }

    #[test]
    fn canonical_absorbs_factors_of_two() {
        let m = ScaledIntMatrix::from_rows_scaled(&[[2, 0], [0, 2]], 2);
        assert!(m.is_identity());
        // odd exponent keeps one √2
        let m = ScaledIntMatrix::from_rows_scaled(&[[2, 2]], 3);
        assert_eq!(m.sqrt2_exponent(), 1);
        assert_eq!(m.entries(), &[BigInt::from(1), BigInt::from(1)]);
        // nothing to absorb when entries are odd
        let m = ScaledIntMatrix::from_rows_scaled(&[[2, 1]], 4);
        assert_eq!(m.sqrt2_exponent(), 4);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = ScaledIntMatrix::identity(2);
        let b = ScaledIntMatrix::identity(3);
        assert!(matches!(
            a.mat_mul(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_round_trip_even_exponent() {
        let m = h4();
        let r = m.to_rational().unwrap();
        assert_eq!(ScaledIntMatrix::from_rational(&r), m);
        assert!(h2().to_rational().is_err());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ScaledIntMatrix> {
        (proptest::collection::vec(-3i64..=3, n * n), 0u32..4).prop_map(move |(v, k)| {
            ScaledIntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect(), k).unwrap()
        })
    }

    proptest! {
        #[test]
        fn mat_mul_is_associative(
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (arb_matrix(n), arb_matrix(n), arb_matrix(n)))
        ) {
            let left = a.mat_mul(&b).unwrap().mat_mul(&c).unwrap();
            let right = a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn canonicalize_is_idempotent(a in arb_matrix(3)) {
            let again = ScaledIntMatrix::new(3, 3, a.entries().to_vec(), a.sqrt2_exponent()).unwrap();
            prop_assert_eq!(&again, &a);
            let has_odd = a.entries().iter().any(|x| x.is_odd());
            prop_assert!(has_odd || a.sqrt2_exponent() < 2);
        }

        #[test]
        fn even_exponent_round_trips(v in proptest::collection::vec(-5i64..=5, 9), half in 0u32..4) {
            let m = ScaledIntMatrix::new(3, 3, v.into_iter().map(BigInt::from).collect(), 2 * half).unwrap();
            if m.sqrt2_exponent().is_multiple_of(2) {
                prop_assert_eq!(ScaledIntMatrix::from_rational(&m.to_rational().unwrap()), m);
            }
        }
    }
}
