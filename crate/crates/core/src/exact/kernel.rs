//! Fraction-free Gauss–Jordan elimination over the integers.
//!
//! Pivoting is fixed: the first column with a nonzero entry at or below the
//! current row, and within it the smallest such row index. Rows are kept
//! primitive after every update, so outputs depend only on the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::RationalMatrix;
use crate::error::{Error, Result};

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&p| !rows[p][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        make_primitive(&mut rows[r]);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        let a = pivot_row[c].clone();
        for (q, row) in rows.iter_mut().enumerate() {
            if q == r || row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots }
}

fn int_rows(g: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..g.rows()).map(|r| g.num_row(r).to_vec()).collect()
}

/// Row rank of an exact matrix.
pub fn rank(g: &RationalMatrix) -> usize {
    reduce(int_rows(g), g.cols()).pivots.len()
}

/// Row rank of integer rows (any common scale factor is irrelevant).
pub fn int_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    reduce(rows.to_vec(), cols).pivots.len()
}

/// A basis of the orthogonal complement of the row space of `g`.
///
/// Output rows are primitive integer vectors whose first nonzero entry is
/// positive, one per non-pivot column in increasing column order.
pub fn kernel_basis(g: &RationalMatrix) -> Result<RationalMatrix> {
    let (n, m) = g.shape();
    let ech = reduce(int_rows(g), m);
    if ech.pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: ech.pivots.len(),
            expected: n,
        });
    }
    let free: Vec<usize> = (0..m).filter(|c| !ech.pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len() * m);
    for &f in &free {
        // pivot rows with a nonzero entry in column f
        let lcm = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(row, _)| !row[f].is_zero())
            .fold(BigInt::one(), |l, (row, &c)| l.lcm(&row[c]));
        let mut v = vec![BigInt::zero(); m];
        v[f] = lcm.clone();
        for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
            if !row[f].is_zero() {
                v[c] = -(&row[f] * (&lcm / &row[c]));
            }
        }
        make_primitive(&mut v);
        if v.iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        out.extend(v);
    }
    RationalMatrix::from_parts(free.len(), m, out, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complement_of_coordinate_line() {
        let g = RationalMatrix::from_int_rows(&[[1, 0]]);
        assert_eq!(
            kernel_basis(&g).unwrap(),
            RationalMatrix::from_int_rows(&[[0, 1]])
        );
    }

    #[test]
    fn complement_of_diagonal_line() {
        let g = RationalMatrix::from_int_rows(&[[1, 1]]);
        assert_eq!(
            kernel_basis(&g).unwrap(),
            RationalMatrix::from_int_rows(&[[1, -1]])
        );
    }

    #[test]
    fn complement_of_i_zero_is_zero_i() {
        let g = RationalMatrix::from_int_rows(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(
            kernel_basis(&g).unwrap(),
            RationalMatrix::from_int_rows(&[[0, 0, 1, 0], [0, 0, 0, 1]])
        );
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let g = RationalMatrix::from_int_rows(&[[1, 1, 0], [2, 2, 0]]);
        assert!(matches!(
            kernel_basis(&g),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn empty_input_gives_identity() {
        let g = RationalMatrix::zeros(0, 3);
        assert_eq!(kernel_basis(&g).unwrap(), RationalMatrix::identity(3));
    }

    proptest! {
        #[test]
        fn kernel_is_orthogonal_and_complementary(
            (n, m, v) in (1usize..=4, 2usize..=6)
                .prop_filter("n < m", |(n, m)| n < m)
                .prop_flat_map(|(n, m)| (Just(n), Just(m), proptest::collection::vec(-3i64..=3, n * m)))
        ) {
            let g = RationalMatrix::from_parts(n, m, v.into_iter().map(BigInt::from).collect(), 0).unwrap();
            let r = rank(&g);
            match kernel_basis(&g) {
                Ok(k) => {
                    prop_assert_eq!(r, n);
                    let prod = g.mul(&k.transpose()).unwrap();
                    prop_assert!(prod.numerators().iter().all(Zero::is_zero));
                    prop_assert_eq!(rank(&k) + r, m);
                    prop_assert_eq!(k.rows(), m - n);
                }
                Err(Error::RankDeficient { rank: got, .. }) => prop_assert!(got < n && got == r),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
