use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, power_of_two_exponent, Dyadic, RationalMatrix, ScaledIntMatrix};

/// An `n`-dimensional subspace of `R^m`, given by a row-generator matrix and
/// identified by its orthogonal projector.
///
/// Two values compare equal exactly when their projectors do; the generator
/// is kept only as a convenient representative.
#[derive(Clone, Debug)]
pub struct Subspace {
    generator: ScaledIntMatrix,
    projector: RationalMatrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.projector == other.projector
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.projector.hash(state);
    }
}

impl Subspace {
    /// Builds the subspace spanned by the rows of `g`.
    ///
    /// When the rows are pairwise orthogonal the projector is accumulated as
    /// `Σ r rᵀ / (r·r)`; otherwise `Gᵀ(GGᵀ)⁻¹G` is formed over the rationals.
    pub fn from_generator(g: ScaledIntMatrix) -> Result<Subspace> {
        let projector = projector_of(&g)?;
        Ok(Subspace {
            generator: g,
            projector,
        })
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Subspace> {
        Subspace::from_generator(ScaledIntMatrix::from_rows(rows))
    }

    /// Span of the first `k` coordinate vectors of `R^m`.
    pub fn coordinate(m: usize, k: usize) -> Result<Subspace> {
        if k > m {
            return Err(Error::InvalidDimensions { m, n: k });
        }
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|r| (0..m).map(|c| i64::from(r == c)).collect())
            .collect();
        if k == 0 {
            return Subspace::from_generator(ScaledIntMatrix::zeros(0, m));
        }
        Subspace::from_int_rows(&rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.generator.cols()
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &ScaledIntMatrix {
        &self.generator
    }

    pub fn projector(&self) -> &RationalMatrix {
        &self.projector
    }

    /// Image under right multiplication by an orthogonal matrix: the
    /// generator becomes `G·g` and the projector `gᵀΠg`.
    pub fn act(&self, g: &ScaledIntMatrix) -> Result<Subspace> {
        let generator = self.generator.mat_mul(g)?;
        // orthogonal g keeps orthogonal rows orthogonal, so this stays on the
        // cheap path whenever the source generator was on it
        Subspace::from_generator(generator)
    }

    pub fn orthogonal_complement(&self) -> Result<Subspace> {
        orthogonal_complement(self)
    }
}

/// `P⊥`, with a primitive integer generator from deterministic elimination.
pub fn orthogonal_complement(p: &Subspace) -> Result<Subspace> {
    let m = p.ambient_dim();
    let projector = RationalMatrix::identity(m).sub(&p.projector)?;
    let generator = if p.dim() == 0 {
        ScaledIntMatrix::identity(m)
    } else {
        // row space is unchanged by the √2 scale, so the unscaled integers do
        let ints = RationalMatrix::from_parts(p.dim(), m, p.generator.entries().to_vec(), 0)?;
        ScaledIntMatrix::from_rational(&kernel_basis(&ints)?)
    };
    let out = Subspace {
        generator,
        projector,
    };
    debug_assert_eq!(
        projector_of(&out.generator).ok().as_ref(),
        Some(&out.projector)
    );
    Ok(out)
}

fn projector_of(g: &ScaledIntMatrix) -> Result<RationalMatrix> {
    let (n, m) = g.shape();
    if n > m {
        return Err(Error::RankDeficient {
            rank: m,
            expected: n,
        });
    }
    if n == 0 {
        return Ok(RationalMatrix::zeros(m, m));
    }
    let gram = g.int_gram();
    let orthogonal = (0..n).all(|i| (0..n).all(|j| i == j || gram[i * n + j].is_zero()));
    if orthogonal {
        if let Some(exps) = (0..n)
            .map(|i| power_of_two_exponent(&gram[i * n + i]))
            .collect::<Option<Vec<u32>>>()
        {
            return Ok(orthogonal_projector(g, &exps));
        }
        if (0..n).any(|i| gram[i * n + i].is_zero()) {
            return Err(Error::RankDeficient {
                rank: n - 1,
                expected: n,
            });
        }
    }
    general_projector(g, &gram)
}

/// `Σ_r r rᵀ / 2^e_r` with `e_r = log2(r·r)`.
fn orthogonal_projector(g: &ScaledIntMatrix, exps: &[u32]) -> RationalMatrix {
    let m = g.cols();
    let top = exps.iter().copied().max().unwrap_or(0);
    let mut nums = vec![BigInt::zero(); m * m];
    for (r, &e) in exps.iter().enumerate() {
        let row = g.row(r);
        let shift = top - e;
        let support: Vec<usize> = (0..m).filter(|&c| !row[c].is_zero()).collect();
        for &j in &support {
            for &k in &support {
                nums[j * m + k] += (&row[j] * &row[k]) << shift;
            }
        }
    }
    RationalMatrix::from_parts(m, m, nums, top).expect("square")
}

fn general_projector(g: &ScaledIntMatrix, gram: &[BigInt]) -> Result<RationalMatrix> {
    let (n, m) = g.shape();
    let inv = invert(gram, n)?;
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    // W = (GGᵀ)⁻¹ G, then Π = Gᵀ W
    let mut w = vec![BigRational::zero(); n * m];
    for i in 0..n {
        for t in 0..n {
            if inv[i * n + t].is_zero() {
                continue;
            }
            for c in 0..m {
                let e = g.get(t, c);
                if !e.is_zero() {
                    w[i * m + c] += &inv[i * n + t] * rat(e);
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(m * m);
    for j in 0..m {
        for k in 0..m {
            let mut s = BigRational::zero();
            for t in 0..n {
                let e = g.get(t, j);
                if !e.is_zero() {
                    s += rat(e) * &w[t * m + k];
                }
            }
            entries.push(Dyadic::from_rational(&s)?);
        }
    }
    RationalMatrix::from_dyadics(m, m, &entries)
}

/// Gauss–Jordan inverse of a square integer matrix over the rationals.
fn invert(a: &[BigInt], n: usize) -> Result<Vec<BigRational>> {
    let mut m: Vec<BigRational> = a
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let mut inv = vec![BigRational::zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = BigRational::one();
    }
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r * n + c].is_zero())
            .ok_or(Error::RankDeficient {
                rank: c,
                expected: n,
            })?;
        if p != c {
            for k in 0..n {
                m.swap(p * n + k, c * n + k);
                inv.swap(p * n + k, c * n + k);
            }
        }
        let piv = m[c * n + c].clone();
        for k in 0..n {
            m[c * n + k] = &m[c * n + k] / &piv;
            inv[c * n + k] = &inv[c * n + k] / &piv;
        }
        for r in 0..n {
            if r == c || m[r * n + c].is_zero() {
                continue;
            }
            let f = m[r * n + c].clone();
            for k in 0..n {
                let (mv, iv) = (m[c * n + k].clone(), inv[c * n + k].clone());
                m[r * n + k] -= &f * mv;
                inv[r * n + k] -= &f * iv;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_line_projector() {
        let p = Subspace::from_int_rows(&[[1, 1]]).unwrap();
        let half = Dyadic::new(1, 1);
        let expect =
            RationalMatrix::from_dyadics(2, 2, &[half.clone(), half.clone(), half.clone(), half])
                .unwrap();
        assert_eq!(p.projector(), &expect);
    }

    #[test]
    fn coordinate_plane_projector() {
        let p = Subspace::coordinate(4, 2).unwrap();
        assert_eq!(
            p.projector(),
            &RationalMatrix::from_int_rows(&[
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 0],
                [0, 0, 0, 0]
            ])
        );
    }

    #[test]
    fn non_orthogonal_generator_uses_general_inverse() {
        // same plane as span(e1, e2), different basis
        let p = Subspace::from_int_rows(&[[1, 1, 0, 0], [0, 1, 0, 0]]).unwrap();
        assert_eq!(p, Subspace::coordinate(4, 2).unwrap());
        let q = Subspace::from_int_rows(&[[1, 1, 1, 1], [1, 1, 0, 0]]).unwrap();
        let r = Subspace::from_int_rows(&[[1, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(q, r);
    }

    #[test]
    fn scale_does_not_change_subspace() {
        let a = Subspace::from_generator(ScaledIntMatrix::from_rows_scaled(&[[1, 1]], 1)).unwrap();
        let b = Subspace::from_int_rows(&[[1, 1]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rank_deficient_generator() {
        let e = Subspace::from_int_rows(&[[1, 1, 0], [2, 2, 0]]).unwrap_err();
        assert!(matches!(e, Error::RankDeficient { .. }));
        let e = Subspace::from_int_rows(&[[1, 0], [0, 0]]).unwrap_err();
        assert!(matches!(e, Error::RankDeficient { .. }));
    }

    #[test]
    fn non_dyadic_projector_is_reported() {
        let e = Subspace::from_int_rows(&[[1, 1, 1]]).unwrap_err();
        assert!(matches!(e, Error::NonDyadic(_)));
    }

    #[test]
    fn complements_from_the_two_line_family() {
        let c = |rows: &[[i64; 2]]| Subspace::from_int_rows(rows).unwrap();
        assert_eq!(c(&[[1, 0]]).orthogonal_complement().unwrap(), c(&[[0, 1]]));
        let perp = c(&[[1, 1]]).orthogonal_complement().unwrap();
        assert_eq!(perp, c(&[[1, -1]]));
        assert_eq!(perp.generator(), &ScaledIntMatrix::from_rows(&[[1, -1]]));
    }

    #[test]
    fn complement_is_an_involution() {
        let p = Subspace::from_int_rows(&[[1, 0, 1, 0], [0, 1, 0, -1]]).unwrap();
        let pp = p
            .orthogonal_complement()
            .unwrap()
            .orthogonal_complement()
            .unwrap();
        assert_eq!(p, pp);
        let sum = p
            .projector()
            .add(p.orthogonal_complement().unwrap().projector())
            .unwrap();
        assert_eq!(sum, RationalMatrix::identity(4));
    }

    #[test]
    fn act_matches_conjugation() {
        let h = ScaledIntMatrix::from_rows_scaled(
            &[[1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1]],
            1,
        );
        let p = Subspace::from_int_rows(&[[1, 0, 1, 0], [0, 1, 0, 0]]).unwrap();
        let q = p.act(&h).unwrap();
        assert_eq!(q.projector(), &p.projector().conjugate_by(&h).unwrap());
    }
}
