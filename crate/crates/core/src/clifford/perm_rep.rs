use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::exact::{int_rank, ScaledIntMatrix};

/// A vector `entries · (√2)^-k` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Point {
    k: u32,
    entries: Vec<i64>,
}

impl Point {
    fn canonical(mut entries: Vec<i64>, mut k: u32) -> Point {
        if entries.iter().all(|&x| x == 0) {
            return Point { k: 0, entries };
        }
        while k >= 2 && entries.iter().all(|x| x % 2 == 0) {
            entries.iter_mut().for_each(|x| *x /= 2);
            k -= 2;
        }
        Point { k, entries }
    }

    fn from_matrix(v: &ScaledIntMatrix) -> Result<Point> {
        let entries = v
            .entries()
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::Numeric("vector entry exceeds i64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point::canonical(entries, v.sqrt2_exponent()))
    }

    fn to_matrix(&self) -> ScaledIntMatrix {
        ScaledIntMatrix::from_rows_scaled(&[self.entries.as_slice()], self.k)
    }

    fn act(&self, g: &DenseGen) -> Point {
        let m = self.entries.len();
        let mut out = vec![0i64; m];
        for (r, &x) in self.entries.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(c, y) in &g.rows[r] {
                out[c] += x * y;
            }
        }
        Point::canonical(out, self.k + g.k)
    }
}

/// Sparse `i64` copy of a generator for fast vector images.
struct DenseGen {
    rows: Vec<Vec<(usize, i64)>>,
    k: u32,
}

impl DenseGen {
    fn new(g: &ScaledIntMatrix) -> Result<DenseGen> {
        let rows = (0..g.rows())
            .map(|r| {
                g.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != BigInt::from(0))
                    .map(|(c, x)| {
                        x.to_i64()
                            .map(|x| (c, x))
                            .ok_or_else(|| Error::Numeric("generator entry exceeds i64".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseGen {
            rows,
            k: g.sqrt2_exponent(),
        })
    }
}

/// The action of a generating set on the orbit of one vector.
///
/// The domain is sorted canonically, so point indices do not depend on the
/// order in which the orbit was discovered. It spans the ambient space,
/// which makes the action faithful.
pub struct PermutationRep {
    domain: Vec<Point>,
    index: HashMap<Point, u32>,
    /// `images[g][x]` is the index of `domain[x] · g`.
    pub images: Vec<Vec<u32>>,
}

impl PermutationRep {
    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    pub fn domain_vector(&self, x: usize) -> ScaledIntMatrix {
        self.domain[x].to_matrix()
    }

    pub fn index_of(&self, v: &ScaledIntMatrix) -> Option<u32> {
        Point::from_matrix(v)
            .ok()
            .and_then(|p| self.index.get(&p).copied())
    }

    /// The permutation induced by an orthogonal matrix that preserves the
    /// domain.
    pub fn permutation_of(&self, g: &ScaledIntMatrix) -> Result<Vec<u32>> {
        let dg = DenseGen::new(g)?;
        self.domain
            .iter()
            .map(|p| {
                let q = p.act(&dg);
                self.index.get(&q).copied().ok_or_else(|| {
                    Error::Invariant(format!("{} maps the domain outside itself", g))
                })
            })
            .collect()
    }

    /// Domain points in sort order, greedily kept while they raise the rank.
    pub fn spanning_points(&self) -> Vec<u32> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut picked = Vec::new();
        let m = self.domain.first().map_or(0, |p| p.entries.len());
        for (x, p) in self.domain.iter().enumerate() {
            if picked.len() == m {
                break;
            }
            rows.push(p.entries.iter().map(|&e| BigInt::from(e)).collect());
            if int_rank(&rows, m) > picked.len() {
                picked.push(x as u32);
            } else {
                rows.pop();
            }
        }
        picked
    }
}

/// Permutation representation on the orbit of `seed` (a `1×m` matrix).
pub fn permutation_representation(
    gens: &GeneratorSet,
    seed: &ScaledIntMatrix,
    limit: usize,
) -> Result<PermutationRep> {
    let m = gens.dim();
    if seed.shape() != (1, m) {
        return Err(Error::DimensionMismatch {
            op: "permutation_representation",
            left: (1, m),
            right: seed.shape(),
        });
    }
    let dense: Vec<DenseGen> = gens.matrices().map(DenseGen::new).collect::<Result<_>>()?;
    let start = Point::from_matrix(seed)?;
    let mut seen: HashMap<Point, ()> = HashMap::new();
    let mut order = vec![start.clone()];
    seen.insert(start, ());
    let mut head = 0;
    while head < order.len() {
        let p = order[head].clone();
        head += 1;
        for g in &dense {
            let q = p.act(g);
            if !seen.contains_key(&q) {
                if order.len() >= limit {
                    return Err(Error::OrbitLimitExceeded { limit });
                }
                seen.insert(q.clone(), ());
                order.push(q);
            }
        }
    }
    order.sort();
    let index: HashMap<Point, u32> = order
        .iter()
        .enumerate()
        .map(|(x, p)| (p.clone(), x as u32))
        .collect();
    let images = dense
        .iter()
        .map(|g| order.iter().map(|p| index[&p.act(g)]).collect())
        .collect();
    let rep = PermutationRep {
        domain: order,
        index,
        images,
    };
    let rank = rep.spanning_points().len();
    if rank != m {
        return Err(Error::NotFaithful { rank, dim: m });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::make_generators;

    fn e1(m: usize) -> ScaledIntMatrix {
        let mut v = vec![0i64; m];
        v[0] = 1;
        ScaledIntMatrix::from_rows(&[v])
    }

    #[test]
    fn level_one_is_the_octagon() {
        let g = make_generators(1).unwrap();
        let rep = permutation_representation(&g, &e1(2), 100).unwrap();
        assert_eq!(rep.degree(), 8);
        assert_eq!(rep.spanning_points().len(), 2);
        for perm in &rep.images {
            let mut sorted = perm.clone();
            sorted.sort();
            assert_eq!(sorted, (0..8).collect::<Vec<u32>>());
        }
    }

    #[test]
    fn limit_is_enforced() {
        let g = make_generators(2).unwrap();
        assert!(matches!(
            permutation_representation(&g, &e1(4), 5),
            Err(Error::OrbitLimitExceeded { limit: 5 })
        ));
    }

    #[test]
    fn generator_permutations_match() {
        let g = make_generators(2).unwrap();
        let rep = permutation_representation(&g, &e1(4), 1000).unwrap();
        for (idx, m) in g.matrices().enumerate() {
            assert_eq!(rep.permutation_of(m).unwrap(), rep.images[idx]);
        }
        let v = rep.domain_vector(3);
        assert_eq!(rep.index_of(&v), Some(3));
    }
}
