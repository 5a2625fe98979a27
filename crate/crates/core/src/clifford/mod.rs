//! The real Clifford group `G_i ⊂ O(2^i)` generated by the affine
//! permutation matrices `π_{A,b}` and the Hadamard block matrix `H`.
//!
//! Coordinates are indexed by binary `i`-tuples `(x_1, …, x_i)` in
//! lexicographic order, so `x_1` is the most significant bit of the index.
//! The group acts on row vectors and generator matrices from the right.

mod orbit;
mod perm_rep;
mod schreier;

pub use orbit::{subspace_orbit, verify_transitivity, OrbitResult, TransitivityCertificate};
pub use perm_rep::{permutation_representation, PermutationRep};
pub use schreier::StabilizerChain;

use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::ScaledIntMatrix;

/// An exact orthogonal matrix, optionally with the generator word that
/// produced it. Equality and hashing look at the matrix only.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: ScaledIntMatrix,
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn new(matrix: ScaledIntMatrix) -> Result<Self> {
        if !matrix.is_orthogonal() {
            return Err(Error::Invariant(format!("{matrix} is not orthogonal")));
        }
        Ok(GroupElement {
            matrix,
            word: Vec::new(),
        })
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: GroupElement,
}

/// A finite generating set of `G_i`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub level: u32,
    pub elements: Vec<NamedGenerator>,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        1 << self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrix(&self, idx: usize) -> &ScaledIntMatrix {
        &self.elements[idx].element.matrix
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ScaledIntMatrix> {
        self.elements.iter().map(|g| &g.element.matrix)
    }

    /// Product `g_{w_0} · g_{w_1} · …` in word order.
    pub fn evaluate(&self, word: &[usize]) -> Result<GroupElement> {
        let mut m = ScaledIntMatrix::identity(self.dim());
        for &w in word {
            m = m.mat_mul(self.matrix(w))?;
        }
        Ok(GroupElement {
            matrix: m,
            word: word.to_vec(),
        })
    }
}

/// An invertible affine map `x ↦ Ax + b` of `F_2^i`.
///
/// `a_rows[t]` holds row `t` of `A` as a bit mask in the same bit layout as
/// the coordinate indices (`x_1` is bit `i−1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub level: u32,
    pub a_rows: Vec<u32>,
    pub b: u32,
}

impl AffineMap {
    pub fn apply(&self, x: u32) -> u32 {
        let i = self.level;
        let mut y = 0u32;
        for (t, row) in self.a_rows.iter().enumerate() {
            let bit = (row & x).count_ones() & 1;
            y |= bit << (i - 1 - t as u32);
        }
        y ^ self.b
    }

    /// The permutation matrix with a 1 at `(x, Ax + b)`.
    pub fn matrix(&self) -> Result<ScaledIntMatrix> {
        let m = 1usize << self.level;
        let images: Vec<u32> = (0..m as u32).map(|x| self.apply(x)).collect();
        let mut seen = vec![false; m];
        for &y in &images {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::Invariant(format!("{self:?} is not invertible")));
            }
        }
        let mut rows = vec![vec![0i64; m]; m];
        for (x, &y) in images.iter().enumerate() {
            rows[x][y as usize] = 1;
        }
        Ok(ScaledIntMatrix::from_rows(&rows))
    }

    /// All `|AGL(i, 2)|` affine maps (practical for small `i`).
    pub fn all(level: u32) -> Vec<AffineMap> {
        let i = level as usize;
        let mut out = Vec::new();
        let total_rows = 1u64 << (i * i);
        for code in 0..total_rows {
            let a_rows: Vec<u32> = (0..i)
                .map(|t| ((code >> (t * i)) & ((1 << i) - 1)) as u32)
                .collect();
            let linear = AffineMap {
                level,
                a_rows: a_rows.clone(),
                b: 0,
            };
            let mut seen = vec![false; 1 << i];
            let bijective = (0..1u32 << i)
                .all(|x| !std::mem::replace(&mut seen[linear.apply(x) as usize], true));
            if !bijective {
                continue;
            }
            for b in 0..1u32 << i {
                out.push(AffineMap {
                    level,
                    a_rows: a_rows.clone(),
                    b,
                });
            }
        }
        out
    }
}

fn identity_rows(i: u32) -> Vec<u32> {
    (0..i).map(|t| 1 << (i - 1 - t)).collect()
}

/// `diag(H_2, …, H_2)`: `H_2 = (1/√2)(+ +; + −)` on each coordinate pair
/// differing in `x_i`.
pub fn hadamard(i: u32) -> ScaledIntMatrix {
    let h2 = ScaledIntMatrix::from_rows_scaled(&[[1, 1], [1, -1]], 1);
    ScaledIntMatrix::identity(1 << (i - 1)).kron(&h2)
}

/// `diag(H_4, …, H_4)` with `H_4 = H_2 ⊗ H_2`, for `i ≥ 2`.
pub fn hadamard4(i: u32) -> Result<ScaledIntMatrix> {
    if i < 2 {
        return Err(Error::InvalidLevel { level: i, min: 2 });
    }
    let h2 = ScaledIntMatrix::from_rows_scaled(&[[1, 1], [1, -1]], 1);
    Ok(ScaledIntMatrix::identity(1 << (i - 2)).kron(&h2.kron(&h2)))
}

/// Translation `x ↦ x + e_1`, the cyclic coordinate shift
/// `(x_1, …, x_i) ↦ (x_i, x_1, …, x_(i−1))`, the transvection
/// `x_1 ↦ x_1 + x_2`, and `H`. The two linear maps generate `GL(i, 2)`, and
/// with one translation all of `AGL(i, 2)`; for `i = 1` the linear part is
/// trivial and omitted.
pub fn make_generators(i: u32) -> Result<GeneratorSet> {
    if i < 1 {
        return Err(Error::InvalidLevel { level: i, min: 1 });
    }
    let id = identity_rows(i);
    let mut maps = vec![(
        "translate_e1",
        AffineMap {
            level: i,
            a_rows: id.clone(),
            b: 1 << (i - 1),
        },
    )];
    if i >= 2 {
        // new x_1 = old x_i, new x_t = old x_(t−1)
        let mut cycle = vec![1u32];
        cycle.extend((0..i - 1).map(|t| 1u32 << (i - 1 - t)));
        maps.push((
            "cycle",
            AffineMap {
                level: i,
                a_rows: cycle,
                b: 0,
            },
        ));
        let mut transvection = id.clone();
        transvection[0] |= 1 << (i - 2);
        maps.push((
            "transvection",
            AffineMap {
                level: i,
                a_rows: transvection,
                b: 0,
            },
        ));
    }
    let mut elements = Vec::new();
    for (name, map) in maps {
        elements.push(NamedGenerator {
            name: name.into(),
            element: GroupElement::new(map.matrix()?)?,
        });
    }
    elements.push(NamedGenerator {
        name: "H".into(),
        element: GroupElement::new(hadamard(i))?,
    });
    Ok(GeneratorSet { level: i, elements })
}

/// `|H_i| = 2^(2i+1) · 2^(i(i−1)) · (2^i − 1) · ∏_{j=1}^{i−1} (4^j − 1)`;
/// the full group `G_i` is twice as large.
pub fn order_formula(i: u32) -> BigUint {
    let one = BigUint::one();
    let mut order =
        (&one << (2 * i + 1)) * (&one << (i * (i.saturating_sub(1)))) * ((&one << i) - &one);
    for j in 1..i {
        order *= (&one << (2 * j)) - &one;
    }
    order
}

/// Order of `G_i` from a faithful permutation representation.
pub fn group_order(rep: &PermutationRep) -> Result<BigUint> {
    Ok(StabilizerChain::from_rep(rep)?.order())
}
