//! Deterministic Schreier–Sims over a fixed spanning base.
//!
//! Because the permutation domain consists of vectors spanning the ambient
//! space and the action is linear, an element fixing every base point is the
//! identity. Sifting therefore only tracks the images of the base points;
//! full permutations are formed only for new strong generators.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::PermutationRep;
use crate::error::{Error, Result};

type Perm = Vec<u32>;

const NONE: u32 = u32::MAX;

fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0u32; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

/// Schreier tree of one base point: `parent[p]` and the strong generator
/// `label[p]` with `parent[p] · label[p] = p`.
#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    parent: Vec<u32>,
    label: Vec<u32>,
    verified: HashSet<(u32, usize)>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Level {
        let mut parent = vec![NONE; degree];
        parent[base_point as usize] = base_point;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            parent,
            label: vec![NONE; degree],
            verified: HashSet::new(),
        }
    }

    fn contains(&self, p: u32) -> bool {
        self.parent[p as usize] != NONE
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn from_rep(rep: &PermutationRep) -> Result<StabilizerChain> {
        let base = rep.spanning_points();
        let mut chain = StabilizerChain {
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: base.iter().map(|&b| Level::new(b, rep.degree())).collect(),
        };
        for g in &rep.images {
            if g.iter().enumerate().all(|(x, &y)| x as u32 == y) {
                continue;
            }
            let first_moved = chain
                .levels
                .iter()
                .position(|l| g[l.base_point as usize] != l.base_point)
                .ok_or_else(|| Error::Invariant("nontrivial generator fixes the base".into()))?;
            chain.add_strong(g.clone(), first_moved);
        }
        chain.complete()?;
        Ok(chain)
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generator_count(&self) -> usize {
        self.strong.len()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Membership test for a permutation of the same domain. The whole
    /// permutation is sifted, so non-linear permutations are rejected too.
    pub fn contains(&self, g: &[u32]) -> bool {
        let mut residue: Vec<u32> = g.to_vec();
        for j in 0..self.levels.len() {
            let beta = residue[self.levels[j].base_point as usize];
            if !self.levels[j].contains(beta) {
                return false;
            }
            for x in residue.iter_mut() {
                *x = self.apply_transversal_inverse(j, beta, *x);
            }
        }
        residue.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// `x · u_p⁻¹` where `u_p` is the tree word from the base point to `p`.
    fn apply_transversal_inverse(&self, level: usize, mut p: u32, mut x: u32) -> u32 {
        let l = &self.levels[level];
        while p != l.base_point {
            let s = l.label[p as usize] as usize;
            x = self.strong_inv[s][x as usize];
            p = l.parent[p as usize];
        }
        x
    }

    /// Strong generator labels along the tree path from the base point to `p`.
    fn transversal_word(&self, level: usize, mut p: u32) -> Vec<usize> {
        let l = &self.levels[level];
        let mut word = Vec::new();
        while p != l.base_point {
            word.push(l.label[p as usize] as usize);
            p = l.parent[p as usize];
        }
        word.reverse();
        word
    }

    fn add_strong(&mut self, g: Perm, depth: usize) {
        let idx = self.strong.len();
        self.strong_inv.push(inverse(&g));
        self.strong.push(g);
        for level in 0..=depth {
            self.levels[level].gens.push(idx);
            self.extend_orbit(level, idx);
        }
    }

    /// Grows the Schreier tree after strong generator `new` joined the level.
    /// Existing tree edges are kept, so transversal words stay fixed.
    fn extend_orbit(&mut self, level: usize, new: usize) {
        let strong = &self.strong;
        let l = &mut self.levels[level];
        let mut queue = Vec::new();
        for idx in 0..l.orbit.len() {
            let p = l.orbit[idx];
            let q = strong[new][p as usize];
            if l.parent[q as usize] == NONE {
                l.parent[q as usize] = p;
                l.label[q as usize] = new as u32;
                l.orbit.push(q);
                queue.push(q);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for &s in &l.gens {
                let q = strong[s][p as usize];
                if l.parent[q as usize] == NONE {
                    l.parent[q as usize] = p;
                    l.label[q as usize] = s as u32;
                    l.orbit.push(q);
                    queue.push(q);
                }
            }
        }
    }

    /// Sifts the Schreier generator `u_p · s · u_{p^s}⁻¹` of `level` through
    /// the lower levels. Returns the residue and the level it dropped out at.
    fn sift_schreier(&self, level: usize, p: u32, s: usize) -> Option<(Vec<(usize, bool)>, usize)> {
        let mut word: Vec<(usize, bool)> = self
            .transversal_word(level, p)
            .into_iter()
            .map(|g| (g, false))
            .collect();
        word.push((s, false));
        let ps = self.strong[s][p as usize];
        let mut imgs: Vec<u32> = self
            .levels
            .iter()
            .map(|l| self.apply_word(&word, l.base_point))
            .collect();
        let mut q = ps;
        let root = self.levels[level].base_point;
        while q != root {
            let lbl = self.levels[level].label[q as usize] as usize;
            word.push((lbl, true));
            q = self.levels[level].parent[q as usize];
        }
        for x in imgs.iter_mut() {
            *x = self.apply_transversal_inverse(level, ps, *x);
        }
        for j in level + 1..self.levels.len() {
            let beta = imgs[j];
            if !self.levels[j].contains(beta) {
                return Some((word, j));
            }
            if beta != self.levels[j].base_point {
                let mut q = beta;
                while q != self.levels[j].base_point {
                    let lbl = self.levels[j].label[q as usize] as usize;
                    word.push((lbl, true));
                    q = self.levels[j].parent[q as usize];
                }
                for x in imgs.iter_mut() {
                    *x = self.apply_transversal_inverse(j, beta, *x);
                }
            }
        }
        None
    }

    fn apply_word(&self, word: &[(usize, bool)], mut x: u32) -> u32 {
        for &(g, inv) in word {
            x = if inv {
                self.strong_inv[g][x as usize]
            } else {
                self.strong[g][x as usize]
            };
        }
        x
    }

    fn materialize(&self, word: &[(usize, bool)]) -> Perm {
        let degree = self.levels[0].parent.len();
        (0..degree as u32)
            .map(|x| self.apply_word(word, x))
            .collect()
    }

    /// Processes levels from the bottom up until every Schreier generator
    /// sifts, adding residues as strong generators.
    fn complete(&mut self) -> Result<()> {
        let mut level = self.levels.len();
        while level > 0 {
            let current = level - 1;
            match self.first_failure(current) {
                None => level = current,
                Some((word, depth)) => {
                    let g = self.materialize(&word);
                    if self.levels[depth].base_point == g[self.levels[depth].base_point as usize] {
                        return Err(Error::Invariant(
                            "residue fixes its drop-out base point".into(),
                        ));
                    }
                    self.add_strong(g, depth);
                    level = depth + 1;
                }
            }
        }
        Ok(())
    }

    fn first_failure(&mut self, level: usize) -> Option<(Vec<(usize, bool)>, usize)> {
        let mut idx = 0;
        while idx < self.levels[level].orbit.len() {
            let p = self.levels[level].orbit[idx];
            for gi in 0..self.levels[level].gens.len() {
                let s = self.levels[level].gens[gi];
                if self.levels[level].verified.contains(&(p, s)) {
                    continue;
                }
                if let Some(fail) = self.sift_schreier(level, p, s) {
                    return Some(fail);
                }
                self.levels[level].verified.insert((p, s));
            }
            idx += 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{make_generators, order_formula, permutation_representation};
    use crate::exact::ScaledIntMatrix;

    fn e1(m: usize) -> ScaledIntMatrix {
        let mut v = vec![0i64; m];
        v[0] = 1;
        ScaledIntMatrix::from_rows(&[v])
    }

    fn chain(i: u32) -> (PermutationRep, StabilizerChain) {
        let g = make_generators(i).unwrap();
        let rep = permutation_representation(&g, &e1(1 << i), 1 << 20).unwrap();
        let c = StabilizerChain::from_rep(&rep).unwrap();
        (rep, c)
    }

    #[test]
    fn small_orders() {
        assert_eq!(chain(1).1.order(), BigUint::from(16u32));
        assert_eq!(chain(2).1.order(), BigUint::from(2304u32));
        assert_eq!(chain(3).1.order(), order_formula(3) * 2u32);
    }

    #[test]
    fn membership() {
        let (rep, c) = chain(2);
        for g in &rep.images {
            assert!(c.contains(g));
        }
        // a transposition of two domain points is not linear
        let mut t: Vec<u32> = (0..rep.degree() as u32).collect();
        t.swap(0, 1);
        assert!(!c.contains(&t));
        let minus = ScaledIntMatrix::from_rows_scaled(
            &[[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
            0,
        );
        assert!(c.contains(&rep.permutation_of(&minus).unwrap()));
    }
}
