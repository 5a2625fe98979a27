use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_rational::BigRational;
use rayon::prelude::*;

use super::{bound_applicability, rankin_bound, squared_distance, Subspace};
use crate::error::{Error, Result};
use crate::exact::Dyadic;
use crate::report::{BoundComparison, HistogramBin, VerificationReport};

/// Multiset of exact squared distances over unordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairStats {
    pub histogram: BTreeMap<Dyadic, u64>,
}

impl PairStats {
    pub fn min(&self) -> Option<&Dyadic> {
        self.histogram.keys().next()
    }

    pub fn max(&self) -> Option<&Dyadic> {
        self.histogram.keys().next_back()
    }

    pub fn pairs(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn bins(&self) -> Vec<HistogramBin> {
        self.histogram
            .iter()
            .map(|(d, &c)| HistogramBin {
                squared_distance: d.clone(),
                pairs: c,
            })
            .collect()
    }

    fn merge(mut self, other: PairStats) -> PairStats {
        for (d, c) in other.histogram {
            *self.histogram.entry(d).or_insert(0) += c;
        }
        self
    }
}

/// A finite set of distinct subspaces of one Grassmannian `G(m, n)`.
#[derive(Debug)]
pub struct Packing {
    ambient_dim: usize,
    dim: usize,
    subspaces: Vec<Subspace>,
    lookup: HashMap<u64, Vec<usize>>,
    pair_stats: OnceLock<PairStats>,
}

fn key(s: &Subspace) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

impl Packing {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Packing> {
        let first = subspaces
            .first()
            .ok_or(Error::TooFewSubspaces { needed: 1, got: 0 })?;
        let (m, n) = (first.ambient_dim(), first.dim());
        let mut lookup: HashMap<u64, Vec<usize>> = HashMap::with_capacity(subspaces.len());
        for (idx, s) in subspaces.iter().enumerate() {
            if s.ambient_dim() != m || s.dim() != n {
                return Err(Error::MixedDimensions(m, n, s.ambient_dim(), s.dim()));
            }
            let bucket = lookup.entry(key(s)).or_default();
            if let Some(&first) = bucket.iter().find(|&&j| subspaces[j] == *s) {
                return Err(Error::DuplicateSubspace { first, second: idx });
            }
            bucket.push(idx);
        }
        Ok(Packing {
            ambient_dim: m,
            dim: n,
            subspaces,
            lookup,
            pair_stats: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, idx: usize) -> &Subspace {
        &self.subspaces[idx]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.lookup
            .get(&key(s))?
            .iter()
            .copied()
            .find(|&j| self.subspaces[j] == *s)
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index_of(s).is_some()
    }

    /// Projector-level set equality, ignoring order.
    pub fn same_set(&self, other: &Packing) -> bool {
        self.len() == other.len() && other.subspaces.iter().all(|s| self.contains(s))
    }

    /// Members of `self` missing from `other`, by index.
    pub fn missing_from(&self, other: &Packing) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !other.contains(&self.subspaces[i]))
            .collect()
    }

    fn d2(&self, i: usize, j: usize) -> Dyadic {
        squared_distance(&self.subspaces[i], &self.subspaces[j]).expect("members share shape")
    }

    /// Squared distances from member `i` to every other member.
    pub fn row_histogram(&self, i: usize) -> BTreeMap<Dyadic, u64> {
        let row = (0..self.len())
            .into_par_iter()
            .filter(|&j| j != i)
            .fold(PairStats::default, |mut acc, j| {
                *acc.histogram.entry(self.d2(i, j)).or_insert(0) += 1;
                acc
            })
            .reduce(PairStats::default, PairStats::merge);
        row.histogram
    }

    /// Exhaustive exact sweep over all unordered pairs (cached).
    pub fn pair_stats(&self) -> &PairStats {
        self.pair_stats.get_or_init(|| {
            let n = self.len();
            (0..n)
                .into_par_iter()
                .flat_map_iter(|i| (i + 1..n).map(move |j| (i, j)))
                .fold(PairStats::default, |mut acc, (i, j)| {
                    *acc.histogram.entry(self.d2(i, j)).or_insert(0) += 1;
                    acc
                })
                .reduce(PairStats::default, PairStats::merge)
        })
    }

    /// Pair statistics extrapolated from the distances of one member.
    ///
    /// Only valid when a group of isometries permuting the packing acts
    /// transitively on it, so every member sees the same distance profile.
    pub fn pair_stats_from_row(&self, i: usize) -> Result<PairStats> {
        let n = self.len() as u64;
        let mut histogram = BTreeMap::new();
        for (d, c) in self.row_histogram(i) {
            let total = c * n;
            if !total.is_multiple_of(2) {
                return Err(Error::Invariant(format!(
                    "row profile of member {i} cannot come from a transitive packing"
                )));
            }
            histogram.insert(d, total / 2);
        }
        Ok(PairStats { histogram })
    }

    pub fn min_squared_distance(&self) -> Option<Dyadic> {
        self.pair_stats().min().cloned()
    }
}

/// Exhaustive report: count, exact min d², histogram, bound comparison.
pub fn packing_report(p: &Packing) -> Result<VerificationReport> {
    if p.len() < 2 {
        return Err(Error::TooFewSubspaces {
            needed: 2,
            got: p.len(),
        });
    }
    Ok(report_with_stats(
        p,
        p.pair_stats(),
        format!(
            "packing of {} subspaces in G({}, {})",
            p.len(),
            p.ambient_dim(),
            p.dim()
        ),
    ))
}

pub fn report_with_stats(
    p: &Packing,
    stats: &PairStats,
    title: impl Into<String>,
) -> VerificationReport {
    let mut report = VerificationReport::new(title);
    report.count = Some(p.len());
    report.min_squared_distance = stats.min().cloned();
    report.histogram = stats.bins();
    if let (Some(min), Ok(bound)) = (stats.min(), rankin_bound(p.ambient_dim(), p.dim())) {
        let min_q = min.to_rational();
        let app = bound_applicability(p.ambient_dim(), p.dim(), p.len());
        let gap: BigRational = &bound - &min_q;
        if app.applicable {
            report.check(
                "bound respected",
                min_q <= bound,
                format!("min d² = {min} against n(m-n)/m = {bound}"),
            );
        }
        report.bound = Some(BoundComparison {
            m: p.ambient_dim(),
            n: p.dim(),
            count: p.len(),
            bound: bound.to_string(),
            gap: gap.to_string(),
            meets_bound: min_q == bound,
            bound_applicable: app.applicable,
            equality_possible: app.equality_possible,
        });
    }
    report
}
