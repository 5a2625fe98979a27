//! The recursive family `C_i` of `2^(i-1)`-dimensional subspaces of
//! `R^(2^i)` built from the signed monomial matrices `Q_i`.
//!
//! `C_1 = {(+0), (0+), (++), (+−)}` and for `i ≥ 2`
//! `C_i = {(I 0), (0 I), diag(P, P), diag(P, P⊥), (I Q) : P ∈ C_(i−1), Q ∈ Q_i}`,
//! with `Q_1 = {(+), (−)}` and `Q_i` obtained by tensoring each member of
//! `Q_(i−1)` on the left with one of four signed 2×2 patterns.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::clifford;
use crate::error::{Error, Result};
use crate::exact::{Dyadic, ScaledIntMatrix};
use crate::grassmann::{
    bound_applicability, confirm_spectrum, power_sums, rankin_bound, report_with_stats, Packing,
    PairStats, Subspace,
};
use crate::report::VerificationReport;

/// The signed monomial matrices `Q_i`, each `2^(i−1) × 2^(i−1)`.
#[derive(Clone, Debug)]
pub struct MonomialFamily {
    pub level: u32,
    pub matrices: Vec<ScaledIntMatrix>,
}

/// `C_i` as a packing in `G(2^i, 2^(i−1))`.
#[derive(Debug)]
pub struct ConstructionFamily {
    pub level: u32,
    pub packing: Packing,
}

impl ConstructionFamily {
    pub fn ambient_dim(&self) -> usize {
        1 << self.level
    }
}

fn check_level(i: u32) -> Result<()> {
    if i < 1 {
        return Err(Error::InvalidLevel { level: i, min: 1 });
    }
    Ok(())
}

/// `diag(+,+)`, `diag(+,−)`, `antidiag(+,+)`, `antidiag(+,−)`.
fn sign_patterns() -> [ScaledIntMatrix; 4] {
    [
        ScaledIntMatrix::from_rows(&[[1, 0], [0, 1]]),
        ScaledIntMatrix::from_rows(&[[1, 0], [0, -1]]),
        ScaledIntMatrix::from_rows(&[[0, 1], [1, 0]]),
        ScaledIntMatrix::from_rows(&[[0, 1], [-1, 0]]),
    ]
}

pub fn build_monomials(i: u32) -> Result<MonomialFamily> {
    check_level(i)?;
    let mut matrices = vec![
        ScaledIntMatrix::from_rows(&[[1]]),
        ScaledIntMatrix::from_rows(&[[-1]]),
    ];
    for _ in 2..=i {
        let patterns = sign_patterns();
        matrices = patterns
            .iter()
            .flat_map(|pat| matrices.iter().map(move |q| pat.kron(q)))
            .collect();
    }
    Ok(MonomialFamily { level: i, matrices })
}

/// `2^(2i) + 2^i − 2`.
pub fn family_count(i: u32) -> u128 {
    (1u128 << (2 * i)) + (1u128 << i) - 2
}

/// The count recursion `2 + 2|C_(i−1)| + |Q_i|`, unrolled from `|C_1| = 4`.
pub fn induction_count(i: u32) -> u128 {
    let mut count = 4u128;
    for level in 2..=i {
        count = 2 + 2 * count + (1u128 << (2 * level - 1));
    }
    count
}

fn identity_zero(n: usize, left: bool) -> Result<ScaledIntMatrix> {
    let id = ScaledIntMatrix::identity(n);
    let zero = ScaledIntMatrix::zeros(n, n);
    if left {
        id.hstack(&zero)
    } else {
        zero.hstack(&id)
    }
}

/// Generator of `P⊥` for a member of `C_(i−1)`, checked to again have
/// `{−1, 0, +1}` entries and pairwise orthogonal rows.
fn complement_generator(p: &Subspace) -> Result<ScaledIntMatrix> {
    let perp = p.orthogonal_complement()?;
    let g = perp.generator().primitive_rows();
    let unit = g.entries().iter().all(|x| x.abs() <= BigInt::one());
    if !unit || !g.has_orthogonal_rows() {
        return Err(Error::Invariant(format!(
            "complement {g} of {} left the signed-orthogonal class",
            p.generator()
        )));
    }
    Ok(g)
}

fn generators(i: u32) -> Result<Vec<ScaledIntMatrix>> {
    if i == 1 {
        return Ok(vec![
            ScaledIntMatrix::from_rows(&[[1, 0]]),
            ScaledIntMatrix::from_rows(&[[0, 1]]),
            ScaledIntMatrix::from_rows(&[[1, 1]]),
            ScaledIntMatrix::from_rows(&[[1, -1]]),
        ]);
    }
    let n = 1usize << (i - 1);
    let previous = generators(i - 1)?;
    let previous: Vec<Subspace> = previous
        .into_iter()
        .map(Subspace::from_generator)
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(family_count(i) as usize);
    out.push(identity_zero(n, true)?);
    out.push(identity_zero(n, false)?);
    for p in &previous {
        out.push(p.generator().block_diag(p.generator())?);
    }
    for p in &previous {
        out.push(p.generator().block_diag(&complement_generator(p)?)?);
    }
    let id = ScaledIntMatrix::identity(n);
    for q in build_monomials(i)?.matrices {
        out.push(id.hstack(&q)?);
    }
    Ok(out)
}

/// Builds `C_i` and checks its size against both count formulas.
pub fn build_family(i: u32) -> Result<ConstructionFamily> {
    check_level(i)?;
    let subspaces: Vec<Subspace> = generators(i)?
        .into_iter()
        .map(Subspace::from_generator)
        .collect::<Result<_>>()?;
    let packing = Packing::new(subspaces).map_err(|e| match e {
        Error::DuplicateSubspace { first, second } => Error::Invariant(format!(
            "construction rows {first} and {second} give the same subspace"
        )),
        e => e,
    })?;
    let n = packing.len() as u128;
    if n != family_count(i) || n != induction_count(i) {
        return Err(Error::Invariant(format!(
            "C_{i} has {n} members, expected {} (closed form) and {} (recursion)",
            family_count(i),
            induction_count(i)
        )));
    }
    Ok(ConstructionFamily { level: i, packing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every unordered pair, exactly.
    Exhaustive,
    /// Distances from member 0 only, licensed by a machine-checked
    /// transitivity certificate for the group action.
    Transitive,
}

impl SweepMode {
    /// All pairs up to level 5, a single representative beyond.
    pub fn default_for_level(i: u32) -> SweepMode {
        if i <= 5 {
            SweepMode::Exhaustive
        } else {
            SweepMode::Transitive
        }
    }
}

/// The three principal-angle patterns that occur between members of `C_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AngleCase {
    /// all angles π/2
    AllRight,
    /// half 0, half π/2
    HalfZeroHalfRight,
    /// all angles π/4
    AllQuarter,
}

fn case_spectrum(case: AngleCase, n: usize) -> Option<Vec<Dyadic>> {
    match case {
        AngleCase::AllRight => Some(vec![Dyadic::zero(); n]),
        AngleCase::HalfZeroHalfRight if n.is_multiple_of(2) => {
            let mut v = vec![Dyadic::one(); n / 2];
            v.extend(vec![Dyadic::zero(); n / 2]);
            Some(v)
        }
        AngleCase::HalfZeroHalfRight => None,
        AngleCase::AllQuarter => Some(vec![Dyadic::new(1, 1); n]),
    }
}

/// Classifies the principal-angle multiset of a pair into one of the three
/// cases, exactly. `None` if it matches none of them.
pub fn classify_pair(p: &Subspace, q: &Subspace) -> Result<Option<AngleCase>> {
    let n = p.dim();
    let sums = power_sums(p, q)?;
    for case in [
        AngleCase::AllRight,
        AngleCase::HalfZeroHalfRight,
        AngleCase::AllQuarter,
    ] {
        let Some(target) = case_spectrum(case, n) else {
            continue;
        };
        let matches = sums.iter().enumerate().all(|(k, observed)| {
            let expected: Dyadic = target.iter().map(|c| c.pow(k as u32 + 1)).sum();
            *observed == expected
        });
        if matches {
            debug_assert!(confirm_spectrum(p, q, &target).is_ok());
            return Ok(Some(case));
        }
    }
    Ok(None)
}

/// Exact check of the two-distance theorem for `C_i`.
pub fn verify_theorem(i: u32, mode: SweepMode) -> Result<VerificationReport> {
    let family = build_family(i)?;
    let packing = &family.packing;
    let m = family.ambient_dim();
    let n = m / 2;
    let count = packing.len();
    let mut report = VerificationReport::new(format!(
        "C_{i}: {count} subspaces of dimension {n} in R^{m}"
    ));
    report.count = Some(count);

    let expected_count = (m - 1) * (m + 2);
    report.check(
        "count",
        count == expected_count,
        format!("N = {count}, (m-1)(m+2) = {expected_count}"),
    );

    let stats: PairStats = match mode {
        SweepMode::Exhaustive => {
            report.note("exhaustive exact sweep over all pairs");
            packing.pair_stats().clone()
        }
        SweepMode::Transitive => {
            let (cert_report, certificate) = clifford::verify_transitivity(i)?;
            let certified = certificate.is_some();
            report.absorb("transitivity", cert_report);
            if !certified {
                return Ok(report);
            }
            report.note("distances from (I 0) only; the group acts transitively on C_i");
            packing.pair_stats_from_row(0)?
        }
    };
    report.min_squared_distance = stats.min().cloned();
    report.histogram = stats.bins();

    let quarter = Dyadic::new(m as i64, 2);
    let half = Dyadic::new(m as i64, 1);
    let unexpected: Vec<&Dyadic> = stats
        .histogram
        .keys()
        .filter(|d| **d != quarter && **d != half)
        .collect();
    let two_valued = report.check(
        "two-distance spectrum",
        unexpected.is_empty(),
        format!("every d² in {{{quarter}, {half}}}"),
    );
    if !two_valued {
        if let Some((a, b)) = offending_pair(packing, &quarter, &half, mode) {
            report.note(format!(
                "offending pair: {} vs {}",
                packing.get(a).generator(),
                packing.get(b).generator()
            ));
        }
    }

    let bound = rankin_bound(m, n)?;
    let min_ok = stats.min() == Some(&quarter);
    report.check(
        "minimum equals m/4",
        min_ok,
        format!(
            "min d² = {}",
            stats.min().map_or("-".into(), |d| d.to_string())
        ),
    );
    report.check(
        "bound attained",
        stats.min().map(Dyadic::to_rational) == Some(bound.clone()),
        format!("n(m-n)/m = {bound}"),
    );
    let app = bound_applicability(m, n, count);
    report.check(
        "bound applicable and equality admissible",
        app.applicable && app.equality_possible,
        format!(
            "N > m(m+1)/2: {}, N <= (m-1)(m+2): {}",
            app.applicable, app.equality_possible
        ),
    );
    report.bound = report_with_stats(packing, &stats, "").bound;

    let pairs: Vec<(usize, usize)> = if i <= 3 {
        (0..count)
            .flat_map(|a| (a + 1..count).map(move |b| (a, b)))
            .collect()
    } else {
        (1..count).map(|b| (0, b)).collect()
    };
    let mut tally = std::collections::BTreeMap::new();
    let mut unmatched = None;
    for &(a, b) in &pairs {
        match classify_pair(packing.get(a), packing.get(b))? {
            Some(case) => *tally.entry(case).or_insert(0usize) += 1,
            None => {
                unmatched.get_or_insert((a, b));
            }
        }
    }
    let angles_ok = report.check(
        "principal-angle cases",
        unmatched.is_none(),
        format!("{} pairs checked: {:?}", pairs.len(), tally),
    );
    if !angles_ok {
        let (a, b) = unmatched.expect("failure implies a pair");
        report.note(format!(
            "pair outside the three angle cases: {} vs {}",
            packing.get(a).generator(),
            packing.get(b).generator()
        ));
    }
    Ok(report)
}

fn offending_pair(
    p: &Packing,
    quarter: &Dyadic,
    half: &Dyadic,
    mode: SweepMode,
) -> Option<(usize, usize)> {
    let ok = |a: usize, b: usize| {
        let d = crate::grassmann::squared_distance(p.get(a), p.get(b)).ok();
        d.as_ref() == Some(quarter) || d.as_ref() == Some(half)
    };
    match mode {
        SweepMode::Transitive => (1..p.len()).find(|&b| !ok(0, b)).map(|b| (0, b)),
        SweepMode::Exhaustive => (0..p.len())
            .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
            .find(|&(a, b)| !ok(a, b)),
    }
}

/// Whether a generator has only `{−1, 0, +1}` entries and no zero row.
pub fn is_signed_generator(g: &ScaledIntMatrix) -> bool {
    g.sqrt2_exponent() == 0
        && g.entries().iter().all(|x| x.abs() <= BigInt::one())
        && (0..g.rows()).all(|r| g.row(r).iter().any(|x| !x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn monomial_counts() {
        assert_eq!(build_monomials(1).unwrap().matrices.len(), 2);
        let q2 = build_monomials(2).unwrap().matrices;
        assert_eq!(q2.len(), 8);
        assert_eq!(q2.iter().collect::<HashSet<_>>().len(), 8);
        assert_eq!(build_monomials(4).unwrap().matrices.len(), 128);
        assert!(build_monomials(0).is_err());
    }

    #[test]
    fn monomials_are_signed_permutations() {
        for q in build_monomials(3).unwrap().matrices {
            assert!(q.is_orthogonal());
            for r in 0..q.rows() {
                assert_eq!(q.row(r).iter().filter(|x| !x.is_zero()).count(), 1);
            }
        }
    }

    #[test]
    fn counts_agree() {
        for i in 1..=8 {
            assert_eq!(family_count(i), induction_count(i));
        }
        assert_eq!(family_count(5), 1054);
    }

    #[test]
    fn small_families() {
        assert_eq!(build_family(1).unwrap().packing.len(), 4);
        assert_eq!(build_family(2).unwrap().packing.len(), 18);
        assert_eq!(build_family(3).unwrap().packing.len(), 70);
        assert!(matches!(build_family(0), Err(Error::InvalidLevel { .. })));
    }

    #[test]
    fn member_order_is_fixed() {
        let f = build_family(2).unwrap();
        let g = |k: usize| f.packing.get(k).generator().clone();
        assert_eq!(
            g(0),
            ScaledIntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0]])
        );
        assert_eq!(
            g(1),
            ScaledIntMatrix::from_rows(&[[0, 0, 1, 0], [0, 0, 0, 1]])
        );
        assert_eq!(
            g(2),
            ScaledIntMatrix::from_rows(&[[1, 0, 0, 0], [0, 0, 1, 0]])
        );
        // diag(P, P⊥) with P = (++)
        assert_eq!(
            g(8),
            ScaledIntMatrix::from_rows(&[[1, 1, 0, 0], [0, 0, 1, -1]])
        );
        assert_eq!(
            g(10),
            ScaledIntMatrix::from_rows(&[[1, 0, 1, 0], [0, 1, 0, 1]])
        );
    }

    #[test]
    fn theorem_small_levels() {
        for i in 1..=3 {
            let r = verify_theorem(i, SweepMode::Exhaustive).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn generators_are_signed_with_orthogonal_rows() {
        for i in 1..=4 {
            let f = build_family(i).unwrap();
            for s in f.packing.subspaces() {
                assert!(is_signed_generator(s.generator()));
                assert!(s.generator().has_orthogonal_rows());
                assert_eq!(s.dim(), 1 << (i - 1));
            }
        }
    }
}
