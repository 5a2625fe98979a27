use std::sync::OnceLock;

use proptest::prelude::*;

use grasspack::clifford::{hadamard, make_generators, GeneratorSet};
use grasspack::construction::{build_family, ConstructionFamily};
use grasspack::exact::{Dyadic, RationalMatrix, ScaledIntMatrix};
use grasspack::grassmann::{principal_angles_f64, squared_distance};

const FLOAT_TOLERANCE: f64 = 1e-10;

fn family(i: u32) -> &'static ConstructionFamily {
    static CACHE: OnceLock<Vec<ConstructionFamily>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=5).map(|i| build_family(i).unwrap()).collect())[i as usize - 1]
}

fn gens(i: u32) -> &'static GeneratorSet {
    static CACHE: OnceLock<Vec<GeneratorSet>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=5).map(|i| make_generators(i).unwrap()).collect())[i as usize - 1]
}

#[test]
fn projectors_are_idempotent_symmetric_with_trace_n() {
    for i in 1..=5 {
        let f = family(i);
        let n = f.ambient_dim() / 2;
        for s in f.packing.subspaces() {
            let p = s.projector();
            assert!(p.is_symmetric());
            assert_eq!(&p.mul(p).unwrap(), p);
            assert_eq!(p.trace().unwrap(), Dyadic::from_int(n as i64));
        }
    }
}

#[test]
fn projector_and_complement_sum_to_identity() {
    for i in 1..=4 {
        let f = family(i);
        let id = RationalMatrix::identity(f.ambient_dim());
        for s in f.packing.subspaces() {
            let perp = s.orthogonal_complement().unwrap();
            assert_eq!(s.projector().add(perp.projector()).unwrap(), id);
        }
    }
}

#[test]
fn every_member_sees_the_same_distance_profile() {
    for i in 1..=4 {
        let p = &family(i).packing;
        let first = p.row_histogram(0);
        for k in 1..p.len() {
            assert_eq!(p.row_histogram(k), first, "level {i}, member {k}");
        }
    }
}

#[test]
fn hadamard_square_identities() {
    for i in 1..=5 {
        let h = hadamard(i);
        let m = 1usize << i;
        assert!(h.mat_mul(&h).unwrap().is_identity());
        let root2_h = ScaledIntMatrix::new(m, m, h.entries().to_vec(), 0).unwrap();
        let sq = root2_h.mat_mul(&root2_h).unwrap();
        for r in 0..m {
            for c in 0..m {
                let want = if r == c { 2 } else { 0 };
                assert_eq!(sq.get(r, c), &want.into());
            }
        }
    }
}

fn invariance_probe(i: u32, a: usize, b: usize, word: &[usize]) -> Result<(), TestCaseError> {
    let p = &family(i).packing;
    let gens = gens(i);
    let (a, b) = (a % p.len(), b % p.len());
    let word: Vec<usize> = word.iter().map(|w| w % gens.len()).collect();
    let g = gens.evaluate(&word).unwrap().matrix;
    prop_assert!(g.is_orthogonal());
    let before = squared_distance(p.get(a), p.get(b)).unwrap();
    let pa = p.get(a).act(&g).unwrap();
    let pb = p.get(b).act(&g).unwrap();
    prop_assert_eq!(squared_distance(&pa, &pb).unwrap(), before);
    prop_assert_eq!(
        pa.projector(),
        &p.get(a).projector().conjugate_by(&g).unwrap()
    );
    // the image is again a member of the family
    prop_assert!(p.contains(&pa));
    Ok(())
}

fn float_probe(i: u32, a: usize, b: usize) -> Result<(), TestCaseError> {
    let p = &family(i).packing;
    let (a, b) = (a % p.len(), b % p.len());
    let exact = squared_distance(p.get(a), p.get(b)).unwrap().to_f64();
    let angles = principal_angles_f64(p.get(a), p.get(b)).unwrap();
    let float: f64 = angles.iter().map(|t| t.sin().powi(2)).sum();
    prop_assert!(
        (exact - float).abs() < FLOAT_TOLERANCE,
        "{} vs {}",
        exact,
        float
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn distance_invariance_level_2(a in 0usize..1 << 16, b in 0usize..1 << 16, w in prop::collection::vec(0usize..16, 1..12)) {
        invariance_probe(2, a, b, &w)?;
    }

    #[test]
    fn distance_invariance_level_3(a in 0usize..1 << 16, b in 0usize..1 << 16, w in prop::collection::vec(0usize..16, 1..16)) {
        invariance_probe(3, a, b, &w)?;
    }

    #[test]
    fn distance_invariance_level_4(a in 0usize..1 << 16, b in 0usize..1 << 16, w in prop::collection::vec(0usize..16, 1..20)) {
        invariance_probe(4, a, b, &w)?;
    }

    #[test]
    fn distance_invariance_level_5(a in 0usize..1 << 16, b in 0usize..1 << 16, w in prop::collection::vec(0usize..16, 1..20)) {
        invariance_probe(5, a, b, &w)?;
    }

    #[test]
    fn float_distance_agrees(i in 1u32..=5, a in 0usize..1 << 16, b in 0usize..1 << 16) {
        float_probe(i, a, b)?;
    }
}
