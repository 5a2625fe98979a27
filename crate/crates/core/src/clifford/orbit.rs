use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use super::{make_generators, GeneratorSet};
use crate::construction::build_family;
use crate::error::{Error, Result};
use crate::grassmann::{Packing, Subspace};
use crate::report::VerificationReport;

/// An orbit `seed · G` together with a generator word reaching each member.
#[derive(Debug)]
pub struct OrbitResult {
    pub seed: Subspace,
    pub members: Packing,
    /// `words[k]` lists generator indices with `seed · g_{w_0} · g_{w_1} · … = members[k]`.
    pub words: Vec<Vec<usize>>,
}

fn key(s: &Subspace) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

/// Breadth-first orbit under the right action `Π ↦ gᵀΠg`.
///
/// Images of each layer are computed in parallel; deduplication runs in
/// layer order, so member order is deterministic. Fails once the orbit
/// would exceed `limit` members.
pub fn subspace_orbit(seed: &Subspace, gens: &GeneratorSet, limit: usize) -> Result<OrbitResult> {
    if seed.ambient_dim() != gens.dim() {
        return Err(Error::DimensionMismatch {
            op: "subspace_orbit",
            left: (seed.dim(), seed.ambient_dim()),
            right: (gens.dim(), gens.dim()),
        });
    }
    if limit == 0 {
        return Err(Error::OrbitLimitExceeded { limit });
    }
    let mut members = vec![seed.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut lookup: HashMap<u64, Vec<usize>> = HashMap::new();
    lookup.insert(key(seed), vec![0]);
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let images: Vec<(usize, usize, Subspace)> = frontier
            .clone()
            .into_par_iter()
            .flat_map_iter(|k| (0..gens.len()).map(move |g| (k, g)))
            .map(|(k, g)| members[k].act(gens.matrix(g)).map(|s| (k, g, s)))
            .collect::<Result<_>>()?;
        let start = members.len();
        for (k, g, s) in images {
            let bucket = lookup.entry(key(&s)).or_default();
            if bucket.iter().any(|&j| members[j] == s) {
                continue;
            }
            if members.len() >= limit {
                return Err(Error::OrbitLimitExceeded { limit });
            }
            bucket.push(members.len());
            let mut w = words[k].clone();
            w.push(g);
            words.push(w);
            members.push(s);
        }
        frontier = start..members.len();
    }
    Ok(OrbitResult {
        seed: seed.clone(),
        members: Packing::new(members)?,
        words,
    })
}

/// Evidence that `G_i` permutes `C_i` transitively: a word carrying `(I 0)`
/// to each member, indexed like the family.
#[derive(Clone, Debug)]
pub struct TransitivityCertificate {
    pub level: u32,
    pub generator_names: Vec<String>,
    pub words: Vec<Vec<usize>>,
}

/// Computes the orbit of `(I 0)` and compares it with `C_i` as sets.
pub fn verify_transitivity(
    i: u32,
) -> Result<(VerificationReport, Option<TransitivityCertificate>)> {
    let family = build_family(i)?;
    let gens = make_generators(i)?;
    let seed = family.packing.get(0).clone();
    let mut report = VerificationReport::new(format!("G_{i} acts transitively on C_{i}"));
    let limit = 2 * family.packing.len() + 1;
    let orbit = match subspace_orbit(&seed, &gens, limit) {
        Ok(o) => o,
        Err(Error::OrbitLimitExceeded { .. }) => {
            report.check(
                "orbit equals family",
                false,
                format!("orbit exceeds {limit} members"),
            );
            return Ok((report, None));
        }
        Err(e) => return Err(e),
    };
    let missing = family.packing.missing_from(&orbit.members);
    let extra = orbit.members.missing_from(&family.packing);
    report.count = Some(orbit.members.len());
    let equal = report.check(
        "orbit equals family",
        missing.is_empty() && extra.is_empty(),
        format!(
            "|orbit| = {}, |C_{i}| = {}, {} family members missing, {} extra orbit members",
            orbit.members.len(),
            family.packing.len(),
            missing.len(),
            extra.len()
        ),
    );
    for &k in missing.iter().take(3) {
        report.note(format!(
            "not in orbit: {}",
            family.packing.get(k).generator()
        ));
    }
    for &k in extra.iter().take(3) {
        report.note(format!(
            "not in family: {}",
            orbit.members.get(k).generator()
        ));
    }
    if !equal {
        return Ok((report, None));
    }
    let words = (0..family.packing.len())
        .map(|k| {
            let j = orbit
                .members
                .index_of(family.packing.get(k))
                .expect("sets are equal");
            orbit.words[j].clone()
        })
        .collect();
    let cert = TransitivityCertificate {
        level: i,
        generator_names: gens.elements.iter().map(|g| g.name.clone()).collect(),
        words,
    };
    Ok((report, Some(cert)))
}
