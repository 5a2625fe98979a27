//! JSON and CSV serialization of packings.
//!
//! Output is a pure function of the packing: no timestamps, fixed member
//! order, canonical generator forms.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Dyadic, ScaledIntMatrix};
use crate::grassmann::{Packing, PairStats, Subspace};
use crate::report::HistogramBin;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportMeta {
    pub tool: String,
    pub tool_version: String,
}

impl Default for ExportMeta {
    fn default() -> Self {
        ExportMeta {
            tool: "grasspack".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub name: String,
    pub i: u32,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedSubspace {
    pub rows: Vec<Vec<i64>>,
    pub sqrt2_exponent: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_squared_distance: Option<Dyadic>,
    pub histogram: Vec<HistogramBin>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub format_version: String,
    pub meta: ExportMeta,
    pub family: FamilyDescriptor,
    pub subspaces: Vec<ExportedSubspace>,
    pub summary: ExportSummary,
}

fn exported(s: &Subspace) -> Result<ExportedSubspace> {
    let g = s.generator();
    let rows = (0..g.rows())
        .map(|r| {
            g.row(r)
                .iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Numeric("entry exceeds i64".into()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(ExportedSubspace {
        rows,
        sqrt2_exponent: g.sqrt2_exponent(),
    })
}

impl ExportRecord {
    /// `stats` fills the summary; pass `None` to leave it empty.
    pub fn new(
        name: &str,
        i: u32,
        packing: &Packing,
        stats: Option<&PairStats>,
    ) -> Result<ExportRecord> {
        let subspaces = packing
            .subspaces()
            .iter()
            .map(exported)
            .collect::<Result<_>>()?;
        let summary = stats.map_or_else(ExportSummary::default, |s| ExportSummary {
            min_squared_distance: s.min().cloned(),
            histogram: s.bins(),
        });
        Ok(ExportRecord {
            format_version: FORMAT_VERSION.into(),
            meta: ExportMeta::default(),
            family: FamilyDescriptor {
                name: name.into(),
                i,
                m: packing.ambient_dim(),
                n: packing.dim(),
                count: packing.len(),
            },
            subspaces,
            summary,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<ExportRecord> {
        let rec: ExportRecord = serde_json::from_str(text)?;
        if rec.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {:?}",
                rec.format_version
            )));
        }
        Ok(rec)
    }

    /// Rebuilds the packing, recomputing every projector.
    pub fn to_packing(&self) -> Result<Packing> {
        let subspaces = self
            .subspaces
            .iter()
            .map(|s| {
                let g = ScaledIntMatrix::from_rows_scaled(&s.rows, s.sqrt2_exponent);
                Subspace::from_generator(g)
            })
            .collect::<Result<Vec<_>>>()?;
        let packing = Packing::new(subspaces)?;
        if packing.len() != self.family.count
            || packing.ambient_dim() != self.family.m
            || packing.dim() != self.family.n
        {
            return Err(Error::Parse(
                "family descriptor disagrees with the subspaces".into(),
            ));
        }
        Ok(packing)
    }
}

/// One CSV row per generator row: `subspace_index,row_index,c0,…`. The
/// common `√2` scale of a generator does not change its row space and is
/// not written.
pub fn write_csv<W: Write>(packing: &Packing, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["subspace_index".to_string(), "row_index".to_string()];
    header.extend((0..packing.ambient_dim()).map(|c| format!("c{c}")));
    w.write_record(&header)?;
    for (k, s) in packing.subspaces().iter().enumerate() {
        for (r, row) in exported(s)?.rows.iter().enumerate() {
            let mut rec = vec![k.to_string(), r.to_string()];
            rec.extend(row.iter().map(|x| x.to_string()));
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Packing> {
    let mut rd = csv::Reader::from_reader(input);
    let mut rows: BTreeMap<usize, BTreeMap<usize, Vec<i64>>> = BTreeMap::new();
    for rec in rd.records() {
        let rec = rec?;
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        if rec.len() < 3 {
            return Err(Error::Parse("CSV row has no entries".into()));
        }
        let k = parse(&rec[0])? as usize;
        let r = parse(&rec[1])? as usize;
        let entries = rec.iter().skip(2).map(parse).collect::<Result<Vec<_>>>()?;
        rows.entry(k).or_default().insert(r, entries);
    }
    let subspaces = rows
        .into_values()
        .map(|g| Subspace::from_int_rows(&g.into_values().collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    Packing::new(subspaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_family;

    #[test]
    fn json_round_trip_preserves_projectors() {
        let fam = build_family(2).unwrap();
        let rec =
            ExportRecord::new("main", 2, &fam.packing, Some(fam.packing.pair_stats())).unwrap();
        let text = rec.to_json().unwrap();
        assert!(text.contains("\"min_squared_distance\": \"1\""));
        assert!(text.contains("\"N\": 18"));
        let back = ExportRecord::from_json(&text).unwrap();
        assert_eq!(back, rec);
        let p = back.to_packing().unwrap();
        for k in 0..p.len() {
            assert_eq!(p.get(k).projector(), fam.packing.get(k).projector());
        }
    }

    #[test]
    fn csv_round_trip_preserves_projectors() {
        let fam = build_family(3).unwrap();
        let mut buf = Vec::new();
        write_csv(&fam.packing, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("subspace_index,row_index,c0,"));
        let p = read_csv(buf.as_slice()).unwrap();
        assert_eq!(p.len(), 70);
        for k in 0..p.len() {
            assert_eq!(p.get(k).projector(), fam.packing.get(k).projector());
        }
    }

    #[test]
    fn wrong_version_is_rejected() {
        let fam = build_family(1).unwrap();
        let mut rec = ExportRecord::new("main", 1, &fam.packing, None).unwrap();
        rec.format_version = "0".into();
        let text = rec.to_json().unwrap();
        assert!(matches!(
            ExportRecord::from_json(&text),
            Err(Error::Parse(_))
        ));
    }
}
