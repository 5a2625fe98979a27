use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Dyadic;

/// One named pass/fail item of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub squared_distance: Dyadic,
    pub pairs: u64,
}

/// Comparison of an observed minimum squared distance with `n(m−n)/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    /// `n(m−n)/m` rendered as `p/q`.
    pub bound: String,
    /// Bound minus observed minimum, as `p/q`.
    pub gap: String,
    pub meets_bound: bool,
    pub bound_applicable: bool,
    pub equality_possible: bool,
}

/// Structured record of a verification run. Exact values serialize as
/// `p/q` strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_squared_distance: Option<Dyadic>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub histogram: Vec<HistogramBin>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundComparison>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            passed: true,
            ..Default::default()
        }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        self.passed &= passed;
        passed
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.check(format!("{prefix}: {}", c.name), c.passed, c.detail);
        }
        self.notes.extend(other.notes);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}]",
            self.title,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {}: {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        if let Some(n) = self.count {
            writeln!(f, "  count: {n}")?;
        }
        if let Some(d) = &self.min_squared_distance {
            writeln!(f, "  min d²: {d}")?;
        }
        if !self.histogram.is_empty() {
            let bins: Vec<String> = self
                .histogram
                .iter()
                .map(|b| format!("{}: {}", b.squared_distance, b.pairs))
                .collect();
            writeln!(f, "  d² histogram: {{{}}}", bins.join(", "))?;
        }
        if let Some(b) = &self.bound {
            writeln!(
                f,
                "  bound n(m-n)/m = {} ({}; gap {})",
                b.bound,
                if b.meets_bound { "met" } else { "not met" },
                b.gap
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
