use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::iso::ConstantResult;
use crate::lambda_inf::LambdaInfBracket;
use crate::spectra::SpectralReport;
use crate::value::Quantity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::NotApplicable => "not-applicable",
        }
    }
}

/// Right-hand side: a single bound, or both ends of a two-sided inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Bound {
    Single(Quantity),
    Range { lower: Quantity, upper: Quantity },
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Single(q) => write!(f, "{q}"),
            Bound::Range { lower, upper } => write!(f, "{lower}..{upper}"),
        }
    }
}

/// For one-sided entries `margin = lhs − rhs`. Two-sided entries report the
/// smaller slack, `min(lhs − lower, upper − lhs)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub lhs: Option<Quantity>,
    pub rhs: Option<Bound>,
    pub margin: Option<Quantity>,
    pub citation: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub(crate) fn bare(id: &str, citation: &str, status: Status, note: Option<String>) -> Self {
        Verdict {
            id: id.to_string(),
            status,
            lhs: None,
            rhs: None,
            margin: None,
            citation: citation.to_string(),
            notes: note.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl Counts {
    pub fn tally<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Self {
        let mut c = Counts::default();
        for v in verdicts {
            match v.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Inconclusive => c.inconclusive += 1,
                Status::NotApplicable => c.not_applicable += 1,
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub loops: usize,
    pub regular_degree: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub class: String,
    pub signature: String,
    pub measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub caps: crate::config::Caps,
    pub config: RunConfig,
    pub instance: InstanceSummary,
    pub counts: Counts,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, Quantity>,
    pub constants: Vec<ConstantResult>,
    pub spectra: Vec<SpectralReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_inf: Option<LambdaInfBracket>,
    /// Computations that failed upstream (cap exceeded, isolated vertex, ...).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn has_fail(&self) -> bool {
        self.counts.fail > 0
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub const CSV_HEADER: [&str; 8] = ["instance", "id", "status", "lhs", "rhs", "margin", "citation", "notes"];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn verdict_record(instance: &str, v: &Verdict) -> [String; 8] {
    [
        instance.to_string(),
        v.id.clone(),
        v.status.as_str().to_string(),
        opt(&v.lhs),
        opt(&v.rhs),
        opt(&v.margin),
        v.citation.clone(),
        v.notes.join("; "),
    ]
}

/// One row per (instance, id).
pub fn reports_to_csv<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        for v in &r.verdicts {
            w.write_record(verdict_record(&r.instance.name, v)).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
