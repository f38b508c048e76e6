//! Batch evaluation over a parametrised family of instances.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{Counts, Status, VerificationReport};
use super::{run_suite_with, IdFilter, Instance, Overrides};
use crate::config::{Caps, RunConfig};
use crate::error::{Error, Result};
use crate::value::{parse_rational, Quantity};

pub const PLACEHOLDER: &str = "{n}";

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOptions {
    /// Descriptor containing `{n}`, e.g. `cayley:zn:{n}:1,-1`.
    pub family: String,
    pub start: usize,
    pub end: usize,
    pub step: usize,
    pub ids: IdFilter,
    pub checkpoint: Option<PathBuf>,
}

impl ScanOptions {
    pub fn values(&self) -> Vec<usize> {
        if self.start > self.end {
            return Vec::new();
        }
        (self.start..=self.end).step_by(self.step.max(1)).collect()
    }

    pub fn descriptor(&self, n: usize) -> String {
        self.family.replace(PLACEHOLDER, &n.to_string())
    }
}

/// Margin as stored in checkpoints: exact text or a full-precision float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum StoredMargin {
    Exact(String),
    Float(f64),
}

impl StoredMargin {
    fn from_quantity(q: &Quantity) -> Self {
        match q {
            Quantity::Exact(_) => StoredMargin::Exact(q.to_string()),
            other => StoredMargin::Float(other.approx()),
        }
    }

    fn to_quantity(&self) -> Result<Quantity> {
        match self {
            StoredMargin::Exact(s) => parse_rational(s)
                .map(Quantity::Exact)
                .ok_or_else(|| Error::Parse(format!("bad stored margin {s:?}"))),
            StoredMargin::Float(x) => Ok(Quantity::Float(*x)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct RowRecord {
    id: String,
    status: Status,
    margin: Option<StoredMargin>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct InstanceRecord {
    n: usize,
    descriptor: String,
    rows: Vec<RowRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CheckpointKey {
    family: String,
    start: usize,
    end: usize,
    step: usize,
    seed: u64,
    caps: Caps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Checkpoint {
    key: CheckpointKey,
    done: Vec<InstanceRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdStat {
    pub counts: Counts,
    /// Smallest margin over instances with a margin; for ≤-type entries the
    /// margin is lhs − rhs, so the most negative value is the slackest.
    pub min_margin: Option<Quantity>,
    pub min_instance: Option<String>,
    pub margins: Vec<(String, Quantity)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub range: ScanRange,
    pub seed: u64,
    pub caps: Caps,
    pub instances: Vec<String>,
    pub per_id: BTreeMap<String, IdStat>,
    /// Report of the first instance with a failing verdict; the scan stops there.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<Box<VerificationReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_descriptor: Option<String>,
    pub resumed: usize,
}

fn key(opts: &ScanOptions, cfg: &RunConfig) -> CheckpointKey {
    CheckpointKey {
        family: opts.family.clone(),
        start: opts.start,
        end: opts.end,
        step: opts.step,
        seed: cfg.seed,
        caps: cfg.caps,
    }
}

fn load_checkpoint(opts: &ScanOptions, cfg: &RunConfig) -> Vec<InstanceRecord> {
    let Some(path) = &opts.checkpoint else {
        return Vec::new();
    };
    let Ok(text) = std::fs::read_to_string(path) else {
        return Vec::new();
    };
    match serde_json::from_str::<Checkpoint>(&text) {
        Ok(cp) if cp.key == key(opts, cfg) => cp.done,
        _ => Vec::new(),
    }
}

fn save_checkpoint(opts: &ScanOptions, cfg: &RunConfig, done: &[InstanceRecord]) -> Result<()> {
    if let Some(path) = &opts.checkpoint {
        let cp = Checkpoint {
            key: key(opts, cfg),
            done: done.to_vec(),
        };
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&cp)?)?;
        std::fs::rename(&tmp, path)?;
    }
    Ok(())
}

fn record(n: usize, descriptor: String, report: &VerificationReport) -> InstanceRecord {
    InstanceRecord {
        n,
        descriptor,
        rows: report
            .verdicts
            .iter()
            .map(|v| RowRecord {
                id: v.id.clone(),
                status: v.status,
                margin: v.margin.as_ref().map(StoredMargin::from_quantity),
            })
            .collect(),
    }
}

fn less(a: &Quantity, b: &Quantity) -> bool {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => x < y,
        _ => a.approx() < b.approx(),
    }
}

fn aggregate(done: &[InstanceRecord]) -> Result<BTreeMap<String, IdStat>> {
    let mut per_id: BTreeMap<String, IdStat> = BTreeMap::new();
    for rec in done {
        for row in &rec.rows {
            let stat = per_id.entry(row.id.clone()).or_insert_with(|| IdStat {
                counts: Counts::default(),
                min_margin: None,
                min_instance: None,
                margins: Vec::new(),
            });
            match row.status {
                Status::Pass => stat.counts.pass += 1,
                Status::Fail => stat.counts.fail += 1,
                Status::Inconclusive => stat.counts.inconclusive += 1,
                Status::NotApplicable => stat.counts.not_applicable += 1,
            }
            if let Some(m) = &row.margin {
                let q = m.to_quantity()?;
                stat.margins.push((rec.descriptor.clone(), q));
                if stat.min_margin.as_ref().map_or(true, |cur| less(&q, cur)) {
                    stat.min_margin = Some(q);
                    stat.min_instance = Some(rec.descriptor.clone());
                }
            }
        }
    }
    Ok(per_id)
}

/// Evaluates every family member in parallel batches, checkpointing after
/// each batch. Instances already present in a matching checkpoint are skipped.
pub fn scan_family<F>(opts: &ScanOptions, cfg: &RunConfig, build: F) -> Result<ScanReport>
where
    F: Fn(&str) -> Result<Instance> + Sync,
{
    cfg.validate()?;
    if !opts.family.contains(PLACEHOLDER) {
        return Err(Error::Parse(format!(
            "family descriptor {:?} lacks {PLACEHOLDER}",
            opts.family
        )));
    }
    if opts.step == 0 {
        return Err(Error::Config("scan step must be positive".into()));
    }
    opts.ids.resolve()?;
    let mut done = load_checkpoint(opts, cfg);
    let resumed = done.len();
    let pending: Vec<usize> = opts
        .values()
        .into_iter()
        .filter(|n| !done.iter().any(|r| r.n == *n))
        .collect();
    let batch = rayon::current_num_threads().max(1);
    let mut failed = None;
    let mut failed_descriptor = None;
    for chunk in pending.chunks(batch) {
        let results: Vec<Result<(usize, String, VerificationReport)>> = chunk
            .par_iter()
            .map(|&n| {
                let d = opts.descriptor(n);
                let inst = build(&d)?;
                let report = run_suite_with(&inst, &opts.ids, cfg, &Overrides::new())?;
                Ok((n, d, report))
            })
            .collect();
        for r in results {
            let (n, d, report) = r?;
            done.push(record(n, d.clone(), &report));
            if report.has_fail() {
                failed = Some(Box::new(report));
                failed_descriptor = Some(d);
                break;
            }
        }
        save_checkpoint(opts, cfg, &done)?;
        if failed.is_some() {
            break;
        }
    }
    done.sort_by_key(|r| r.n);
    Ok(ScanReport {
        family: opts.family.clone(),
        range: ScanRange {
            start: opts.start,
            end: opts.end,
            step: opts.step,
        },
        seed: cfg.seed,
        caps: cfg.caps,
        instances: done.iter().map(|r| r.descriptor.clone()).collect(),
        per_id: aggregate(&done)?,
        failed,
        failed_descriptor,
        resumed,
    })
}
