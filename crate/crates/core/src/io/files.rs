//! JSON file formats: graphs, signatures, measures and replayable instances.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::connection::{Connection, ConnectionJson};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::signed::Signature;
use crate::value::{parse_rational, Quantity};
use crate::verify::{GraphClass, Instance, Overrides, Status, VerificationReport};

/// Construction metadata embedded in graph files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<String>,
    #[serde(default)]
    pub class: GraphClass,
    #[serde(default)]
    pub identity_in_generators: bool,
    #[serde(default)]
    pub regular_degree: Option<usize>,
    #[serde(default)]
    pub connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected_algebraic: Option<bool>,
    #[serde(default)]
    pub bipartite: bool,
    #[serde(default)]
    pub bipartite_method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl BuildMetadata {
    pub fn for_graph(g: &Graph, descriptor: Option<String>, class: GraphClass) -> Self {
        BuildMetadata {
            descriptor,
            class,
            identity_in_generators: false,
            regular_degree: g.regular_degree(),
            connected: g.is_connected(),
            connected_algebraic: None,
            bipartite: g.is_bipartite().is_bipartite(),
            bipartite_method: "bfs".into(),
            labels: None,
        }
    }
}

/// `{"n": 5, "edges": [[0, 1], ...]}`; a loop is `[v, v]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BuildMetadata>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph, metadata: Option<BuildMetadata>) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges(),
            metadata,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, &self.edges)
    }
}

/// `{"signs": [[u, v, ±1], ...]}`; omitted edges are +1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureFile {
    pub signs: Vec<(usize, usize, i8)>,
}

impl SignatureFile {
    pub fn from_signature(g: &Graph, sigma: &Signature) -> Self {
        SignatureFile {
            signs: sigma.to_map(g).into_iter().map(|((u, v), s)| (u, v, s)).collect(),
        }
    }

    pub fn to_signature(&self, g: &Graph) -> Result<Signature> {
        let mut map = BTreeMap::new();
        for &(u, v, s) in &self.signs {
            let key = (u.min(v), u.max(v));
            if map.insert(key, s).is_some_and(|prev| prev != s) {
                return Err(Error::InvalidSignature(format!("conflicting signs on {u},{v}")));
            }
        }
        Signature::from_map(g, &map)
    }
}

/// A bare array of positive weights, or `{"pi": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureFile {
    Bare(Vec<f64>),
    Wrapped { pi: Vec<f64> },
}

impl MeasureFile {
    pub fn into_measure(self) -> Result<VertexMeasure> {
        match self {
            MeasureFile::Bare(w) | MeasureFile::Wrapped { pi: w } => VertexMeasure::new(w),
        }
    }
}

/// Everything needed to rerun a verification: graph, σ, π, connection,
/// overridden constants, ids and configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub name: String,
    pub graph: GraphFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SignatureFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    /// Ids that failed when the file was written.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<String>,
}

/// An instance loaded from a file, with any replay settings it carries.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub instance: Instance,
    pub metadata: BuildMetadata,
    pub overrides: Overrides,
    pub ids: Option<Vec<String>>,
    pub config: Option<RunConfig>,
}

fn quantity_to_json(q: &Quantity) -> serde_json::Value {
    match q {
        Quantity::Exact(_) => serde_json::Value::String(q.to_string()),
        other => serde_json::json!(other.approx()),
    }
}

pub fn parse_quantity(v: &serde_json::Value) -> Result<Quantity> {
    match v {
        serde_json::Value::String(s) => parse_quantity_str(s),
        serde_json::Value::Number(x) => x
            .as_f64()
            .map(Quantity::Float)
            .ok_or_else(|| Error::Parse(format!("bad number {x}"))),
        other => Err(Error::Parse(format!("expected a number or \"p/q\", got {other}"))),
    }
}

pub fn parse_quantity_str(s: &str) -> Result<Quantity> {
    if let Some(r) = parse_rational(s) {
        return Ok(Quantity::Exact(r));
    }
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .map(Quantity::Float)
        .ok_or_else(|| Error::Parse(format!("cannot read {s:?} as a number")))
}

impl InstanceFile {
    pub fn from_instance(
        inst: &Instance,
        metadata: Option<BuildMetadata>,
        overrides: &Overrides,
        ids: Option<Vec<String>>,
        config: Option<RunConfig>,
    ) -> Self {
        let g = &inst.graph;
        InstanceFile {
            name: inst.name.clone(),
            graph: GraphFile::from_graph(g, metadata),
            sigma: Some(SignatureFile::from_signature(g, &inst.sigma)),
            sigma_label: Some(inst.sigma_label.clone()),
            pi: (!inst.pi.is_counting()).then(|| inst.pi.weights().to_vec()),
            connection: inst.connection.as_ref().map(|c| c.to_json(g)),
            overrides: overrides
                .iter()
                .map(|(k, q)| (k.clone(), quantity_to_json(q)))
                .collect(),
            ids,
            config,
            failed: Vec::new(),
        }
    }

    pub fn load(&self) -> Result<Loaded> {
        let g = self.graph.to_graph()?;
        let stored = self.graph.metadata.clone();
        let class = stored.as_ref().map(|m| m.class).unwrap_or_default();
        let identity = stored.as_ref().is_some_and(|m| m.identity_in_generators);
        let mut inst = Instance::new(self.name.clone(), g.clone()).with_class(class, identity);
        if let Some(s) = &self.sigma {
            let label = self.sigma_label.clone().unwrap_or_else(|| "file".into());
            inst = inst.with_signature(s.to_signature(&g)?, label);
        }
        if let Some(w) = &self.pi {
            inst = inst.with_measure(VertexMeasure::new(w.clone())?)?;
        }
        if let Some(c) = &self.connection {
            inst = inst.with_connection(Connection::from_json(&g, c)?);
        }
        let overrides = self
            .overrides
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_quantity(v)?)))
            .collect::<Result<Overrides>>()?;
        let mut metadata = BuildMetadata::for_graph(&g, stored.as_ref().and_then(|m| m.descriptor.clone()), class);
        metadata.identity_in_generators = identity;
        metadata.labels = stored.and_then(|m| m.labels);
        Ok(Loaded {
            instance: inst,
            metadata,
            overrides,
            ids: self.ids.clone(),
            config: self.config.clone(),
        })
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Reads a graph file or an instance file.
pub fn load_file(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into());
    load_json_str(&text, &name).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Parses graph-file or instance-file JSON; `name` labels a bare graph.
pub fn load_json_str(text: &str, name: &str) -> Result<Loaded> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("graph").is_some() {
        let f: InstanceFile = serde_json::from_value(value)?;
        return f.load();
    }
    let gf: GraphFile = serde_json::from_value(value)?;
    InstanceFile {
        name: name.to_string(),
        graph: gf,
        sigma: None,
        sigma_label: None,
        pi: None,
        connection: None,
        overrides: BTreeMap::new(),
        ids: None,
        config: None,
        failed: Vec::new(),
    }
    .load()
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes `<dir>/counterexample-<name>.json` when the report has a failing verdict.
pub fn write_counterexample(
    dir: &Path,
    inst: &Instance,
    metadata: Option<BuildMetadata>,
    overrides: &Overrides,
    ids: Option<Vec<String>>,
    cfg: &RunConfig,
    report: &VerificationReport,
) -> Result<Option<PathBuf>> {
    let failed: Vec<String> = report
        .verdicts
        .iter()
        .filter(|v| v.status == Status::Fail)
        .map(|v| v.id.clone())
        .collect();
    if failed.is_empty() {
        return Ok(None);
    }
    let mut file = InstanceFile::from_instance(inst, metadata, overrides, ids, Some(cfg.clone()));
    file.failed = failed;
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("counterexample-{}.json", sanitize(&inst.name)));
    std::fs::write(&path, serde_json::to_string_pretty(&file)?)?;
    Ok(Some(path))
}
