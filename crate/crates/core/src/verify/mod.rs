//! Inequality registry evaluated on concrete instances.

mod context;
pub mod registry;
pub mod report;
pub mod scan;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::signed::Signature;
use crate::value::Quantity;

pub use context::KNOWN_CONSTANTS;
pub use registry::{ids, lookup, InequalityCase, REGISTRY};
pub use report::{reports_to_csv, Bound, Counts, InstanceSummary, Status, Verdict, VerificationReport};
pub use scan::{scan_family, IdStat, ScanOptions, ScanReport};

use context::Context;

/// Replacement values for named constants, used to probe the harness itself.
pub type Overrides = BTreeMap<String, Quantity>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Cayley,
    CayleySum,
    #[default]
    Generic,
}

impl GraphClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphClass::Cayley => "cayley",
            GraphClass::CayleySum => "cayley-sum",
            GraphClass::Generic => "generic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    /// Defaults to σ ≡ −1.
    pub sigma: Signature,
    pub sigma_label: String,
    pub pi: VertexMeasure,
    pub class: GraphClass,
    /// Cayley instances only: whether the identity lies in S.
    pub identity_in_generators: bool,
    pub connection: Option<Connection>,
}

impl Instance {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let sigma = Signature::all_minus(&graph);
        let pi = VertexMeasure::counting(graph.n());
        Instance {
            name: name.into(),
            graph,
            sigma,
            sigma_label: "all-minus".into(),
            pi,
            class: GraphClass::Generic,
            identity_in_generators: false,
            connection: None,
        }
    }

    pub fn with_signature(mut self, sigma: Signature, label: impl Into<String>) -> Self {
        self.sigma = sigma;
        self.sigma_label = label.into();
        self
    }

    pub fn with_measure(mut self, pi: VertexMeasure) -> Result<Self> {
        if pi.len() != self.graph.n() {
            return Err(Error::InvalidMeasure(format!(
                "measure has {} weights for {} vertices",
                pi.len(),
                self.graph.n()
            )));
        }
        self.pi = pi;
        Ok(self)
    }

    pub fn with_class(mut self, class: GraphClass, identity_in_generators: bool) -> Self {
        self.class = class;
        self.identity_in_generators = identity_in_generators;
        self
    }

    pub fn with_connection(mut self, c: Connection) -> Self {
        self.connection = Some(c);
        self
    }

    fn summary(&self) -> InstanceSummary {
        let g = &self.graph;
        let measure = if self.pi.is_counting() {
            "counting".to_string()
        } else {
            "custom".to_string()
        };
        let connection = self.connection.as_ref().map(|c| match c.cyclic() {
            Some(cy) => format!("cyclic order {}", cy.order()),
            None if c.is_real() => format!("orthogonal dim {}", c.dim()),
            None => format!("unitary dim {}", c.dim()),
        });
        InstanceSummary {
            name: self.name.clone(),
            n: g.n(),
            edges: g.edge_count(),
            loops: g.loop_count(),
            regular_degree: g.regular_degree(),
            connected: g.is_connected(),
            bipartite: g.is_bipartite().is_bipartite(),
            class: self.class.as_str().to_string(),
            signature: self.sigma_label.clone(),
            measure,
            connection,
        }
    }
}

/// Which registry entries to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdFilter {
    All,
    Only(Vec<String>),
}

impl IdFilter {
    pub fn resolve(&self) -> Result<Vec<&'static str>> {
        match self {
            IdFilter::All => Ok(ids()),
            IdFilter::Only(list) => list
                .iter()
                .map(|id| {
                    lookup(id)
                        .map(|c| c.id)
                        .ok_or_else(|| Error::Config(format!("unknown inequality id {id:?}")))
                })
                .collect(),
        }
    }
}

fn check_overrides(overrides: &Overrides) -> Result<()> {
    match overrides.keys().find(|k| !KNOWN_CONSTANTS.contains(&k.as_str())) {
        Some(k) => Err(Error::Config(format!("cannot override unknown constant {k:?}"))),
        None => Ok(()),
    }
}

/// One verdict per requested id, in request order.
pub fn evaluate(inst: &Instance, ids: &[&str], cfg: &RunConfig, overrides: &Overrides) -> Result<Vec<Verdict>> {
    let filter = IdFilter::Only(ids.iter().map(|s| s.to_string()).collect());
    Ok(run_suite_with(inst, &filter, cfg, overrides)?.verdicts)
}

/// A single named constant from [`KNOWN_CONSTANTS`], computed as the harness would.
pub fn compute_constant(inst: &Instance, cfg: &RunConfig, name: &str) -> Result<crate::iso::ConstantResult> {
    let name = KNOWN_CONSTANTS
        .iter()
        .find(|k| **k == name)
        .ok_or_else(|| Error::Config(format!("unknown constant {name:?}")))?;
    let overrides = Overrides::new();
    Context::new(inst, cfg, &overrides).constant(name)
}

pub fn run_suite(inst: &Instance, cfg: &RunConfig) -> Result<VerificationReport> {
    run_suite_with(inst, &IdFilter::All, cfg, &Overrides::new())
}

pub fn run_suite_with(
    inst: &Instance,
    filter: &IdFilter,
    cfg: &RunConfig,
    overrides: &Overrides,
) -> Result<VerificationReport> {
    cfg.validate()?;
    check_overrides(overrides)?;
    let cases = filter.resolve()?;
    let ctx = Context::new(inst, cfg, overrides);
    let verdicts: Vec<Verdict> = cases
        .iter()
        .map(|id| lookup(id).expect("resolved id").run(&ctx, cfg.tol))
        .collect();
    let parts = ctx.into_parts();
    Ok(VerificationReport {
        seed: cfg.seed,
        caps: cfg.caps,
        config: cfg.clone(),
        instance: inst.summary(),
        counts: Counts::tally(&verdicts),
        verdicts,
        overrides: overrides.clone(),
        constants: parts.constants,
        spectra: parts.spectra,
        lambda_inf: parts.bracket,
        errors: parts.errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;
    use crate::graph::families;
    use crate::group::FiniteGroup;

    fn cayley_zn(n: usize, s: &[usize]) -> Instance {
        let x = FiniteGroup::cyclic(n);
        let g = build_cayley(&x, &x.subset(s.iter().copied())).unwrap();
        Instance::new(format!("C(Z_{n})"), g).with_class(GraphClass::Cayley, s.contains(&0))
    }

    #[test]
    fn c5_class_and_gap_entries() {
        let inst = cayley_zn(5, &[1, 4]);
        let v = evaluate(&inst, &["THM51", "GAPBETA"], &RunConfig::default(), &Overrides::new()).unwrap();
        assert_eq!(v[0].status, Status::Pass);
        assert_eq!(v[0].lhs, Some(Quantity::int(1)));
        assert_eq!(v[0].rhs, Some(Bound::Single(Quantity::int(50))));
        assert_eq!(v[0].margin, Some(Quantity::int(-49)));
        assert_eq!(v[1].status, Status::Pass);
        assert_eq!(v[1].rhs, Some(Bound::Single(Quantity::ratio(1, 512))));
        assert!((v[1].lhs.unwrap().approx() - 0.190983005625).abs() < 1e-9);
    }

    #[test]
    fn bipartite_class_entry_not_applicable() {
        let inst = cayley_zn(4, &[1, 3]);
        let v = evaluate(&inst, &["THM51"], &RunConfig::default(), &Overrides::new()).unwrap();
        assert_eq!(v[0].status, Status::NotApplicable);
    }

    #[test]
    fn empty_filter_gives_empty_report() {
        let inst = Instance::new("C5", families::cycle(5));
        let r = run_suite_with(&inst, &IdFilter::Only(vec![]), &RunConfig::default(), &Overrides::new()).unwrap();
        assert!(r.verdicts.is_empty());
        assert_eq!(r.counts, Counts::default());
    }

    #[test]
    fn unknown_id_and_override_rejected() {
        let inst = Instance::new("C5", families::cycle(5));
        let cfg = RunConfig::default();
        assert!(evaluate(&inst, &["NOPE"], &cfg, &Overrides::new()).is_err());
        let bad: Overrides = [("zeta".to_string(), Quantity::int(1))].into();
        assert!(evaluate(&inst, &["ALON"], &cfg, &bad).is_err());
    }

    #[test]
    fn cap_exceeded_is_inconclusive() {
        let inst = Instance::new("C5", families::cycle(5));
        let mut cfg = RunConfig::default();
        cfg.caps.subset_cap = 3;
        let v = evaluate(&inst, &["ALON"], &cfg, &Overrides::new()).unwrap();
        assert_eq!(v[0].status, Status::Inconclusive);
    }

    #[test]
    fn full_suite_on_c5() {
        let inst = cayley_zn(5, &[1, 4]);
        let r = run_suite(&inst, &RunConfig::default()).unwrap();
        for v in &r.verdicts {
            assert_ne!(v.status, Status::Fail, "{v:?}");
            assert_ne!(v.status, Status::Inconclusive, "{v:?}");
        }
        assert_eq!(r.counts.fail, 0);
    }
}
