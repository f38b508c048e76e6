//! Run configuration shared by the library harness and the CLI.

use serde::{Deserialize, Serialize};

use crate::connection::{EtaBudget, EtaOptions};
use crate::error::{Error, Result};
use crate::graph::DEFAULT_VT_CAP;
use crate::iso::{IsoCaps, DEFAULT_SUBSET_CAP, DEFAULT_TRIPARTITION_CAP, HARD_SUBSET_MAX, HARD_TRIPARTITION_MAX};
use crate::lambda_inf::BracketOptions;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const MAX_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub subset_cap: usize,
    pub tripartition_cap: usize,
    pub cyclic_budget: EtaBudget,
    /// Largest graph the vertex-transitivity search will take.
    pub n_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subset_cap: DEFAULT_SUBSET_CAP,
            tripartition_cap: DEFAULT_TRIPARTITION_CAP,
            cyclic_budget: EtaBudget::default(),
            n_cap: DEFAULT_VT_CAP,
        }
    }
}

impl Caps {
    pub fn iso(&self) -> IsoCaps {
        IsoCaps {
            subset_cap: self.subset_cap,
            tripartition_cap: self.tripartition_cap,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default)]
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            caps: Caps::default(),
            tol: DEFAULT_TOL,
            out: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        let positive = [
            ("subset_cap", c.subset_cap),
            ("tripartition_cap", c.tripartition_cap),
            ("cyclic_budget.max_vertices", c.cyclic_budget.max_vertices),
            ("cyclic_budget.max_order", c.cyclic_budget.max_order),
            ("n_cap", c.n_cap),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{name} must be positive")));
        }
        if c.subset_cap > HARD_SUBSET_MAX {
            return Err(Error::Config(format!(
                "subset_cap {} exceeds the hard maximum {HARD_SUBSET_MAX}",
                c.subset_cap
            )));
        }
        if c.tripartition_cap > HARD_TRIPARTITION_MAX {
            return Err(Error::Config(format!(
                "tripartition_cap {} exceeds the hard maximum {HARD_TRIPARTITION_MAX}",
                c.tripartition_cap
            )));
        }
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(Error::Config(format!("tol {} is outside (0, {MAX_TOL}]", self.tol)));
        }
        Ok(())
    }

    pub fn bracket_options(&self) -> BracketOptions {
        BracketOptions {
            seed: self.seed,
            caps: self.caps.iso(),
            ..BracketOptions::default()
        }
    }

    pub fn eta_options(&self) -> EtaOptions {
        EtaOptions {
            seed: self.seed,
            budget: self.caps.cyclic_budget,
            caps: self.caps.iso(),
            ..EtaOptions::default()
        }
    }
}
