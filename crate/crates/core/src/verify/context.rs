//! Lazily computed inputs shared by the registry entries of one run.

use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;

use super::{GraphClass, Instance, Overrides};
use crate::config::RunConfig;
use crate::connection::{connection_laplacian_spectrum, eta_star_pair, Connection};
use crate::error::{Error, Result};
use crate::graph::{is_vertex_transitive, VertexMeasure};
use crate::iso::{
    cheeger_h, mrt_beta_out, signed_cheeger, signed_h_out, signed_vertex_constants, trevisan_beta, vertex_iso_h_out,
    ConstantResult, Method, Witness,
};
use crate::lambda_inf::{lambda_inf_bracket, LambdaInfBracket};
use crate::signed::Signature;
use crate::spectra::{adjacency_spectrum, signed_laplacian_spectrum, SpectralReport};
use crate::value::Quantity;

pub const KNOWN_CONSTANTS: [&str; 10] = [
    "h",
    "h_out",
    "beta",
    "beta_out",
    "h_sigma",
    "h_out_sigma",
    "h_sym_sigma",
    "h_out_sigma_all_minus",
    "eta_star_out",
    "eta_star_sym",
];

type Cell<T> = OnceCell<Result<T>>;

pub(crate) struct Context<'a> {
    pub inst: &'a Instance,
    pub cfg: &'a RunConfig,
    overrides: &'a Overrides,
    constants: RefCell<BTreeMap<&'static str, Result<ConstantResult>>>,
    adjacency: Cell<SpectralReport>,
    signed: Cell<SpectralReport>,
    connection: Cell<SpectralReport>,
    bracket: Cell<LambdaInfBracket>,
    transitive: Cell<bool>,
}

pub(crate) struct Parts {
    pub constants: Vec<ConstantResult>,
    pub spectra: Vec<SpectralReport>,
    pub bracket: Option<LambdaInfBracket>,
    pub errors: BTreeMap<String, String>,
}

fn cloned<T: Clone>(r: &Result<T>) -> Result<T> {
    r.clone()
}

impl<'a> Context<'a> {
    pub fn new(inst: &'a Instance, cfg: &'a RunConfig, overrides: &'a Overrides) -> Self {
        Context {
            inst,
            cfg,
            overrides,
            constants: RefCell::new(BTreeMap::new()),
            adjacency: OnceCell::new(),
            signed: OnceCell::new(),
            connection: OnceCell::new(),
            bracket: OnceCell::new(),
            transitive: OnceCell::new(),
        }
    }

    pub fn constant(&self, name: &'static str) -> Result<ConstantResult> {
        debug_assert!(KNOWN_CONSTANTS.contains(&name));
        if let Some(q) = self.overrides.get(name) {
            let r = ConstantResult {
                name: name.to_string(),
                value: *q,
                witness: Witness::default(),
                method: Method::Exact,
                notes: vec!["overridden".into()],
            };
            self.constants.borrow_mut().insert(name, Ok(r.clone()));
            return Ok(r);
        }
        if let Some(r) = self.constants.borrow().get(name) {
            return cloned(r);
        }
        let g = &self.inst.graph;
        let caps = self.cfg.caps.iso();
        let computed: Vec<(&'static str, Result<ConstantResult>)> = match name {
            "h" => vec![(name, cheeger_h(g, &caps))],
            "h_out" => vec![(name, vertex_iso_h_out(g, &caps))],
            "beta" => vec![(name, trevisan_beta(g, &caps))],
            "beta_out" => vec![(name, mrt_beta_out(g, &caps))],
            "h_sigma" => vec![(name, signed_cheeger(g, &self.inst.sigma, &caps))],
            "h_out_sigma" | "h_sym_sigma" => split_pair(
                ["h_out_sigma", "h_sym_sigma"],
                signed_vertex_constants(g, &self.inst.sigma, &self.inst.pi, &caps),
            ),
            "h_out_sigma_all_minus" => {
                let r =
                    signed_h_out(g, &Signature::all_minus(g), &VertexMeasure::counting(g.n()), &caps).map(|mut c| {
                        c.name = name.to_string();
                        c
                    });
                vec![(name, r)]
            }
            "eta_star_out" | "eta_star_sym" => {
                let c = self.connection_or_signature();
                split_pair(
                    ["eta_star_out", "eta_star_sym"],
                    eta_star_pair(g, &c, &self.inst.pi, &self.cfg.eta_options()),
                )
            }
            _ => vec![(name, Err(Error::Config(format!("unknown constant {name}"))))],
        };
        let mut cache = self.constants.borrow_mut();
        for (k, v) in computed {
            if !self.overrides.contains_key(k) {
                cache.entry(k).or_insert(v);
            }
        }
        cloned(&cache[name])
    }

    pub fn value(&self, name: &'static str) -> Result<Quantity> {
        self.constant(name).map(|c| c.value)
    }

    pub fn adjacency(&self) -> Result<&SpectralReport> {
        self.adjacency
            .get_or_init(|| adjacency_spectrum(&self.inst.graph))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn signed(&self) -> Result<&SpectralReport> {
        self.signed
            .get_or_init(|| signed_laplacian_spectrum(&self.inst.graph, &self.inst.sigma))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Lowest eigenvalue of the connection Laplacian; the signed one when the
    /// instance carries no connection.
    pub fn connection_lambda1(&self) -> Result<f64> {
        match &self.inst.connection {
            None => self.signed().map(|s| s.min()),
            Some(c) => self
                .connection
                .get_or_init(|| connection_laplacian_spectrum(&self.inst.graph, c))
                .as_ref()
                .map(|s| s.min())
                .map_err(Clone::clone),
        }
    }

    pub fn bracket(&self) -> Result<&LambdaInfBracket> {
        self.bracket
            .get_or_init(|| {
                lambda_inf_bracket(
                    &self.inst.graph,
                    &self.inst.sigma,
                    &self.inst.pi,
                    &self.cfg.bracket_options(),
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn vertex_transitive(&self) -> Result<bool> {
        cloned(self.transitive.get_or_init(|| {
            if self.inst.class == GraphClass::Cayley {
                return Ok(true);
            }
            is_vertex_transitive(&self.inst.graph, self.cfg.caps.n_cap).map(|t| t.transitive)
        }))
    }

    pub fn connection_or_signature(&self) -> Connection {
        match &self.inst.connection {
            Some(c) => c.clone(),
            None => Connection::from_signature(&self.inst.graph, &self.inst.sigma),
        }
    }

    /// η* over switchings into the unit sphere coincides with the cyclic
    /// value only for signatures (order ≤ 2).
    pub fn eta_is_sphere_exact(&self) -> bool {
        match &self.inst.connection {
            None => true,
            Some(c) => c.cyclic().is_some_and(|cy| cy.order() <= 2),
        }
    }

    pub fn into_parts(self) -> Parts {
        let mut errors = BTreeMap::new();
        let mut constants = Vec::new();
        for (k, v) in self.constants.into_inner() {
            match v {
                Ok(c) => constants.push(c),
                Err(e) => {
                    errors.insert(k.to_string(), e.to_string());
                }
            }
        }
        let mut spectra = Vec::new();
        for (k, cell) in [
            ("adjacency_spectrum", self.adjacency),
            ("signed_laplacian_spectrum", self.signed),
            ("connection_laplacian_spectrum", self.connection),
        ] {
            match cell.into_inner() {
                Some(Ok(s)) => spectra.push(s),
                Some(Err(e)) => {
                    errors.insert(k.to_string(), e.to_string());
                }
                None => {}
            }
        }
        let bracket = match self.bracket.into_inner() {
            Some(Ok(b)) => Some(b),
            Some(Err(e)) => {
                errors.insert("lambda_inf".into(), e.to_string());
                None
            }
            None => None,
        };
        if let Some(Err(e)) = self.transitive.into_inner() {
            errors.insert("vertex_transitivity".into(), e.to_string());
        }
        Parts {
            constants,
            spectra,
            bracket,
            errors,
        }
    }
}

fn split_pair(
    names: [&'static str; 2],
    r: Result<(ConstantResult, ConstantResult)>,
) -> Vec<(&'static str, Result<ConstantResult>)> {
    match r {
        Ok((mut a, mut b)) => {
            a.name = names[0].to_string();
            b.name = names[1].to_string();
            vec![(names[0], Ok(a)), (names[1], Ok(b))]
        }
        Err(e) => vec![(names[0], Err(e.clone())), (names[1], Err(e))],
    }
}
