//! Connection graphs: orthogonal or unitary k×k matrices on oriented edges.

mod cutoff;
mod eta;

pub use cutoff::{cutoff_integral_cyclic, cutoff_integral_vector, cyclic_quadrature_allowance, MIN_RESOLUTION};
pub use eta::{
    eta_star, eta_star_pair, frustration_eta, EtaBudget, EtaKind, EtaMode, EtaOptions, EtaResult, SwitchingValues,
};

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{hermitian_eigenvalues, jacobi_eigen, Matrix};
use crate::signed::Signature;
use crate::spectra::{laplacian_from, normalized_adjacency, SpectralReport, SpectrumKind};

pub const UNITARY_TOL: f64 = 1e-12;
/// Largest k·N accepted by the dense connection Laplacian.
pub const DENSE_CAP: usize = 256;

/// ξ^j for ξ = e^{2πi/k}, exact at quarter turns.
pub fn root_of_unity(j: usize, k: usize) -> Complex64 {
    let j = j % k;
    if (4 * j) % k == 0 {
        return match 4 * j / k {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let a = 2.0 * PI * j as f64 / k as f64;
    Complex64::new(a.cos(), a.sin())
}

/// |1 − ξ^d| = 2 sin(πd/k), exact for d ∈ {0, k/2}.
pub(crate) fn chord(d: usize, k: usize) -> f64 {
    let d = d % k;
    if d == 0 {
        0.0
    } else if 2 * d == k {
        2.0
    } else {
        2.0 * (PI * d as f64 / k as f64).sin()
    }
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// A connection with values in the k-th roots of unity, stored as exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicConnection {
    order: usize,
    exps: Vec<Vec<usize>>,
}

impl CyclicConnection {
    /// `map[(u, v)] = j` sets σ_uv = ξ^j (and σ_vu = ξ^{−j}); missing edges get 0.
    pub fn from_map(g: &Graph, order: usize, map: &BTreeMap<(usize, usize), usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConnection("cyclic order must be positive".into()));
        }
        let mut canon: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (&(u, v), &j) in map {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::InvalidConnection(format!("{u},{v} is not an edge")));
            }
            let j = j % order;
            let (key, e) = if u <= v {
                ((u, v), j)
            } else {
                ((v, u), (order - j) % order)
            };
            if u == v && (2 * j) % order != 0 {
                return Err(Error::InvalidConnection(format!(
                    "loop at {u} has exponent {j}, which is not an involution"
                )));
            }
            if canon.insert(key, e).is_some_and(|prev| prev != e) {
                return Err(Error::InvalidConnection(format!(
                    "conflicting entries for {},{}",
                    key.0, key.1
                )));
            }
        }
        let exps = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .map(|&v| {
                        let e = canon.get(&edge_key(u, v)).copied().unwrap_or(0);
                        if u <= v {
                            e
                        } else {
                            (order - e) % order
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(CyclicConnection { order, exps })
    }

    /// σ = −1 ↦ ξ^1 with k = 2.
    pub fn from_signature(g: &Graph, sigma: &Signature) -> Self {
        let exps = (0..g.n())
            .map(|u| sigma.row(u).iter().map(|&s| if s < 0 { 1 } else { 0 }).collect())
            .collect();
        CyclicConnection { order: 2, exps }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exponent on the i-th neighbour of u.
    pub fn row(&self, u: usize) -> &[usize] {
        &self.exps[u]
    }

    pub fn exponent(&self, g: &Graph, u: usize, v: usize) -> usize {
        let i = g.neighbors(u).iter().position(|&w| w == v).expect("edge exists");
        self.exps[u][i]
    }

    /// σ_xy ↦ ξ^{−τ(x)} σ_xy ξ^{τ(y)}.
    pub fn switch(&self, g: &Graph, tau: &[usize]) -> Self {
        let k = self.order;
        let exps = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .zip(&self.exps[u])
                    .map(|(&v, &e)| (e + tau[v] % k + k - tau[u] % k) % k)
                    .collect()
            })
            .collect();
        CyclicConnection { order: k, exps }
    }

    /// The signature when k ≤ 2.
    pub fn to_signature(&self, g: &Graph) -> Option<Signature> {
        if self.order > 2 {
            return None;
        }
        let signs: Vec<i8> = g
            .edges()
            .iter()
            .map(|&(u, v)| if self.exponent(g, u, v) == 1 { -1 } else { 1 })
            .collect();
        Signature::from_edge_signs(g, &signs).ok()
    }

    pub fn to_connection(&self) -> Connection {
        let real = self.order <= 2;
        let mats = self
            .exps
            .iter()
            .map(|row| row.iter().map(|&e| vec![root_of_unity(e, self.order)]).collect())
            .collect();
        Connection {
            dim: 1,
            real,
            mats,
            cyclic: Some(self.clone()),
        }
    }
}

/// Connection σ with σ_yx = σ_xy⁻¹, matrices aligned with adjacency.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    dim: usize,
    real: bool,
    mats: Vec<Vec<Vec<Complex64>>>,
    cyclic: Option<CyclicConnection>,
}

fn mat_mul_adjoint(a: &[Complex64], b: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] = (0..k).map(|l| a[i * k + l] * b[j * k + l].conj()).sum();
        }
    }
    out
}

fn adjoint(a: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            out[j * k + i] = a[i * k + j].conj();
        }
    }
    out
}

fn max_dev_from_identity(m: &[Complex64], k: usize) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((m[i * k + j] - target).norm());
        }
    }
    dev
}

fn identity(k: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        m[i * k + i] = Complex64::new(1.0, 0.0);
    }
    m
}

impl Connection {
    /// `map[(u, v)]` is σ_uv in row-major order; missing edges get the identity.
    pub fn from_matrices(g: &Graph, dim: usize, map: &BTreeMap<(usize, usize), Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConnection("dimension must be positive".into()));
        }
        let mut canon: BTreeMap<(usize, usize), Vec<Complex64>> = BTreeMap::new();
        for (&(u, v), m) in map {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::InvalidConnection(format!("{u},{v} is not an edge")));
            }
            if m.len() != dim * dim {
                return Err(Error::InvalidConnection(format!(
                    "{u},{v}: expected {} entries, got {}",
                    dim * dim,
                    m.len()
                )));
            }
            let dev = max_dev_from_identity(&mat_mul_adjoint(m, m, dim), dim);
            if dev > UNITARY_TOL {
                return Err(Error::InvalidConnection(format!(
                    "{u},{v}: matrix is not unitary (deviation {dev:.3e})"
                )));
            }
            if u == v {
                let sq = max_dev_from_identity(&mat_mul_adjoint(m, &adjoint(m, dim), dim), dim);
                if sq > UNITARY_TOL {
                    return Err(Error::InvalidConnection(format!("loop at {u} is not an involution")));
                }
            }
            let (key, val) = if u <= v {
                ((u, v), m.clone())
            } else {
                ((v, u), adjoint(m, dim))
            };
            if canon.insert(key, val).is_some() {
                return Err(Error::InvalidConnection(format!(
                    "duplicate entries for {},{}",
                    key.0, key.1
                )));
            }
        }
        let real = canon.values().all(|m| m.iter().all(|z| z.im == 0.0));
        let mats = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .map(|&v| match canon.get(&edge_key(u, v)) {
                        None => identity(dim),
                        Some(m) if u <= v => m.clone(),
                        Some(m) => adjoint(m, dim),
                    })
                    .collect()
            })
            .collect();
        Ok(Connection {
            dim,
            real,
            mats,
            cyclic: None,
        })
    }

    pub fn trivial(g: &Graph, dim: usize) -> Self {
        Connection {
            dim,
            real: true,
            mats: (0..g.n()).map(|u| vec![identity(dim); g.degree(u)]).collect(),
            cyclic: None,
        }
    }

    pub fn from_signature(g: &Graph, sigma: &Signature) -> Self {
        CyclicConnection::from_signature(g, sigma).to_connection()
    }

    /// U(1) connection with σ_uv = e^{iθ} for `phases[(u, v)] = θ`.
    pub fn from_phases(g: &Graph, phases: &BTreeMap<(usize, usize), f64>) -> Result<Self> {
        let map = phases
            .iter()
            .map(|(&e, &t)| (e, vec![Complex64::new(t.cos(), t.sin())]))
            .collect();
        Connection::from_matrices(g, 1, &map)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when every entry is real, so switchings range over the real sphere.
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn cyclic(&self) -> Option<&CyclicConnection> {
        self.cyclic.as_ref()
    }

    /// σ_{u, neighbors(u)[i]}.
    pub fn matrix(&self, u: usize, i: usize) -> &[Complex64] {
        &self.mats[u][i]
    }

    /// σ_uv applied to a vector.
    pub(crate) fn apply(&self, u: usize, i: usize, v: &[Complex64]) -> Vec<Complex64> {
        let m = &self.mats[u][i];
        let k = self.dim;
        (0..k).map(|r| (0..k).map(|c| m[r * k + c] * v[c]).sum()).collect()
    }
}

/// Spectrum of Δ^σ f(x) = f(x) − (1/d_x) Σ_y σ_xy f(y) on K^k-valued functions.
pub fn connection_laplacian_spectrum(g: &Graph, c: &Connection) -> Result<SpectralReport> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let k = c.dim;
    let size = k * g.n();
    if size > DENSE_CAP {
        return Err(Error::CapExceeded {
            what: "dense connection Laplacian",
            size,
            cap: DENSE_CAP,
        });
    }
    if c.real && k == 1 {
        let m = laplacian_from(&normalized_adjacency(g, |u, i| c.mats[u][i][0].re));
        let e = jacobi_eigen(&m)?;
        return Ok(SpectralReport {
            kind: SpectrumKind::ConnectionLaplacian,
            eigenvalues: e.values,
            residual: e.residual,
        });
    }
    let mut h = vec![Complex64::new(0.0, 0.0); size * size];
    for u in 0..g.n() {
        for a in 0..k {
            h[(u * k + a) * size + u * k + a] += 1.0;
        }
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            let w = 1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt();
            let m = &c.mats[u][i];
            for a in 0..k {
                for b in 0..k {
                    h[(u * k + a) * size + v * k + b] -= m[a * k + b] * w;
                }
            }
        }
    }
    let (eigenvalues, residual) = if c.real {
        let mut m = Matrix::zeros(size);
        for (i, z) in h.iter().enumerate() {
            m.data[i] = z.re;
        }
        let e = jacobi_eigen(&m)?;
        (e.values, e.residual)
    } else {
        hermitian_eigenvalues(size, &h)?
    };
    Ok(SpectralReport {
        kind: SpectrumKind::ConnectionLaplacian,
        eigenvalues,
        residual,
    })
}

/// {"k", "kind": "cyclic"|"unitary", "edges": {"u,v": exponent | row-major matrix}}.
/// Matrix entries are numbers or [re, im] pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub k: usize,
    pub kind: String,
    pub edges: BTreeMap<String, serde_json::Value>,
}

fn parse_key(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidConnection(format!("edge key {s:?} is not \"u,v\""));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_entry(v: &serde_json::Value) -> Option<Complex64> {
    match v {
        serde_json::Value::Number(x) => Some(Complex64::new(x.as_f64()?, 0.0)),
        serde_json::Value::Array(p) if p.len() == 2 => Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

impl Connection {
    pub fn from_json(g: &Graph, j: &ConnectionJson) -> Result<Self> {
        match j.kind.as_str() {
            "cyclic" => {
                let mut map = BTreeMap::new();
                for (key, v) in &j.edges {
                    let e = v.as_u64().ok_or_else(|| {
                        Error::InvalidConnection(format!("{key}: exponent must be a nonnegative integer"))
                    })?;
                    map.insert(parse_key(key)?, e as usize);
                }
                Ok(CyclicConnection::from_map(g, j.k, &map)?.to_connection())
            }
            "unitary" => {
                let mut map = BTreeMap::new();
                for (key, v) in &j.edges {
                    let entries = v
                        .as_array()
                        .and_then(|a| a.iter().map(parse_entry).collect::<Option<Vec<_>>>())
                        .ok_or_else(|| {
                            Error::InvalidConnection(format!("{key}: expected an array of matrix entries"))
                        })?;
                    map.insert(parse_key(key)?, entries);
                }
                Connection::from_matrices(g, j.k, &map)
            }
            other => Err(Error::InvalidConnection(format!("unknown connection kind {other:?}"))),
        }
    }

    pub fn to_json(&self, g: &Graph) -> ConnectionJson {
        let mut edges = BTreeMap::new();
        match &self.cyclic {
            Some(cy) => {
                for (u, v) in g.edges() {
                    edges.insert(format!("{u},{v}"), serde_json::json!(cy.exponent(g, u, v)));
                }
                ConnectionJson {
                    k: cy.order,
                    kind: "cyclic".into(),
                    edges,
                }
            }
            None => {
                for (u, v) in g.edges() {
                    let i = g.neighbors(u).iter().position(|&w| w == v).expect("edge exists");
                    let entries: Vec<serde_json::Value> = self.mats[u][i]
                        .iter()
                        .map(|z| {
                            if z.im == 0.0 {
                                serde_json::json!(z.re)
                            } else {
                                serde_json::json!([z.re, z.im])
                            }
                        })
                        .collect();
                    edges.insert(format!("{u},{v}"), serde_json::Value::Array(entries));
                }
                ConnectionJson {
                    k: self.dim,
                    kind: "unitary".into(),
                    edges,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::spectra::{laplacian_spectrum, signed_laplacian_spectrum};

    #[test]
    fn roots_and_chords() {
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(3, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(chord(1, 2), 2.0);
        assert!((chord(1, 3) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn order_two_matches_signed_bitwise() {
        let g = cycle(5);
        let s = Signature::all_minus(&g);
        let c = Connection::from_signature(&g, &s);
        let a = connection_laplacian_spectrum(&g, &c).unwrap();
        let b = signed_laplacian_spectrum(&g, &s).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(CyclicConnection::from_signature(&g, &s).to_signature(&g), Some(s));
    }

    #[test]
    fn trivial_connection_repeats_laplacian() {
        let g = petersen();
        let spec = connection_laplacian_spectrum(&g, &Connection::trivial(&g, 2)).unwrap();
        let l = laplacian_spectrum(&g).unwrap();
        for (i, &x) in l.eigenvalues.iter().enumerate() {
            assert!((spec.eigenvalues[2 * i] - x).abs() < 1e-10);
            assert!((spec.eigenvalues[2 * i + 1] - x).abs() < 1e-10);
        }
    }

    #[test]
    fn magnetic_triangle() {
        let g = cycle(3);
        let phases = BTreeMap::from([((0, 1), 2.0 * PI / 3.0)]);
        let c = Connection::from_phases(&g, &phases).unwrap();
        let s = connection_laplacian_spectrum(&g, &c).unwrap();
        assert!((s.min() - (1.0 - (2.0 * PI / 9.0).cos())).abs() < 1e-9);
    }

    #[test]
    fn cyclic_switching_keeps_spectrum() {
        let g = cycle(6);
        let cy = CyclicConnection::from_map(&g, 4, &BTreeMap::from([((0, 1), 1), ((2, 3), 3), ((5, 0), 2)])).unwrap();
        let sw = cy.switch(&g, &[0, 1, 2, 3, 1, 2]);
        let a = connection_laplacian_spectrum(&g, &cy.to_connection()).unwrap();
        let b = connection_laplacian_spectrum(&g, &sw.to_connection()).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn validation() {
        let g = cycle(3);
        let bad = BTreeMap::from([((0, 1), vec![Complex64::new(2.0, 0.0)])]);
        assert!(Connection::from_matrices(&g, 1, &bad).is_err());
        let loop_g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let i_loop = BTreeMap::from([((0, 0), vec![Complex64::new(0.0, 1.0)])]);
        assert!(Connection::from_matrices(&loop_g, 1, &i_loop).is_err());
        assert!(CyclicConnection::from_map(&loop_g, 4, &BTreeMap::from([((0, 0), 1)])).is_err());
        assert!(CyclicConnection::from_map(&loop_g, 4, &BTreeMap::from([((0, 0), 2)])).is_ok());
        assert!(CyclicConnection::from_map(&g, 3, &BTreeMap::from([((0, 2), 1)])).is_ok());
        assert!(CyclicConnection::from_map(&g, 3, &BTreeMap::from([((0, 1), 1), ((1, 0), 1)])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = cycle(4);
        let cy = CyclicConnection::from_map(&g, 3, &BTreeMap::from([((1, 0), 1)])).unwrap();
        let c = cy.to_connection();
        let j = c.to_json(&g);
        assert_eq!(j.edges["0,1"], serde_json::json!(2));
        assert_eq!(Connection::from_json(&g, &j).unwrap(), c);
        let rot = Connection::from_json(
            &g,
            &serde_json::from_str(r#"{"k":2,"kind":"unitary","edges":{"0,1":[0,-1,1,0]}}"#).unwrap(),
        )
        .unwrap();
        assert!(rot.is_real());
        assert_eq!(Connection::from_json(&g, &rot.to_json(&g)).unwrap(), rot);
    }
}
