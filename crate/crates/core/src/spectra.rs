//! Spectra of the normalized adjacency, Laplacian and signed Laplacian.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{jacobi_eigen, Eigen, Matrix};
use crate::signed::Signature;
use crate::value::serialize_float;

pub const TOL_EIG: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
    SignedLaplacian,
    ConnectionLaplacian,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub kind: SpectrumKind,
    #[serde(serialize_with = "ser_vec")]
    pub eigenvalues: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub residual: f64,
}

fn ser_vec<S: serde::Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &x in v {
        seq.serialize_element(&crate::value::round_sig(x))?;
    }
    seq.end()
}

fn ser_f64<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    serialize_float(*v, s)
}

impl SpectralReport {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// 1-based, ascending.
    pub fn nth(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }
}

fn require_degrees(g: &Graph) -> Result<()> {
    match (0..g.n()).find(|&v| g.degree(v) == 0) {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// D^{-1/2} A^σ D^{-1/2}, with `sign(u, i)` the sign of the i-th neighbour of u.
pub(crate) fn normalized_adjacency<F: Fn(usize, usize) -> f64>(g: &Graph, sign: F) -> Matrix {
    let n = g.n();
    let mut m = Matrix::zeros(n);
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    for u in 0..n {
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            m.set(u, v, sign(u, i) * inv_sqrt[u] * inv_sqrt[v]);
        }
    }
    m
}

pub(crate) fn laplacian_from(adj: &Matrix) -> Matrix {
    let mut l = adj.clone();
    for x in l.data.iter_mut() {
        *x = -*x;
    }
    for i in 0..l.n {
        l.set(i, i, 1.0 + l.get(i, i));
    }
    l
}

fn report(kind: SpectrumKind, e: Eigen) -> SpectralReport {
    SpectralReport {
        kind,
        eigenvalues: e.values,
        residual: e.residual,
    }
}

/// Eigenvalues t_1 ≤ … ≤ t_N of D^{-1}A.
pub fn adjacency_spectrum(g: &Graph) -> Result<SpectralReport> {
    require_degrees(g)?;
    let m = normalized_adjacency(g, |_, _| 1.0);
    Ok(report(SpectrumKind::Adjacency, jacobi_eigen(&m)?))
}

/// Eigenvalues λ_1 ≤ … ≤ λ_N of I − D^{-1}A.
pub fn laplacian_spectrum(g: &Graph) -> Result<SpectralReport> {
    require_degrees(g)?;
    let m = laplacian_from(&normalized_adjacency(g, |_, _| 1.0));
    Ok(report(SpectrumKind::Laplacian, jacobi_eigen(&m)?))
}

fn signed_eigen(g: &Graph, sigma: &Signature) -> Result<Eigen> {
    require_degrees(g)?;
    let m = laplacian_from(&normalized_adjacency(g, |u, i| sigma.row(u)[i] as f64));
    jacobi_eigen(&m)
}

/// Eigenvalues of Δ^σ = I − D^{-1}A^σ.
pub fn signed_laplacian_spectrum(g: &Graph, sigma: &Signature) -> Result<SpectralReport> {
    Ok(report(SpectrumKind::SignedLaplacian, signed_eigen(g, sigma)?))
}

/// λ_1^σ with an eigenfunction f of Δ^σ (f = D^{-1/2}v for the symmetric form).
pub fn signed_lowest_eigenfunction(g: &Graph, sigma: &Signature) -> Result<(f64, Vec<f64>)> {
    let e = signed_eigen(g, sigma)?;
    let f = e.vectors[0]
        .iter()
        .enumerate()
        .map(|(v, x)| x / (g.degree(v) as f64).sqrt())
        .collect();
    Ok((e.values[0], f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use std::f64::consts::PI;

    #[test]
    fn small_closed_forms() {
        let c4 = adjacency_spectrum(&cycle(4)).unwrap();
        for (a, b) in c4.eigenvalues.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let k2 = adjacency_spectrum(&cycle(2)).unwrap();
        assert!((k2.min() + 1.0).abs() < 1e-12 && (k2.max() - 1.0).abs() < 1e-12);
        let l2 = laplacian_spectrum(&cycle(2)).unwrap();
        assert!(l2.min().abs() < 1e-12 && (l2.max() - 2.0).abs() < 1e-12);
        let l5 = laplacian_spectrum(&cycle(5)).unwrap();
        assert!((l5.max() - (1.0 + (PI / 5.0).cos())).abs() < 1e-12);
    }

    #[test]
    fn signed_all_minus_reflects() {
        let g = cycle(5);
        let s = signed_laplacian_spectrum(&g, &Signature::all_minus(&g)).unwrap();
        assert!((s.min() - (1.0 - (PI / 5.0).cos())).abs() < 1e-12);
        let p = signed_laplacian_spectrum(&g, &Signature::all_plus(&g)).unwrap();
        assert_eq!(p.eigenvalues, laplacian_spectrum(&g).unwrap().eigenvalues);
    }

    #[test]
    fn disconnected_has_second_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let l = laplacian_spectrum(&g).unwrap();
        assert!(l.nth(2).abs() < 1e-12);
    }

    #[test]
    fn isolated_vertex_is_an_error() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(adjacency_spectrum(&g).unwrap_err(), Error::IsolatedVertex(2));
    }

    #[test]
    fn loops_keep_top_eigenvalue_one() {
        let z5sum = Graph::from_edges(5, &[(0, 1), (0, 4), (1, 3), (2, 2), (2, 4), (3, 3)]).unwrap();
        let a = adjacency_spectrum(&z5sum).unwrap();
        assert!((a.max() - 1.0).abs() < 1e-12);
        assert!(a.min() > -1.0 + 1e-6);
    }

    #[test]
    fn eigenfunction_satisfies_operator() {
        let g = petersen();
        let sigma = Signature::all_minus(&g);
        let (l, f) = signed_lowest_eigenfunction(&g, &sigma).unwrap();
        for x in 0..g.n() {
            let d = g.degree(x) as f64;
            let lap: f64 = g
                .neighbors(x)
                .iter()
                .map(|&y| f[x] - sigma.sign(&g, x, y) as f64 * f[y])
                .sum::<f64>()
                / d;
            assert!((lap - l * f[x]).abs() < 1e-10);
        }
    }
}
