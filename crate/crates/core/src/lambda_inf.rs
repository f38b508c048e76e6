//! Bracketing the sup-form Poincaré constant λ_∞^σ, and the scalar cutoff integral.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::iso::{signed_vertex_constants, IsoCaps};
use crate::signed::{Balance, Signature};
use crate::spectra::signed_lowest_eigenfunction;

pub const DEFAULT_RESTARTS: usize = 8;
pub const DEFAULT_ITERATIONS: usize = 2000;
/// Sup terms within this relative distance of the maximum count as tied.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BracketOptions {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub caps: IsoCaps,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions {
            restarts: DEFAULT_RESTARTS,
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
            caps: IsoCaps::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaInfBracket {
    pub lower: f64,
    pub upper: f64,
    pub lower_terms: BTreeMap<String, f64>,
    pub upper_terms: BTreeMap<String, f64>,
    pub seed: u64,
    /// f attaining `upper_terms["search"]`.
    pub best_function: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub restarts: usize,
    pub iterations: usize,
}

impl LambdaInfBracket {
    pub fn search_upper(&self) -> f64 {
        self.upper_terms["search"]
    }
}

/// Σ_x π(x) sup_{y~x} |f(x) − σ_xy f(y)|² / Σ_x π(x) f(x)².
pub fn sup_rayleigh(g: &Graph, sigma: &Signature, pi: &VertexMeasure, f: &[f64]) -> f64 {
    let (num, den) = num_den(g, sigma, pi, f);
    num / den
}

fn num_den(g: &Graph, sigma: &Signature, pi: &VertexMeasure, f: &[f64]) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for x in 0..g.n() {
        let sup = g
            .neighbors(x)
            .iter()
            .zip(sigma.row(x))
            .map(|(&y, &s)| (f[x] - s as f64 * f[y]).powi(2))
            .fold(0.0, f64::max);
        num += pi.weight(x) * sup;
        den += pi.weight(x) * f[x] * f[x];
    }
    (num, den)
}

/// A subgradient of the sup-Rayleigh ratio, averaging over tied maximisers.
fn subgradient(g: &Graph, sigma: &Signature, pi: &VertexMeasure, f: &[f64]) -> (f64, Vec<f64>) {
    let n = g.n();
    let (num, den) = num_den(g, sigma, pi, f);
    let ratio = num / den;
    let mut grad = vec![0.0; n];
    for x in 0..n {
        let terms: Vec<(usize, f64, f64)> = g
            .neighbors(x)
            .iter()
            .zip(sigma.row(x))
            .map(|(&y, &s)| {
                let diff = f[x] - s as f64 * f[y];
                (y, s as f64, diff)
            })
            .collect();
        let top = terms.iter().map(|t| t.2 * t.2).fold(0.0, f64::max);
        let tied: Vec<_> = terms
            .iter()
            .filter(|t| t.2 * t.2 >= top - TIE_TOL * top.max(1e-300))
            .collect();
        let w = pi.weight(x) / tied.len() as f64;
        for &&(y, s, diff) in &tied {
            grad[x] += 2.0 * w * diff;
            grad[y] -= 2.0 * w * s * diff;
        }
    }
    for x in 0..n {
        grad[x] = (grad[x] - ratio * 2.0 * pi.weight(x) * f[x]) / den;
    }
    (ratio, grad)
}

fn normalize(pi: &VertexMeasure, f: &mut [f64]) -> bool {
    let norm: f64 = f
        .iter()
        .enumerate()
        .map(|(x, v)| pi.weight(x) * v * v)
        .sum::<f64>()
        .sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return false;
    }
    f.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Projected subgradient descent from `f`; returns the best (ratio, f) seen.
fn descend(g: &Graph, sigma: &Signature, pi: &VertexMeasure, mut f: Vec<f64>, iterations: usize) -> (f64, Vec<f64>) {
    if !normalize(pi, &mut f) {
        f = vec![1.0; g.n()];
        normalize(pi, &mut f);
    }
    let (r0, _) = subgradient(g, sigma, pi, &f);
    let c = 0.1 * r0;
    let mut best = (r0, f.clone());
    for k in 1..=iterations {
        let (r, grad) = subgradient(g, sigma, pi, &f);
        if r < best.0 {
            best = (r, f.clone());
        }
        let gnorm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm == 0.0 || c == 0.0 {
            break;
        }
        let step = c / (k as f64).sqrt();
        let mut next: Vec<f64> = f.iter().zip(&grad).map(|(v, d)| v - step * d).collect();
        if !normalize(pi, &mut next) {
            break;
        }
        f = next;
    }
    let r = sup_rayleigh(g, sigma, pi, &f);
    if r < best.0 {
        best = (r, f);
    }
    best
}

fn random_start(n: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn floor_term(h: f64) -> f64 {
    ((1.0 + h).sqrt() - 1.0).powi(2)
}

/// Certified bracket lower ≤ λ_∞^σ ≤ upper.
///
/// The spectral terms 2λ_1^σ and 2dλ_1^σ enter only for regular graphs under
/// the counting measure. The isoperimetric floors are omitted (with a note)
/// when their enumeration exceeds the caps.
pub fn lambda_inf_bracket(
    g: &Graph,
    sigma: &Signature,
    pi: &VertexMeasure,
    opts: &BracketOptions,
) -> Result<LambdaInfBracket> {
    if pi.len() != g.n() {
        return Err(Error::InvalidMeasure(format!(
            "{} weights for {} vertices",
            pi.len(),
            g.n()
        )));
    }
    if opts.restarts == 0 {
        return Err(Error::Config("restarts must be positive".into()));
    }
    let n = g.n();
    let (lambda1, eigvec) = signed_lowest_eigenfunction(g, sigma)?;
    // Δ^σ is positive semidefinite; solver noise below zero is dropped.
    let lambda1 = lambda1.max(0.0);
    let mut lower_terms = BTreeMap::new();
    let mut upper_terms = BTreeMap::new();
    let mut notes = Vec::new();
    match (g.regular_degree(), pi.is_counting()) {
        (Some(d), true) => {
            lower_terms.insert("two_lambda1".to_string(), 2.0 * lambda1);
            upper_terms.insert("two_d_lambda1".to_string(), 2.0 * d as f64 * lambda1);
        }
        _ => notes.push("spectral bounds need a regular graph with the counting measure; omitted".into()),
    }
    match signed_vertex_constants(g, sigma, pi, &opts.caps) {
        Ok((out, sym)) => {
            lower_terms.insert("h_out_sigma_floor".to_string(), floor_term(out.value.approx()));
            lower_terms.insert("h_sym_sigma_floor".to_string(), floor_term(sym.value.approx()));
        }
        Err(e) if e.is_cap_exceeded() => notes.push(format!("isoperimetric floors omitted: {e}")),
        Err(e) => return Err(e),
    }

    let seed = opts.seed;
    let iterations = opts.iterations;
    let mut runs: Vec<(f64, Vec<f64>)> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                eigvec.clone()
            } else {
                random_start(n, seed, r as u64)
            };
            descend(g, sigma, pi, start, iterations)
        })
        .collect();
    if let Balance::Balanced(tau) = sigma.is_balanced(g) {
        let f: Vec<f64> = tau.iter().map(|&t| t as f64).collect();
        runs.push((sup_rayleigh(g, sigma, pi, &f), f));
    }
    // Earliest run wins ties so the result is independent of scheduling.
    let (search, mut best_function) = runs
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one restart");
    let scale = best_function.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale > 0.0 {
        best_function.iter_mut().for_each(|v| *v /= scale);
    }
    let search = sup_rayleigh(g, sigma, pi, &best_function).min(search);
    upper_terms.insert("search".to_string(), search);

    let lower = lower_terms.values().copied().fold(0.0, f64::max);
    let upper = upper_terms.values().copied().fold(f64::INFINITY, f64::min);
    Ok(LambdaInfBracket {
        lower,
        upper,
        lower_terms,
        upper_terms,
        seed,
        best_function,
        notes,
        restarts: opts.restarts,
        iterations,
    })
}

/// sgn*(z) with sgn*(0) = +1.
fn sgn_star(z: f64) -> f64 {
    if z < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// ∫₀¹ |Y_√t(z1) − Y_√t(z2)| dt, where Y_s(z) = sgn*(z) for |z| ≥ s and 0 otherwise.
pub fn cutoff_integral_scalar(z1: f64, z2: f64) -> f64 {
    let (a, b) = (z1 * z1, z2 * z2);
    (sgn_star(z1) - sgn_star(z2)).abs() * a.min(b) + (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use std::f64::consts::PI;

    #[test]
    fn cutoff_examples() {
        assert_eq!(cutoff_integral_scalar(1.0, -1.0), 2.0);
        assert_eq!(cutoff_integral_scalar(0.3, 0.3), 0.0);
        assert!((cutoff_integral_scalar(0.8, 0.5) - 0.39).abs() < 1e-15);
        assert_eq!(cutoff_integral_scalar(0.0, -0.5), 0.25);
    }

    #[test]
    fn c5_bracket() {
        let g = cycle(5);
        let s = Signature::all_minus(&g);
        let b = lambda_inf_bracket(&g, &s, &VertexMeasure::counting(5), &BracketOptions::default()).unwrap();
        let l1 = 1.0 - (PI / 5.0).cos();
        assert!((b.lower - 2.0 * l1).abs() < 1e-9);
        assert!(b.upper <= 4.0 * l1 + 1e-9);
        assert!(b.lower <= b.upper + 1e-9);
        let again = lambda_inf_bracket(&g, &s, &VertexMeasure::counting(5), &BracketOptions::default()).unwrap();
        assert_eq!(b, again);
        let r = sup_rayleigh(&g, &s, &VertexMeasure::counting(5), &b.best_function);
        assert!((r - b.search_upper()).abs() < 1e-12);
    }

    #[test]
    fn balanced_bracket_is_zero() {
        let g = petersen();
        let tau: Vec<i8> = (0..10).map(|v| if v < 4 { -1 } else { 1 }).collect();
        let s = Signature::all_plus(&g).switch(&g, &tau);
        let b = lambda_inf_bracket(&g, &s, &VertexMeasure::counting(10), &BracketOptions::default()).unwrap();
        assert_eq!(b.upper, 0.0);
        assert!(b.lower.abs() < 1e-9);
    }

    #[test]
    fn irregular_measure_drops_spectral_terms() {
        let g = path(4);
        let s = Signature::all_minus(&g);
        let b = lambda_inf_bracket(
            &g,
            &s,
            &VertexMeasure::new(vec![1.0, 2.0, 1.0, 0.5]).unwrap(),
            &BracketOptions::default(),
        )
        .unwrap();
        assert!(!b.upper_terms.contains_key("two_d_lambda1"));
        assert!(!b.notes.is_empty());
    }
}
