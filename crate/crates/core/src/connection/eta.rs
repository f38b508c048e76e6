//! Sphere- and root-of-unity-valued frustration η_∞ and the constants η*_out, η*_S.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chord, Connection, CyclicConnection};
use crate::bits::{full_mask, lex_cmp, MaskIter, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::iso::{signed_vertex_constants, ConstantResult, IsoCaps, Method, Witness};
use crate::value::{Quantity, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaMode {
    ExactCyclic,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaKind {
    Out,
    Sym,
}

/// Exact cyclic enumeration is allowed for |V1| ≤ max_vertices and k ≤ max_order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaBudget {
    pub max_vertices: usize,
    pub max_order: usize,
}

impl Default for EtaBudget {
    fn default() -> Self {
        EtaBudget {
            max_vertices: 10,
            max_order: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EtaOptions {
    pub seed: u64,
    pub restarts: usize,
    pub sweeps: usize,
    pub budget: EtaBudget,
    pub caps: IsoCaps,
}

impl Default for EtaOptions {
    fn default() -> Self {
        EtaOptions {
            seed: 0,
            restarts: 8,
            sweeps: 60,
            budget: EtaBudget::default(),
            caps: IsoCaps::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwitchingValues {
    /// τ(x) = ξ^{j(x)}.
    Cyclic(Vec<usize>),
    Sphere(Vec<Vec<Complex64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaResult {
    pub value: Quantity,
    pub method: Method,
    pub domain: Vec<usize>,
    pub tau: SwitchingValues,
}

fn cyclic_quantity(value: f64, order: usize, pi: &VertexMeasure) -> Quantity {
    if order <= 2 && pi.as_integers().is_some() && value.fract() == 0.0 {
        Quantity::Exact(Rational::from_integer(value as i64))
    } else {
        Quantity::Float(value)
    }
}

/// ½ Σ_{x∈V1} π(x) max over in-set neighbours of |1 − ξ^{e + j(y) − j(x)}|, minimised over
/// j: V1 → Z_k with j = 0 on the first vertex. Ties keep the lexicographically
/// smallest assignment.
fn exact_cyclic(g: &Graph, cy: &CyclicConnection, pi: &VertexMeasure, dom: &[usize]) -> (f64, Vec<usize>) {
    let m = dom.len();
    if m == 0 {
        return (0.0, Vec::new());
    }
    let k = cy.order();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in dom.iter().enumerate() {
        pos[v] = i;
    }
    let nbrs: Vec<Vec<(usize, usize)>> = dom
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .zip(cy.row(x))
                .filter(|(&y, _)| pos[y] != usize::MAX)
                .map(|(&y, &e)| (pos[y], e))
                .collect()
        })
        .collect();
    let chords: Vec<f64> = (0..k).map(|d| chord(d, k)).collect();
    let weights: Vec<f64> = dom.iter().map(|&v| pi.weight(v)).collect();
    let eval = |a: &[usize]| -> f64 {
        let mut total = 0.0;
        for i in 0..m {
            let sup = nbrs[i]
                .iter()
                .map(|&(j, e)| chords[(e + a[j] + k - a[i]) % k])
                .fold(0.0, f64::max);
            total += weights[i] * sup;
        }
        total / 2.0
    };
    let mut a = vec![0usize; m];
    let mut best = (eval(&a), a.clone());
    loop {
        let mut i = m - 1;
        while i > 0 && a[i] == k - 1 {
            a[i] = 0;
            i -= 1;
        }
        if i == 0 {
            break;
        }
        a[i] += 1;
        let v = eval(&a);
        if v < best.0 {
            best = (v, a.clone());
        }
    }
    best
}

fn sphere_objective(
    g: &Graph,
    c: &Connection,
    pi: &VertexMeasure,
    dom: &[usize],
    pos: &[usize],
    tau: &[Vec<Complex64>],
) -> f64 {
    let mut total = 0.0;
    for (i, &x) in dom.iter().enumerate() {
        let mut sup = 0.0f64;
        for (slot, &y) in g.neighbors(x).iter().enumerate() {
            if pos[y] == usize::MAX {
                continue;
            }
            let t = c.apply(x, slot, &tau[pos[y]]);
            let d: f64 = tau[i]
                .iter()
                .zip(&t)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            sup = sup.max(d);
        }
        total += pi.weight(x) * sup;
    }
    total / 2.0
}

fn normalize(v: &mut [Complex64]) -> bool {
    let r: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(r > 1e-300 && r.is_finite()) {
        return false;
    }
    v.iter_mut().for_each(|z| *z /= r);
    true
}

fn random_unit(rng: &mut ChaCha8Rng, k: usize, real: bool) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..k)
            .map(|_| {
                let re = rng.gen_range(-1.0..1.0);
                let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
                Complex64::new(re, im)
            })
            .collect();
        if normalize(&mut v) {
            return v;
        }
    }
}

/// Alternating minimisation over unit vectors: each τ(x) moves to the
/// normalised softmax-weighted average of its targets σ_xy τ(y), with the
/// temperature rising each sweep. Returns the best τ seen over all restarts.
fn heuristic_sphere(
    g: &Graph,
    c: &Connection,
    pi: &VertexMeasure,
    dom: &[usize],
    opts: &EtaOptions,
    stream_base: u64,
) -> (f64, Vec<Vec<Complex64>>) {
    let m = dom.len();
    if m == 0 {
        return (0.0, Vec::new());
    }
    let k = c.dim();
    let real = c.is_real();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in dom.iter().enumerate() {
        pos[v] = i;
    }
    let runs: Vec<(f64, Vec<Vec<Complex64>>)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(stream_base.wrapping_mul(64).wrapping_add(r as u64));
            let mut tau: Vec<Vec<Complex64>> = (0..m).map(|_| random_unit(&mut rng, k, real)).collect();
            let mut best = (sphere_objective(g, c, pi, dom, &pos, &tau), tau.clone());
            let mut beta = 1.0f64;
            for _ in 0..opts.sweeps {
                for i in 0..m {
                    let x = dom[i];
                    let dists = |v: usize, tv: &[Complex64]| -> Vec<(usize, f64, Vec<Complex64>)> {
                        g.neighbors(v)
                            .iter()
                            .enumerate()
                            .filter(|&(_, &y)| pos[y] != usize::MAX && y != v)
                            .map(|(slot, &y)| {
                                let t = c.apply(v, slot, &tau[pos[y]]);
                                let d = tv.iter().zip(&t).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                                (y, d, t)
                            })
                            .collect()
                    };
                    let own = dists(x, &tau[i]);
                    if own.is_empty() {
                        continue;
                    }
                    let soft = |ds: &[f64]| -> Vec<f64> {
                        let top = ds.iter().copied().fold(f64::MIN, f64::max);
                        let w: Vec<f64> = ds.iter().map(|d| (beta * (d - top)).exp()).collect();
                        let s: f64 = w.iter().sum();
                        w.into_iter().map(|v| v / s).collect()
                    };
                    let own_soft = soft(&own.iter().map(|t| t.1).collect::<Vec<_>>());
                    let mut next = vec![Complex64::new(0.0, 0.0); k];
                    for (idx, (y, _, target)) in own.iter().enumerate() {
                        let theirs = dists(*y, &tau[pos[*y]]);
                        let their_soft = soft(&theirs.iter().map(|t| t.1).collect::<Vec<_>>());
                        let back = theirs.iter().position(|t| t.0 == x).map_or(0.0, |p| their_soft[p]);
                        let w = pi.weight(x) * own_soft[idx] + pi.weight(*y) * back;
                        for (n, t) in next.iter_mut().zip(target) {
                            *n += t * w;
                        }
                    }
                    if real {
                        next.iter_mut().for_each(|z| z.im = 0.0);
                    }
                    if normalize(&mut next) {
                        tau[i] = next;
                    }
                }
                beta *= 1.25;
                let v = sphere_objective(g, c, pi, dom, &pos, &tau);
                if v < best.0 {
                    best = (v, tau.clone());
                }
            }
            best
        })
        .collect();
    runs.into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one restart")
}

fn check_budget(dom_len: usize, order: usize, budget: &EtaBudget) -> Result<()> {
    if order > budget.max_order {
        return Err(Error::CapExceeded {
            what: "cyclic frustration order",
            size: order,
            cap: budget.max_order,
        });
    }
    if dom_len > budget.max_vertices {
        return Err(Error::CapExceeded {
            what: "cyclic frustration vertices",
            size: dom_len,
            cap: budget.max_vertices,
        });
    }
    Ok(())
}

/// η_∞^{σ,π}(V1): exact over k-th roots of unity, or a heuristic upper bound
/// over unit vectors.
pub fn frustration_eta(
    g: &Graph,
    c: &Connection,
    pi: &VertexMeasure,
    v1: &VertexSet,
    mode: EtaMode,
    opts: &EtaOptions,
) -> Result<EtaResult> {
    if pi.len() != g.n() {
        return Err(Error::InvalidMeasure(format!(
            "{} weights for {} vertices",
            pi.len(),
            g.n()
        )));
    }
    let dom = v1.to_vec();
    match mode {
        EtaMode::ExactCyclic => {
            let cy = c
                .cyclic()
                .ok_or_else(|| Error::InvalidConnection("exact mode needs a cyclic connection".into()))?;
            check_budget(dom.len(), cy.order(), &opts.budget)?;
            let (value, tau) = exact_cyclic(g, cy, pi, &dom);
            Ok(EtaResult {
                value: cyclic_quantity(value, cy.order(), pi),
                method: Method::Exact,
                domain: dom,
                tau: SwitchingValues::Cyclic(tau),
            })
        }
        EtaMode::Heuristic => {
            let (value, tau) = heuristic_sphere(g, c, pi, &dom, opts, 0);
            Ok(EtaResult {
                value: Quantity::Float(value),
                method: Method::HeuristicUpperBound,
                domain: dom,
                tau: SwitchingValues::Sphere(tau),
            })
        }
    }
}

#[derive(Clone, Copy)]
struct Best {
    num: f64,
    den: f64,
    set: u64,
}

impl Best {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num / self.den)
            .total_cmp(&(o.num / o.den))
            .then_with(|| self.set.count_ones().cmp(&o.set.count_ones()))
            .then_with(|| lex_cmp(self.set, o.set))
    }
}

fn inner_mask(g: &Graph, u: u64) -> u64 {
    MaskIter(u)
        .filter(|&x| g.nbr_mask(x) & !u != 0)
        .fold(0, |m, x| m | (1 << x))
}

fn out_mask(g: &Graph, u: u64) -> u64 {
    MaskIter(u).fold(0, |m, x| m | g.nbr_mask(x)) & !u
}

/// (η*_out, η*_S). Cyclic connections of order ≤ 2 are signatures and reuse the
/// exact signed computation; higher orders enumerate exactly within the
/// budget; general connections give heuristic upper bounds.
pub fn eta_star_pair(
    g: &Graph,
    c: &Connection,
    pi: &VertexMeasure,
    opts: &EtaOptions,
) -> Result<(ConstantResult, ConstantResult)> {
    if pi.len() != g.n() {
        return Err(Error::InvalidMeasure(format!(
            "{} weights for {} vertices",
            pi.len(),
            g.n()
        )));
    }
    if let Some(sigma) = c.cyclic().and_then(|cy| cy.to_signature(g)) {
        let (mut out, mut sym) = signed_vertex_constants(g, &sigma, pi, &opts.caps)?;
        out.name = "eta_star_out".into();
        sym.name = "eta_star_sym".into();
        return Ok((out, sym));
    }
    let n = g.n();
    let method = match c.cyclic() {
        Some(cy) => {
            check_budget(n, cy.order(), &opts.budget)?;
            Method::Exact
        }
        None => {
            let cap = opts.caps.tripartition_cap;
            if n > cap || !g.has_masks() {
                return Err(Error::CapExceeded {
                    what: "heuristic frustration subsets",
                    size: n,
                    cap,
                });
            }
            Method::HeuristicUpperBound
        }
    };
    let table: Vec<f64> = (0..=full_mask(n))
        .into_par_iter()
        .map(|u| {
            let dom: Vec<usize> = MaskIter(u).collect();
            match c.cyclic() {
                Some(cy) => exact_cyclic(g, cy, pi, &dom).0,
                None => heuristic_sphere(g, c, pi, &dom, opts, u).0,
            }
        })
        .collect();
    let weight = |m: u64| -> f64 { MaskIter(m).map(|v| pi.weight(v)).sum() };
    let pick = |f: &(dyn Fn(u64) -> f64 + Sync)| -> Best {
        (1..=full_mask(n))
            .into_par_iter()
            .map(|u| Best {
                num: f(u),
                den: weight(u),
                set: u,
            })
            .reduce_with(|a, b| if b.cmp(&a) == Ordering::Less { b } else { a })
            .expect("n >= 1")
    };
    let out = pick(&|u| 2.0 * table[u as usize] + weight(out_mask(g, u)));
    let sym = pick(&|u| {
        let inner = inner_mask(g, u);
        2.0 * table[(u & !inner) as usize] + weight(out_mask(g, u) | inner)
    });
    let result = |name: &str, b: Best, interior: Option<u64>| ConstantResult {
        name: name.into(),
        value: Quantity::Float(b.num / b.den),
        witness: Witness {
            set: MaskIter(b.set).collect(),
            interior: interior.map(|m| MaskIter(m).collect()),
            ..Default::default()
        },
        method,
        notes: Vec::new(),
    };
    Ok((
        result("eta_star_out", out, None),
        result("eta_star_sym", sym, Some(sym.set & !inner_mask(g, sym.set))),
    ))
}

pub fn eta_star(
    g: &Graph,
    c: &Connection,
    pi: &VertexMeasure,
    kind: EtaKind,
    opts: &EtaOptions,
) -> Result<ConstantResult> {
    let (out, sym) = eta_star_pair(g, c, pi, opts)?;
    Ok(match kind {
        EtaKind::Out => out,
        EtaKind::Sym => sym,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::signed::{frustration_sup, Signature};
    use std::collections::BTreeMap;

    #[test]
    fn order_two_matches_signed_frustration() {
        let g = petersen();
        let tau: Vec<i8> = (0..10).map(|v| if v % 4 == 1 { -1 } else { 1 }).collect();
        let s = Signature::all_minus(&g).switch(&g, &tau);
        let c = Connection::from_signature(&g, &s);
        let pi = VertexMeasure::counting(10);
        for mask in [0b1111111111u64, 0b1010110011, 0b111] {
            let v1 = VertexSet::from_mask(10, mask);
            let e = frustration_eta(&g, &c, &pi, &v1, EtaMode::ExactCyclic, &EtaOptions::default()).unwrap();
            let f = frustration_sup(&g, &s, &pi, &v1, 22).unwrap();
            assert_eq!(e.value.approx(), f.value);
        }
    }

    #[test]
    fn exact_table_matches_signed_at_order_two() {
        let g = cycle(5);
        let s = Signature::all_minus(&g);
        let cy = CyclicConnection::from_signature(&g, &s);
        let pi = VertexMeasure::counting(5);
        let full: Vec<usize> = (0..5).collect();
        assert_eq!(exact_cyclic(&g, &cy, &pi, &full).0, 2.0);
        let (out, sym) = eta_star_pair(&g, &cy.to_connection(), &pi, &EtaOptions::default()).unwrap();
        assert_eq!(out.value, Quantity::ratio(1, 4));
        assert_eq!(sym.value, Quantity::ratio(3, 4));
    }

    #[test]
    fn triangle_with_trivial_holonomy() {
        let g = cycle(3);
        let cy = CyclicConnection::from_map(&g, 3, &BTreeMap::from([((0, 1), 1), ((1, 2), 1), ((2, 0), 1)])).unwrap();
        let c = cy.to_connection();
        let pi = VertexMeasure::counting(3);
        let e = frustration_eta(
            &g,
            &c,
            &pi,
            &VertexSet::full(3),
            EtaMode::ExactCyclic,
            &EtaOptions::default(),
        )
        .unwrap();
        assert_eq!(e.value, Quantity::Float(0.0));
        let (out, _) = eta_star_pair(&g, &c, &pi, &EtaOptions::default()).unwrap();
        assert_eq!(out.value.approx(), 0.0);
        assert_eq!(out.witness.set, vec![0, 1, 2]);
    }

    #[test]
    fn trivial_and_heuristic() {
        let g = cycle(4);
        let pi = VertexMeasure::counting(4);
        let c = Connection::trivial(&g, 2);
        let e = frustration_eta(
            &g,
            &c,
            &pi,
            &VertexSet::full(4),
            EtaMode::Heuristic,
            &EtaOptions::default(),
        )
        .unwrap();
        assert!(e.value.approx() < 1e-9);
        let (out, _) = eta_star_pair(&g, &c, &pi, &EtaOptions::default()).unwrap();
        assert_eq!(out.method, Method::HeuristicUpperBound);
        assert!(out.value.approx() < 1e-9);
    }

    #[test]
    fn budget_is_enforced() {
        let g = cycle(11);
        let cy = CyclicConnection::from_map(&g, 3, &BTreeMap::new()).unwrap();
        let r = eta_star_pair(
            &g,
            &cy.to_connection(),
            &VertexMeasure::counting(11),
            &EtaOptions::default(),
        );
        assert!(r.unwrap_err().is_cap_exceeded());
        let c5 = CyclicConnection::from_map(&cycle(5), 5, &BTreeMap::new()).unwrap();
        let r = frustration_eta(
            &cycle(5),
            &c5.to_connection(),
            &VertexMeasure::counting(5),
            &VertexSet::full(5),
            EtaMode::ExactCyclic,
            &EtaOptions::default(),
        );
        assert!(r.unwrap_err().is_cap_exceeded());
    }
}
