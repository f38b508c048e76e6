//! Signatures, switching, balance and frustration indices.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::value::Rational;

pub const DEFAULT_FRUSTRATION_CAP: usize = 22;

/// Edge signs, stored per vertex aligned with `Graph::neighbors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    signs: Vec<Vec<i8>>,
}

/// τ on an explicit domain; `values[i]` is τ(domain[i]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingFunction {
    pub domain: Vec<usize>,
    pub values: Vec<i8>,
}

impl SwitchingFunction {
    pub fn constant(domain: Vec<usize>) -> Self {
        let values = vec![1; domain.len()];
        SwitchingFunction { domain, values }
    }

    /// Extends to all of 0..n with +1 outside the domain.
    pub fn total(&self, n: usize) -> Vec<i8> {
        let mut t = vec![1; n];
        for (&v, &s) in self.domain.iter().zip(&self.values) {
            t[v] = s;
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// τ over all vertices with σ^τ ≡ +1.
    Balanced(Vec<i8>),
    /// A closed walk whose sign product is −1.
    Unbalanced(Vec<usize>),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frustration {
    pub value: f64,
    /// Present when the value is a rational computable without rounding.
    pub exact: Option<Rational>,
    pub tau: SwitchingFunction,
}

impl Signature {
    pub fn constant(g: &Graph, s: i8) -> Self {
        Signature {
            signs: (0..g.n()).map(|v| vec![s; g.degree(v)]).collect(),
        }
    }

    pub fn all_plus(g: &Graph) -> Self {
        Self::constant(g, 1)
    }

    pub fn all_minus(g: &Graph) -> Self {
        Self::constant(g, -1)
    }

    /// Signs keyed by (u, v) with u ≤ v; omitted edges are +1.
    pub fn from_map(g: &Graph, map: &BTreeMap<(usize, usize), i8>) -> Result<Self> {
        for (&(u, v), &s) in map {
            if u > v || !g.has_edge(u, v) || v >= g.n() {
                return Err(Error::InvalidSignature(format!("{u},{v} is not an edge")));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidSignature(format!("sign {s} on {u},{v} is not ±1")));
            }
        }
        let signs = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .map(|&v| *map.get(&(u.min(v), u.max(v))).unwrap_or(&1))
                    .collect()
            })
            .collect();
        Ok(Signature { signs })
    }

    /// Independent fair signs per edge in canonical order, from a ChaCha8 stream.
    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let signs: Vec<i8> = g
            .edges()
            .iter()
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        Self::from_edge_signs(g, &signs).expect("one sign per edge")
    }

    /// Signs in canonical edge order.
    pub fn from_edge_signs(g: &Graph, signs: &[i8]) -> Result<Self> {
        let edges = g.edges();
        if edges.len() != signs.len() {
            return Err(Error::InvalidSignature(format!(
                "{} signs for {} edges",
                signs.len(),
                edges.len()
            )));
        }
        let map = edges.into_iter().zip(signs.iter().copied()).collect();
        Self::from_map(g, &map)
    }

    pub fn sign(&self, g: &Graph, u: usize, v: usize) -> i8 {
        let i = g
            .neighbors(u)
            .binary_search(&v)
            .unwrap_or_else(|_| panic!("{u},{v} is not an edge"));
        self.signs[u][i]
    }

    /// Signs aligned with `g.neighbors(v)`.
    pub fn row(&self, v: usize) -> &[i8] {
        &self.signs[v]
    }

    pub fn edge_signs(&self, g: &Graph) -> Vec<i8> {
        g.edges().into_iter().map(|(u, v)| self.sign(g, u, v)).collect()
    }

    pub fn to_map(&self, g: &Graph) -> BTreeMap<(usize, usize), i8> {
        g.edges()
            .into_iter()
            .map(|(u, v)| ((u, v), self.sign(g, u, v)))
            .collect()
    }

    pub fn is_constant(&self, s: i8) -> bool {
        self.signs.iter().flatten().all(|&x| x == s)
    }

    pub fn negated(&self) -> Self {
        Signature {
            signs: self.signs.iter().map(|r| r.iter().map(|s| -s).collect()).collect(),
        }
    }

    /// Negative-neighbour bitmask of v; needs n ≤ 64.
    pub fn neg_mask(&self, g: &Graph, v: usize) -> u64 {
        g.neighbors(v)
            .iter()
            .zip(&self.signs[v])
            .filter(|(_, &s)| s < 0)
            .fold(0u64, |m, (&w, _)| m | (1 << w))
    }

    /// σ^τ_xy = τ(x)σ_xy τ(y); loop signs are unchanged.
    pub fn switch(&self, g: &Graph, tau: &[i8]) -> Self {
        assert_eq!(tau.len(), g.n(), "switching function must be total on V");
        let signs = (0..g.n())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .zip(&self.signs[u])
                    .map(|(&v, &s)| if u == v { s } else { tau[u] * s * tau[v] })
                    .collect()
            })
            .collect();
        Signature { signs }
    }

    /// BFS potentials per component.
    pub fn is_balanced(&self, g: &Graph) -> Balance {
        let n = g.n();
        let mut tau: Vec<i8> = vec![0; n];
        let mut parent: Vec<usize> = (0..n).collect();
        for root in 0..n {
            if tau[root] != 0 {
                continue;
            }
            tau[root] = 1;
            let mut q = VecDeque::from([root]);
            while let Some(u) = q.pop_front() {
                for (&v, &s) in g.neighbors(u).iter().zip(&self.signs[u]) {
                    if tau[v] == 0 {
                        tau[v] = tau[u] * s;
                        parent[v] = u;
                        q.push_back(v);
                    } else if tau[v] != tau[u] * s {
                        return Balance::Unbalanced(closed_walk(&parent, root, u, v));
                    }
                }
            }
        }
        Balance::Balanced(tau)
    }

    /// Product of signs along a closed walk.
    pub fn walk_sign(&self, g: &Graph, walk: &[usize]) -> i8 {
        (0..walk.len())
            .map(|i| self.sign(g, walk[i], walk[(i + 1) % walk.len()]))
            .product()
    }
}

fn closed_walk(parent: &[usize], root: usize, u: usize, v: usize) -> Vec<usize> {
    let up = |mut x: usize| {
        let mut p = vec![x];
        while x != root {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let mut walk: Vec<usize> = up(u).into_iter().rev().collect();
    if u != v {
        walk.extend(up(v).into_iter().take_while(|&x| x != root));
    }
    walk
}

/// Induced signed structure on V1 in local indices.
struct Local {
    domain: Vec<usize>,
    /// (j, σ) for non-loop neighbours inside V1.
    nbrs: Vec<Vec<(usize, i8)>>,
    neg_loop: Vec<bool>,
}

impl Local {
    fn new(g: &Graph, sigma: &Signature, v1: &VertexSet) -> Self {
        let domain = v1.to_vec();
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in domain.iter().enumerate() {
            pos[v] = i;
        }
        let mut nbrs = vec![Vec::new(); domain.len()];
        let mut neg_loop = vec![false; domain.len()];
        for (i, &x) in domain.iter().enumerate() {
            for (&y, &s) in g.neighbors(x).iter().zip(sigma.row(x)) {
                if y == x {
                    neg_loop[i] = s < 0;
                } else if pos[y] != usize::MAX {
                    nbrs[i].push((pos[y], s));
                }
            }
        }
        Local { domain, nbrs, neg_loop }
    }

    fn k(&self) -> usize {
        self.domain.len()
    }

    fn tau_of(&self, mask: u64) -> SwitchingFunction {
        SwitchingFunction {
            domain: self.domain.clone(),
            values: (0..self.k()).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }
}

fn check_cap(k: usize, cap: usize) -> Result<()> {
    if k > cap || k > 62 {
        return Err(Error::CapExceeded {
            what: "switching enumeration",
            size: k,
            cap: cap.min(62),
        });
    }
    Ok(())
}

/// Enumerates masks over the low `k−1` bits (the top vertex stays +1) in
/// blocks, and returns the minimum of `score` with the smallest mask on ties.
fn enumerate_min<S, W, F>(k: usize, make: F) -> (S, u64)
where
    S: PartialOrd + Copy + Send,
    W: GrayWalker<S>,
    F: Fn(u64) -> W + Sync,
{
    let free = k.saturating_sub(1);
    let block_bits = free.saturating_sub(14).min(6);
    let low = free - block_bits;
    let results: Vec<(S, u64)> = (0..1u64 << block_bits)
        .into_par_iter()
        .map(|block| {
            let start = block << low;
            let mut w = make(start);
            let mut best = (w.score(), start);
            let mut mask = start;
            for g in 1u64..(1 << low) {
                let bit = g.trailing_zeros() as usize;
                mask ^= 1 << bit;
                w.flip(bit);
                let s = w.score();
                if s < best.0 || (s == best.0 && mask < best.1) {
                    best = (s, mask);
                }
            }
            best
        })
        .collect();
    let mut best = results[0];
    for &r in &results[1..] {
        if r.0 < best.0 || (r.0 == best.0 && r.1 < best.1) {
            best = r;
        }
    }
    best
}

trait GrayWalker<S> {
    fn flip(&mut self, i: usize);
    fn score(&self) -> S;
}

struct EdgeWalker<'a> {
    local: &'a Local,
    tau: Vec<i8>,
    frustrated: i64,
}

impl<'a> EdgeWalker<'a> {
    fn new(local: &'a Local, mask: u64) -> Self {
        let tau: Vec<i8> = (0..local.k())
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let mut frustrated = 0;
        for i in 0..local.k() {
            for &(j, s) in &local.nbrs[i] {
                if i < j && tau[i] * s * tau[j] < 0 {
                    frustrated += 1;
                }
            }
        }
        EdgeWalker { local, tau, frustrated }
    }
}

impl GrayWalker<i64> for EdgeWalker<'_> {
    fn flip(&mut self, i: usize) {
        for &(j, s) in &self.local.nbrs[i] {
            if self.tau[i] * s * self.tau[j] < 0 {
                self.frustrated -= 1;
            } else {
                self.frustrated += 1;
            }
        }
        self.tau[i] = -self.tau[i];
    }

    fn score(&self) -> i64 {
        self.frustrated
    }
}

/// ι_p(V1) = min_τ ½ Σ_{x∈V1} Σ_{y∈V1, y~x} |τ(x) − σ_xy τ(y)|^p.
///
/// A frustrated non-loop edge contributes 2^p and a negative loop 2^{p−1},
/// so the value is 2^{p−1}(2m + ℓ) and the minimiser does not depend on p.
pub fn frustration_edge(g: &Graph, sigma: &Signature, v1: &VertexSet, p: f64, cap: usize) -> Result<Frustration> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Config(format!("p = {p} must be at least 1")));
    }
    let local = Local::new(g, sigma, v1);
    check_cap(local.k(), cap)?;
    let loops = local.neg_loop.iter().filter(|&&b| b).count() as i64;
    if local.k() == 0 {
        return Ok(Frustration {
            value: 0.0,
            exact: Some(Rational::from_integer(0)),
            tau: local.tau_of(0),
        });
    }
    let (m, mask) = enumerate_min(local.k(), |start| EdgeWalker::new(&local, start));
    let units = 2 * m + loops;
    let value = 2f64.powf(p - 1.0) * units as f64;
    let exact = (p.fract() == 0.0 && p <= 40.0).then(|| Rational::from_integer((1i64 << (p as u32 - 1)) * units));
    Ok(Frustration {
        value,
        exact,
        tau: local.tau_of(mask),
    })
}

struct SupWalker<'a, W> {
    local: &'a Local,
    weights: &'a [W],
    tau: Vec<i8>,
    count: Vec<u32>,
    bad: W,
}

pub(crate) trait Weight:
    Copy + PartialOrd + Send + Sync + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self>
{
    fn zero() -> Self;
}

impl Weight for i64 {
    fn zero() -> Self {
        0
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl<'a, W: Weight> SupWalker<'a, W> {
    fn new(local: &'a Local, weights: &'a [W], mask: u64) -> Self {
        let tau: Vec<i8> = (0..local.k())
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let mut count = vec![0u32; local.k()];
        for i in 0..local.k() {
            for &(j, s) in &local.nbrs[i] {
                if tau[i] * s * tau[j] < 0 {
                    count[i] += 1;
                }
            }
        }
        let mut bad = W::zero();
        for i in 0..local.k() {
            if count[i] > 0 || local.neg_loop[i] {
                bad = bad + weights[i];
            }
        }
        SupWalker {
            local,
            weights,
            tau,
            count,
            bad,
        }
    }

    fn is_bad(&self, i: usize) -> bool {
        self.count[i] > 0 || self.local.neg_loop[i]
    }

    fn adjust(&mut self, i: usize, delta: i32) {
        let before = self.is_bad(i);
        self.count[i] = (self.count[i] as i32 + delta) as u32;
        let after = self.is_bad(i);
        if before && !after {
            self.bad = self.bad - self.weights[i];
        } else if !before && after {
            self.bad = self.bad + self.weights[i];
        }
    }
}

impl<W: Weight> GrayWalker<W> for SupWalker<'_, W> {
    fn flip(&mut self, i: usize) {
        let ti = self.tau[i];
        for idx in 0..self.local.nbrs[i].len() {
            let (j, s) = self.local.nbrs[i][idx];
            let d = if ti * s * self.tau[j] < 0 { -1 } else { 1 };
            self.adjust(i, d);
            self.adjust(j, d);
        }
        self.tau[i] = -ti;
    }

    fn score(&self) -> W {
        self.bad
    }
}

/// ι_∞^{σ,π}(V1) = min_τ ½ Σ_{x∈V1} sup_{y∈V1, y~x} |τ(x) − σ_xy τ(y)| π(x).
///
/// Each sup is 2 or 0, so the value is π of the vertices that see a
/// frustrated edge (or carry a negative loop) inside V1. An empty sup is 0.
pub fn frustration_sup(
    g: &Graph,
    sigma: &Signature,
    pi: &VertexMeasure,
    v1: &VertexSet,
    cap: usize,
) -> Result<Frustration> {
    let local = Local::new(g, sigma, v1);
    check_cap(local.k(), cap)?;
    if local.k() == 0 {
        return Ok(Frustration {
            value: 0.0,
            exact: Some(Rational::from_integer(0)),
            tau: local.tau_of(0),
        });
    }
    match pi.as_integers() {
        Some(all) => {
            let w: Vec<i64> = local.domain.iter().map(|&v| all[v]).collect();
            let (bad, mask) = enumerate_min(local.k(), |start| SupWalker::new(&local, &w, start));
            Ok(Frustration {
                value: bad as f64,
                exact: Some(Rational::from_integer(bad)),
                tau: local.tau_of(mask),
            })
        }
        None => {
            let w: Vec<f64> = local.domain.iter().map(|&v| pi.weight(v)).collect();
            let (_, mask) = enumerate_min(local.k(), |start| SupWalker::new(&local, &w, start));
            // Re-sum at the minimiser so the value carries no walk drift.
            let tau = local.tau_of(mask);
            let value = sup_objective(g, sigma, pi, &tau);
            Ok(Frustration {
                value,
                exact: None,
                tau,
            })
        }
    }
}

/// ½ Σ_x sup_y |τ(x) − σ_xy τ(y)| π(x) for a given τ.
pub fn sup_objective(g: &Graph, sigma: &Signature, pi: &VertexMeasure, tau: &SwitchingFunction) -> f64 {
    let mut t = vec![0i8; g.n()];
    for (&v, &s) in tau.domain.iter().zip(&tau.values) {
        t[v] = s;
    }
    let mut total = 0.0;
    for &x in &tau.domain {
        let sup = g
            .neighbors(x)
            .iter()
            .zip(sigma.row(x))
            .filter(|(&y, _)| t[y] != 0)
            .map(|(&y, &s)| (t[x] - s * t[y]).abs())
            .max()
            .unwrap_or(0);
        total += sup as f64 * pi.weight(x);
    }
    total / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn naive_edge(g: &Graph, sigma: &Signature, v1: &[usize], p: f64) -> f64 {
        let k = v1.len();
        let mut best = f64::INFINITY;
        for mask in 0u64..(1 << k) {
            let mut t = vec![0i8; g.n()];
            for (i, &v) in v1.iter().enumerate() {
                t[v] = if mask >> i & 1 == 1 { -1 } else { 1 };
            }
            let mut sum = 0.0;
            for &x in v1 {
                for &y in v1 {
                    if g.has_edge(x, y) {
                        let d = (t[x] - sigma.sign(g, x, y) * t[y]).abs() as f64;
                        sum += d.powf(p);
                    }
                }
            }
            best = best.min(sum / 2.0);
        }
        best
    }

    #[test]
    fn switching_examples() {
        let c4 = cycle(4);
        let m = Signature::all_minus(&c4);
        let t = [1, -1, 1, -1];
        assert!(m.switch(&c4, &t).is_constant(1));
        assert_eq!(m.switch(&c4, &t).switch(&c4, &t), m);
        assert_eq!(m.switch(&c4, &[1; 4]), m);
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let s = Signature::all_minus(&g).switch(&g, &[-1, 1]);
        assert_eq!(s.sign(&g, 0, 0), -1);
        assert_eq!(s.sign(&g, 0, 1), 1);
    }

    #[test]
    fn balance_examples() {
        let c5 = cycle(5);
        assert!(Signature::all_plus(&c5).is_balanced(&c5).is_balanced());
        let m5 = Signature::all_minus(&c5);
        match m5.is_balanced(&c5) {
            Balance::Unbalanced(w) => assert_eq!(m5.walk_sign(&c5, &w), -1),
            _ => panic!("C5 with all-minus is unbalanced"),
        }
        let c4 = cycle(4);
        match Signature::all_minus(&c4).is_balanced(&c4) {
            Balance::Balanced(t) => assert!(Signature::all_minus(&c4).switch(&c4, &t).is_constant(1)),
            _ => panic!("C4 with all-minus is balanced"),
        }
        let l = Graph::from_edges(1, &[(0, 0)]).unwrap();
        assert!(!Signature::all_minus(&l).is_balanced(&l).is_balanced());
    }

    #[test]
    fn edge_frustration_examples() {
        let c5 = cycle(5);
        let m = Signature::all_minus(&c5);
        let f = frustration_edge(&c5, &m, &VertexSet::full(5), 1.0, 22).unwrap();
        assert_eq!(f.exact, Some(Rational::from_integer(2)));
        let l = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let f = frustration_edge(&l, &Signature::all_minus(&l), &VertexSet::full(1), 1.0, 22).unwrap();
        assert_eq!(f.value, 1.0);
        let c4 = cycle(4);
        let f = frustration_edge(&c4, &Signature::all_minus(&c4), &VertexSet::full(4), 1.0, 22).unwrap();
        assert_eq!(f.value, 0.0);
    }

    #[test]
    fn edge_frustration_matches_naive() {
        let g = petersen();
        let sigma = Signature::from_edge_signs(
            &g,
            &(0..15).map(|i| if i % 3 == 0 { -1 } else { 1 }).collect::<Vec<_>>(),
        )
        .unwrap();
        for p in [1.0, 2.0, 2.5] {
            for mask in [0b1111111111u64, 0b0110110111, 0b11] {
                let v1 = VertexSet::from_mask(10, mask);
                let f = frustration_edge(&g, &sigma, &v1, p, 22).unwrap();
                assert!((f.value - naive_edge(&g, &sigma, &v1.to_vec(), p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sup_frustration_examples() {
        let c5 = cycle(5);
        let m = Signature::all_minus(&c5);
        let pi = VertexMeasure::counting(5);
        let f = frustration_sup(&c5, &m, &pi, &VertexSet::from_mask(5, 0b1111), 22).unwrap();
        assert_eq!(f.value, 0.0);
        let f = frustration_sup(&c5, &m, &pi, &VertexSet::full(5), 22).unwrap();
        assert_eq!(f.value, 2.0);
        assert_eq!(sup_objective(&c5, &m, &pi, &f.tau), 2.0);
        let f = frustration_sup(&c5, &m, &pi, &VertexSet::from_mask(5, 0b10101), 22).unwrap();
        assert_eq!(f.value, 0.0);
    }

    #[test]
    fn sup_frustration_with_real_weights() {
        let c5 = cycle(5);
        let m = Signature::all_minus(&c5);
        let pi = VertexMeasure::new(vec![0.5, 1.5, 2.25, 1.0, 3.0]).unwrap();
        let f = frustration_sup(&c5, &m, &pi, &VertexSet::full(5), 22).unwrap();
        // The forced monochromatic edge lands on the lightest adjacent pair {0, 1}.
        assert!((f.value - 2.0).abs() < 1e-12, "{}", f.value);
    }

    #[test]
    fn caps_are_hard_errors() {
        let g = cycle(30);
        let err = frustration_edge(&g, &Signature::all_minus(&g), &VertexSet::full(30), 1.0, 22).unwrap_err();
        assert!(err.is_cap_exceeded());
    }
}
