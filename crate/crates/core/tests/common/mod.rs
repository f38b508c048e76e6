//! Test-side oracles written straight from the definitions, independent of
//! the library's bitmask tables.

#![allow(dead_code)]

use std::f64::consts::PI;

use cheegerkit::cayley::{build_cayley, build_cayley_sum};
use cheegerkit::connection::CyclicConnection;
use cheegerkit::graph::{families, Graph};
use cheegerkit::group::FiniteGroup;
use cheegerkit::signed::Signature;
use cheegerkit::value::Rational;
use cheegerkit::verify::{GraphClass, Instance};
use num_complex::Complex64;

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn inside(mask: u64, v: usize) -> bool {
    mask >> v & 1 == 1
}

pub fn vol(g: &Graph, mask: u64) -> i64 {
    members(mask, g.n()).iter().map(|&v| g.degree(v) as i64).sum()
}

/// Non-loop edges with exactly one endpoint in the set.
pub fn edge_boundary(g: &Graph, mask: u64) -> i64 {
    let mut c = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) && inside(mask, u) != inside(mask, v) {
                c += 1;
            }
        }
    }
    c
}

pub fn outer_boundary(g: &Graph, mask: u64) -> u64 {
    let mut out = 0;
    for x in 0..g.n() {
        if !inside(mask, x) && (0..g.n()).any(|y| inside(mask, y) && g.has_edge(x, y)) {
            out |= 1 << x;
        }
    }
    out
}

pub fn inner_boundary(g: &Graph, mask: u64) -> u64 {
    let mut out = 0;
    for x in 0..g.n() {
        if inside(mask, x) && (0..g.n()).any(|y| !inside(mask, y) && g.has_edge(x, y)) {
            out |= 1 << x;
        }
    }
    out
}

/// Vertices of the set with a neighbour in the set (a loop counts).
pub fn i_count(g: &Graph, mask: u64) -> i64 {
    members(mask, g.n())
        .iter()
        .filter(|&&x| (0..g.n()).any(|y| inside(mask, y) && g.has_edge(x, y)))
        .count() as i64
}

/// Ordered adjacent pairs inside the set; a loop contributes once.
pub fn e_inside(g: &Graph, mask: u64) -> i64 {
    let m = members(mask, g.n());
    let mut c = 0;
    for &x in &m {
        for &y in &m {
            if g.has_edge(x, y) {
                c += 1;
            }
        }
    }
    c
}

fn min_ratio(it: impl Iterator<Item = (i64, i64)>) -> Rational {
    it.map(|(a, b)| Rational::new(a, b))
        .min()
        .expect("nonempty admissible family")
}

pub fn h(g: &Graph) -> Rational {
    let total = vol(g, (1u64 << g.n()) - 1);
    min_ratio(
        (1..1u64 << g.n())
            .filter(|&m| vol(g, m) > 0 && 2 * vol(g, m) <= total)
            .map(|m| (edge_boundary(g, m), vol(g, m))),
    )
}

pub fn h_out(g: &Graph) -> Rational {
    let n = g.n();
    min_ratio(
        (1..1u64 << n)
            .filter(|&m| 2 * m.count_ones() as usize <= n)
            .map(|m| (outer_boundary(g, m).count_ones() as i64, m.count_ones() as i64)),
    )
}

/// All (L, R) with L ∩ R = ∅ and L ∪ R ≠ ∅, by base-3 counting.
pub fn disjoint_pairs(n: usize) -> impl Iterator<Item = (u64, u64)> {
    let total = 3u64.pow(n as u32);
    (1..total).map(move |mut code| {
        let (mut l, mut r) = (0u64, 0u64);
        for i in 0..n {
            match code % 3 {
                1 => l |= 1 << i,
                2 => r |= 1 << i,
                _ => {}
            }
            code /= 3;
        }
        (l, r)
    })
}

pub fn beta(g: &Graph) -> Rational {
    let d = g.regular_degree().expect("regular") as i64;
    min_ratio(disjoint_pairs(g.n()).map(|(l, r)| {
        let u = l | r;
        (
            e_inside(g, l) + e_inside(g, r) + edge_boundary(g, u),
            d * u.count_ones() as i64,
        )
    }))
}

pub fn beta_out(g: &Graph) -> Rational {
    min_ratio(disjoint_pairs(g.n()).map(|(l, r)| {
        let u = l | r;
        (
            i_count(g, l) + i_count(g, r) + outer_boundary(g, u).count_ones() as i64,
            u.count_ones() as i64,
        )
    }))
}

fn tau_of(assign: u64, x: usize) -> i64 {
    if assign >> x & 1 == 1 {
        -1
    } else {
        1
    }
}

/// ι^σ(V1): half the sum of |τ(x) − σ_xy τ(y)| over ordered adjacent pairs in V1.
pub fn iota(g: &Graph, sigma: &Signature, mask: u64) -> i64 {
    let m = members(mask, g.n());
    submasks_of(mask)
        .map(|t| {
            let mut s = 0;
            for &x in &m {
                for &y in &m {
                    if g.has_edge(x, y) {
                        s += (tau_of(t, x) - sigma.sign(g, x, y) as i64 * tau_of(t, y)).abs();
                    }
                }
            }
            s / 2
        })
        .min()
        .unwrap_or(0)
}

/// ι_∞^{σ,1}(V1): half the sum over x of the sup over in-set neighbours.
pub fn iota_inf(g: &Graph, sigma: &Signature, mask: u64) -> i64 {
    let m = members(mask, g.n());
    submasks_of(mask)
        .map(|t| {
            let mut s = 0;
            for &x in &m {
                let sup = m
                    .iter()
                    .filter(|&&y| g.has_edge(x, y))
                    .map(|&y| (tau_of(t, x) - sigma.sign(g, x, y) as i64 * tau_of(t, y)).abs())
                    .max()
                    .unwrap_or(0);
                s += sup;
            }
            s / 2
        })
        .min()
        .unwrap_or(0)
}

fn submasks_of(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

pub fn h_sigma(g: &Graph, sigma: &Signature) -> Rational {
    min_ratio(
        (1..1u64 << g.n())
            .filter(|&m| vol(g, m) > 0)
            .map(|m| (iota(g, sigma, m) + edge_boundary(g, m), vol(g, m))),
    )
}

pub fn h_out_sigma(g: &Graph, sigma: &Signature) -> Rational {
    min_ratio((1..1u64 << g.n()).map(|m| {
        (
            2 * iota_inf(g, sigma, m) + outer_boundary(g, m).count_ones() as i64,
            m.count_ones() as i64,
        )
    }))
}

pub fn h_sym_sigma(g: &Graph, sigma: &Signature) -> Rational {
    min_ratio((1..1u64 << g.n()).map(|m| {
        let interior = m & !inner_boundary(g, m);
        let sym = outer_boundary(g, m) | inner_boundary(g, m);
        (
            2 * iota_inf(g, sigma, interior) + sym.count_ones() as i64,
            m.count_ones() as i64,
        )
    }))
}

/// Ratio for one fixed vertex set, used to re-evaluate a reported witness.
pub fn h_out_sigma_at(g: &Graph, sigma: &Signature, mask: u64) -> Rational {
    Rational::new(
        2 * iota_inf(g, sigma, mask) + outer_boundary(g, mask).count_ones() as i64,
        mask.count_ones() as i64,
    )
}

pub fn h_sym_sigma_at(g: &Graph, sigma: &Signature, mask: u64) -> Rational {
    let interior = mask & !inner_boundary(g, mask);
    let sym = outer_boundary(g, mask) | inner_boundary(g, mask);
    Rational::new(
        2 * iota_inf(g, sigma, interior) + sym.count_ones() as i64,
        mask.count_ones() as i64,
    )
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// ∫₀¹ f(t) dt for f constant between consecutive breakpoints: one midpoint per piece.
pub fn piecewise_integral(breaks: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&b| b > 0.0 && b < 1.0).collect();
    pts.push(0.0);
    pts.push(1.0);
    pts.sort_by(f64::total_cmp);
    pts.windows(2).map(|w| (w[1] - w[0]) * f(0.5 * (w[0] + w[1]))).sum()
}

fn y_scalar(s: f64, z: f64) -> f64 {
    if z.abs() < s {
        0.0
    } else if z < 0.0 {
        -1.0
    } else {
        1.0
    }
}

pub fn scalar_oracle(z1: f64, z2: f64) -> f64 {
    piecewise_integral(&[z1 * z1, z2 * z2], |t| {
        (y_scalar(t.sqrt(), z1) - y_scalar(t.sqrt(), z2)).abs()
    })
}

fn norm(z: &[f64]) -> f64 {
    z.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn y_vector(s: f64, z: &[f64]) -> Vec<f64> {
    let r = norm(z);
    if r < s {
        return vec![0.0; z.len()];
    }
    if r == 0.0 {
        let mut e = vec![0.0; z.len()];
        e[0] = 1.0;
        return e;
    }
    z.iter().map(|x| x / r).collect()
}

pub fn vector_oracle(z1: &[f64], z2: &[f64]) -> f64 {
    piecewise_integral(&[norm(z1).powi(2), norm(z2).powi(2)], |t| {
        let (a, b) = (y_vector(t.sqrt(), z1), y_vector(t.sqrt(), z2));
        norm(&a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>())
    })
}

fn y_cyclic(s: f64, theta: f64, k: usize, z: Complex64) -> Complex64 {
    if z.norm() < s || z.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let width = 2.0 * PI / k as f64;
    let j = (((z.arg() - theta).rem_euclid(2.0 * PI)) / width).floor() as usize;
    Complex64::from_polar(1.0, 2.0 * PI * j.min(k - 1) as f64 / k as f64)
}

/// θ-average by the midpoint rule on `res` nodes, exact in t.
pub fn cyclic_oracle(z1: Complex64, z2: Complex64, k: usize, res: usize) -> f64 {
    let h = 2.0 * PI / res as f64;
    (0..res)
        .map(|i| {
            let theta = (i as f64 + 0.5) * h;
            piecewise_integral(&[z1.norm_sqr(), z2.norm_sqr()], |t| {
                (y_cyclic(t.sqrt(), theta, k, z1) - y_cyclic(t.sqrt(), theta, k, z2)).norm()
            })
        })
        .sum::<f64>()
        / res as f64
}

pub fn cayley(x: &FiniteGroup, s: &[usize], name: &str) -> Instance {
    let g = build_cayley(x, &x.subset(s.iter().copied())).expect("symmetric set");
    Instance::new(name, g).with_class(GraphClass::Cayley, s.contains(&x.identity()))
}

pub fn cayley_sum(x: &FiniteGroup, s: &[usize], name: &str) -> Instance {
    let g = build_cayley_sum(x, &x.subset(s.iter().copied())).expect("normal set");
    Instance::new(name, g).with_class(GraphClass::CayleySum, false)
}

pub fn d4_reflections() -> Instance {
    let x = FiniteGroup::dihedral(4);
    let s: Vec<usize> = ["s", "sr1", "sr2", "sr3"]
        .iter()
        .map(|l| x.find_label(l).unwrap())
        .collect();
    cayley(&x, &s, "C(D_4, reflections)")
}

/// The fixed battery of signed instances.
pub fn battery() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in (3..=13).step_by(2) {
        out.push(Instance::new(format!("C_{n} σ≡−1"), families::cycle(n)));
    }
    out.push(Instance::new("Petersen", families::petersen()));
    for n in (3..=13).step_by(2) {
        out.push(cayley(&FiniteGroup::cyclic(n), &[1, n - 1], &format!("C(Z_{n},±1)")));
    }
    out.push(d4_reflections());
    out.push(cayley_sum(&FiniteGroup::cyclic(5), &[1, 4], "C_Σ(Z_5,{1,4})"));
    for seed in 0..20 {
        let g = families::cycle(8);
        let s = Signature::random(&g, seed);
        out.push(Instance::new(format!("C_8 random σ #{seed}"), g).with_signature(s, format!("random:{seed}")));
    }
    for seed in 0..20 {
        let g = families::hypercube(3);
        let s = Signature::random(&g, 1000 + seed);
        out.push(
            Instance::new(format!("Q_3 random σ #{seed}"), g).with_signature(s, format!("random:{}", 1000 + seed)),
        );
    }
    out
}

/// Cyclic ι_∞ with τ ranging over all of Z_k^{V1}; σ_xy = ξ^{e(x,y)}.
pub fn cyclic_iota_inf(g: &Graph, cy: &CyclicConnection, mask: u64) -> f64 {
    let m = members(mask, g.n());
    let k = cy.order();
    let chord =
        |d: usize| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * PI * d as f64 / k as f64)).norm();
    let total = k.pow(m.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut tau = vec![0usize; g.n()];
            for &x in &m {
                tau[x] = code % k;
                code /= k;
            }
            m.iter()
                .map(|&x| {
                    m.iter()
                        .filter(|&&y| g.has_edge(x, y))
                        .map(|&y| chord((cy.exponent(g, x, y) + tau[y] + k - tau[x]) % k))
                        .fold(0.0, f64::max)
                })
                .sum::<f64>()
                / 2.0
        })
        .fold(f64::INFINITY, f64::min)
}

/// (η*_out, η*_S) for a cyclic connection with counting measure.
pub fn cyclic_eta(g: &Graph, cy: &CyclicConnection) -> (f64, f64) {
    let (mut out, mut sym) = (f64::INFINITY, f64::INFINITY);
    for m in 1..1u64 << g.n() {
        let size = m.count_ones() as f64;
        let ob = outer_boundary(g, m);
        let ib = inner_boundary(g, m);
        out = out.min((2.0 * cyclic_iota_inf(g, cy, m) + ob.count_ones() as f64) / size);
        sym = sym.min((2.0 * cyclic_iota_inf(g, cy, m & !ib) + (ob | ib).count_ones() as f64) / size);
    }
    (out, sym)
}

pub fn random_graph(seed: u64, n: usize, loops: bool) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p: f64 = rng.gen_range(0.2..0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u..n {
            if rng.gen_bool(if u == v {
                if loops {
                    0.15
                } else {
                    0.0
                }
            } else {
                p
            }) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}
