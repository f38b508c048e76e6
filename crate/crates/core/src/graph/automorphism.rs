//! Vertex transitivity by colour refinement plus backtracking.

use std::collections::{BTreeMap, VecDeque};

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_VT_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transitivity {
    pub transitive: bool,
    /// When transitive, `witnesses[u]` is an automorphism sending 0 to u.
    pub witnesses: Option<Vec<Vec<usize>>>,
}

pub fn is_vertex_transitive(g: &Graph, cap: usize) -> Result<Transitivity> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertex-transitivity search",
            size: n,
            cap,
        });
    }
    let colors = refine(g);
    let no = Transitivity {
        transitive: false,
        witnesses: None,
    };
    if colors.iter().any(|&c| c != colors[0]) {
        return Ok(no);
    }
    let order = bfs_order(g);
    let mut witnesses = Vec::with_capacity(n);
    for u in 0..n {
        match extend(g, &order, u) {
            Some(phi) => {
                debug_assert!(is_automorphism(g, &phi));
                witnesses.push(phi);
            }
            None => return Ok(no),
        }
    }
    Ok(Transitivity {
        transitive: true,
        witnesses: Some(witnesses),
    })
}

pub fn is_automorphism(g: &Graph, phi: &[usize]) -> bool {
    let n = g.n();
    if phi.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in phi {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    (0..n).all(|u| (0..n).all(|v| g.has_edge(u, v) == g.has_edge(phi[u], phi[v])))
}

/// Stable colouring by (loop, degree, multiset of neighbour colours).
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let mut keys: BTreeMap<(usize, bool, Vec<usize>), usize> = BTreeMap::new();
        let sigs: Vec<_> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], g.has_loop(v), nb)
            })
            .collect();
        for s in &sigs {
            let next = keys.len();
            keys.entry(s.clone()).or_insert(next);
        }
        let fresh: Vec<usize> = sigs.iter().map(|s| keys[s]).collect();
        if keys.len() == classes {
            return fresh;
        }
        classes = keys.len();
        colors = fresh;
    }
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
    }
    order
}

fn extend(g: &Graph, order: &[usize], target: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if order[0] != 0 {
        return None;
    }
    phi[0] = target;
    used[target] = true;
    if g.has_loop(0) != g.has_loop(target) {
        return None;
    }
    if backtrack(g, order, 1, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

fn backtrack(g: &Graph, order: &[usize], k: usize, phi: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let w = order[k];
    for c in 0..g.n() {
        if used[c] || g.degree(c) != g.degree(w) || g.has_loop(c) != g.has_loop(w) {
            continue;
        }
        let consistent = order[..k].iter().all(|&x| g.has_edge(w, x) == g.has_edge(c, phi[x]));
        if !consistent {
            continue;
        }
        phi[w] = c;
        used[c] = true;
        if backtrack(g, order, k + 1, phi, used) {
            return true;
        }
        used[c] = false;
        phi[w] = usize::MAX;
    }
    false
}
