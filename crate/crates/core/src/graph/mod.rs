//! Undirected finite graphs with self-loops.
//!
//! A loop at v is stored as v ∈ adj(v) and counts once in the degree.

pub mod automorphism;
pub mod families;

use std::collections::VecDeque;

use crate::bits::VertexSet;
use crate::error::{Error, Result};

pub use automorphism::{is_vertex_transitive, Transitivity, DEFAULT_VT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Edge,
    Out,
    In,
    Sym,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Unordered edges {x, y} with x ∈ V1, y ∉ V1, reported as (x, y).
    Edges(Vec<(usize, usize)>),
    Vertices(VertexSet),
}

impl Boundary {
    pub fn size(&self) -> usize {
        match self {
            Boundary::Edges(e) => e.len(),
            Boundary::Vertices(v) => v.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite {
        left: VertexSet,
        right: VertexSet,
    },
    /// A closed walk of odd length; consecutive entries are adjacent and the
    /// last vertex is adjacent to the first.
    OddWalk(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

impl Graph {
    /// Edges are deduplicated; `(v, v)` is a self-loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) outside 0..{n}")));
            }
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    fn from_adjacency_unchecked(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let masks = (n <= 64).then(|| adj.iter().map(|a| a.iter().fold(0u64, |m, &v| m | (1 << v))).collect());
        Graph { n, adj, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.masks {
            Some(m) => m[u] & (1 << v) != 0,
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    /// Neighbour bitmask; panics when n > 64.
    #[inline]
    pub fn nbr_mask(&self, v: usize) -> u64 {
        self.masks.as_ref().expect("bitmask view needs n <= 64")[v]
    }

    pub fn has_masks(&self) -> bool {
        self.masks.is_some()
    }

    /// Canonical edge list: pairs (u, v) with u ≤ v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Position of the edge {u, v} in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges().binary_search(&(a, b)).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn vol(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree(v)).sum()
    }

    pub fn boundary(&self, v1: &VertexSet, kind: BoundaryKind) -> Boundary {
        match kind {
            BoundaryKind::Edge => {
                let mut out = Vec::new();
                for x in v1.iter() {
                    for &y in &self.adj[x] {
                        if !v1.contains(y) {
                            out.push((x, y));
                        }
                    }
                }
                Boundary::Edges(out)
            }
            BoundaryKind::Out => Boundary::Vertices(self.outer_boundary(v1)),
            BoundaryKind::In => Boundary::Vertices(self.inner_boundary(v1)),
            BoundaryKind::Sym => Boundary::Vertices(self.outer_boundary(v1).union(&self.inner_boundary(v1))),
        }
    }

    pub fn outer_boundary(&self, v1: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for x in v1.iter() {
            for &y in &self.adj[x] {
                if !v1.contains(y) {
                    out.insert(y);
                }
            }
        }
        out
    }

    pub fn inner_boundary(&self, v1: &VertexSet) -> VertexSet {
        VertexSet::from_indices(
            self.n,
            v1.iter().filter(|&x| self.adj[x].iter().any(|&y| !v1.contains(y))),
        )
    }

    /// V1° = V1 ∖ ∂_in(V1).
    pub fn interior(&self, v1: &VertexSet) -> VertexSet {
        v1.difference(&self.inner_boundary(v1))
    }

    /// I(L): vertices of L with a neighbour in L (a loop counts).
    pub fn inner_neighbor_count(&self, l: &VertexSet) -> usize {
        l.iter().filter(|&x| self.adj[x].iter().any(|&y| l.contains(y))).count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n
    }

    pub fn component_of(&self, root: usize) -> VertexSet {
        let mut seen = VertexSet::empty(self.n);
        seen.insert(root);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen.contains(v) {
                    seen.insert(v);
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut covered = VertexSet::empty(self.n);
        let mut out = Vec::new();
        for v in 0..self.n {
            if !covered.contains(v) {
                let c = self.component_of(v);
                covered = covered.union(&c);
                out.push(c);
            }
        }
        out
    }

    /// BFS 2-colouring per component.
    pub fn is_bipartite(&self) -> Bipartiteness {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        let mut parent: Vec<usize> = (0..self.n).collect();
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are coloured");
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(1 - cu);
                            parent[v] = u;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Bipartiteness::OddWalk(odd_walk(&parent, root, u, v));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let left = VertexSet::from_indices(self.n, (0..self.n).filter(|&v| color[v] == Some(0)));
        let right = left.complement();
        Bipartiteness::Bipartite { left, right }
    }
}

/// root → … → u, then v → … → root; the edge u–v closes the walk.
fn odd_walk(parent: &[usize], root: usize, u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while x != root {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let mut walk: Vec<usize> = path_to_root(u).into_iter().rev().collect();
    if u != v {
        let back = path_to_root(v);
        walk.extend(back.into_iter().take_while(|&x| x != root));
    }
    walk
}

/// Positive vertex weights π.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexMeasure {
    weights: Vec<f64>,
}

impl VertexMeasure {
    pub fn counting(n: usize) -> Self {
        VertexMeasure { weights: vec![1.0; n] }
    }

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidMeasure(format!("pi({i}) = {w} is not positive")));
        }
        Ok(VertexMeasure { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_counting(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// Integer weights, when every weight is a small whole number.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.weights
            .iter()
            .map(|&w| (w.fract() == 0.0 && w <= (1u64 << 40) as f64).then_some(w as i64))
            .collect()
    }

    pub fn measure(&self, set: &VertexSet) -> f64 {
        set.iter().map(|v| self.weights[v]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn set(n: usize, items: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, items.iter().copied())
    }

    #[test]
    fn boundaries_on_cycles() {
        let c5 = cycle(5);
        let out = c5.boundary(&set(5, &[0, 1]), BoundaryKind::Out);
        assert_eq!(out, Boundary::Vertices(set(5, &[2, 4])));
        assert_eq!(c5.boundary(&VertexSet::full(5), BoundaryKind::Out).size(), 0);
        let c6 = cycle(6);
        match c6.boundary(&set(6, &[0, 1, 2]), BoundaryKind::Edge) {
            Boundary::Edges(mut e) => {
                e.iter_mut().for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
                e.sort();
                assert_eq!(e, vec![(0, 5), (2, 3)]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn loops_are_not_boundary_edges() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.boundary(&set(2, &[0]), BoundaryKind::Edge).size(), 1);
        assert_eq!(g.inner_neighbor_count(&set(2, &[0])), 1);
    }

    #[test]
    fn inner_neighbor_counts() {
        let c5 = cycle(5);
        assert_eq!(c5.inner_neighbor_count(&set(5, &[0, 2])), 0);
        assert_eq!(c5.inner_neighbor_count(&set(5, &[0, 1])), 2);
    }

    #[test]
    fn bipartiteness_and_witnesses() {
        match cycle(4).is_bipartite() {
            Bipartiteness::Bipartite { left, right } => {
                assert_eq!(left.to_vec(), vec![0, 2]);
                assert_eq!(right.to_vec(), vec![1, 3]);
            }
            _ => panic!("C4 is bipartite"),
        }
        for g in [cycle(5), cycle(7), Graph::from_edges(1, &[(0, 0)]).unwrap(), petersen()] {
            match g.is_bipartite() {
                Bipartiteness::OddWalk(w) => {
                    assert_eq!(w.len() % 2, 1, "{w:?}");
                    for i in 0..w.len() {
                        assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
                    }
                }
                _ => panic!("expected an odd walk"),
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::from_edges(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn symmetric_boundary_is_complement_invariant() {
        let g = petersen();
        for mask in 0u64..(1 << 10) {
            let a = VertexSet::from_mask(10, mask);
            assert_eq!(
                g.boundary(&a, BoundaryKind::Sym),
                g.boundary(&a.complement(), BoundaryKind::Sym)
            );
        }
    }

    #[test]
    fn measures_validate() {
        assert!(VertexMeasure::new(vec![1.0, 0.0]).is_err());
        assert!(VertexMeasure::new(vec![1.0, f64::NAN]).is_err());
        let m = VertexMeasure::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(m.as_integers(), Some(vec![1, 2]));
        assert!(!m.is_counting());
        assert_eq!(VertexMeasure::new(vec![0.5]).unwrap().as_integers(), None);
    }
}
