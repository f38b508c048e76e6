//! Named graph families.

use super::Graph;

/// C(Z_n, {±1}): a loop for n = 1, a single edge for n = 2.
pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle edges are in range")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are in range")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("complete edges are in range")
}

/// Outer 5-cycle 0..5, spokes i–(i+5), inner pentagram on 5..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are in range")
}

/// The k-cube on bit strings of length k.
pub fn hypercube(k: usize) -> Graph {
    let n = 1usize << k;
    let mut edges = Vec::new();
    for u in 0..n {
        for b in 0..k {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("hypercube edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_degrees() {
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(cycle(5).regular_degree(), Some(2));
        assert_eq!(cycle(1).regular_degree(), Some(1));
        assert_eq!(cycle(2).edge_count(), 1);
        assert_eq!(path(3).regular_degree(), None);
        assert_eq!(complete(4).regular_degree(), Some(3));
        assert_eq!(petersen().regular_degree(), Some(3));
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(hypercube(3).regular_degree(), Some(3));
        assert_eq!(hypercube(3).edge_count(), 12);
    }
}
