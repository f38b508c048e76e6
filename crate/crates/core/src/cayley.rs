//! Cayley and Cayley sum graphs with their algebraic criteria.

use serde::Serialize;

use crate::bits::GroupSubset;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::FiniteGroup;

/// Outcome of a one-directional bipartiteness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BipartiteCertificate {
    BipartiteCertified,
    Unknown,
}

fn describe(x: &FiniteGroup, s: &GroupSubset) -> String {
    let labels: Vec<&str> = s.iter().map(|i| x.label(i)).collect();
    format!("{{{}}}", labels.join(","))
}

fn require_symmetric(x: &FiniteGroup, s: &GroupSubset) -> Result<()> {
    if let Some(bad) = s.iter().find(|&a| !s.contains(x.inv(a))) {
        return Err(Error::NotSymmetric(format!(
            "{} contains {} but not its inverse {}",
            describe(x, s),
            x.label(bad),
            x.label(x.inv(bad))
        )));
    }
    Ok(())
}

fn require_normal(x: &FiniteGroup, s: &GroupSubset) -> Result<()> {
    for g in 0..x.order() {
        let c = x.conjugate_set(g, s);
        if c != *s {
            return Err(Error::NotNormal(format!(
                "conjugating {} by {} gives {}",
                describe(x, s),
                x.label(g),
                describe(x, &c)
            )));
        }
    }
    Ok(())
}

fn check_universe(x: &FiniteGroup, s: &GroupSubset) -> Result<()> {
    if s.universe() != x.order() {
        return Err(Error::InvalidGraph(format!(
            "subset over {} elements used with a group of order {}",
            s.universe(),
            x.order()
        )));
    }
    Ok(())
}

/// x ~ y iff xy⁻¹ ∈ S.
pub fn build_cayley(x: &FiniteGroup, s: &GroupSubset) -> Result<Graph> {
    check_universe(x, s)?;
    require_symmetric(x, s)?;
    let n = x.order();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a..n {
            if s.contains(x.mul(a, x.inv(b))) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// x ~ y iff xy ∈ S.
pub fn build_cayley_sum(x: &FiniteGroup, s: &GroupSubset) -> Result<Graph> {
    check_universe(x, s)?;
    require_normal(x, s)?;
    let n = x.order();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a..n {
            if s.contains(x.mul(a, b)) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Bipartite iff some index-2 subgroup misses S.
pub fn cayley_bipartite_algebraic(x: &FiniteGroup, s: &GroupSubset) -> Result<bool> {
    check_universe(x, s)?;
    require_symmetric(x, s)?;
    Ok(x.index2_subgroups().iter().any(|h| h.is_disjoint(s)))
}

/// ⟨S⟩ = X and [X : ⟨S⁻¹S⟩] ≤ 2.
pub fn cayley_sum_connected_algebraic(x: &FiniteGroup, s: &GroupSubset) -> Result<bool> {
    check_universe(x, s)?;
    require_normal(x, s)?;
    if x.generated_subgroup(s).len() != x.order() {
        return Ok(false);
    }
    let h = x.generated_subgroup(&x.inverse_product_set(s));
    Ok(2 * h.len() >= x.order())
}

pub fn cayley_sum_bipartite_sufficient(x: &FiniteGroup, s: &GroupSubset) -> Result<bool> {
    check_universe(x, s)?;
    require_normal(x, s)?;
    Ok(x.index2_subgroups().iter().any(|h| h.is_disjoint(s)))
}

pub fn cayley_sum_bipartite_certificate(x: &FiniteGroup, s: &GroupSubset) -> Result<BipartiteCertificate> {
    Ok(if cayley_sum_bipartite_sufficient(x, s)? {
        BipartiteCertificate::BipartiteCertified
    } else {
        BipartiteCertificate::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::cycle;

    #[test]
    fn example_cycle_and_path() {
        let z5 = FiniteGroup::cyclic(5);
        let s = z5.subset([1, 4]);
        assert_eq!(build_cayley(&z5, &s).unwrap(), cycle(5));
        let sum = build_cayley_sum(&z5, &s).unwrap();
        assert_eq!(sum.edges(), vec![(0, 1), (0, 4), (1, 3), (2, 2), (2, 4), (3, 3)]);
        assert_eq!(sum.regular_degree(), Some(2));
        assert!(sum.is_connected());
        assert!(cayley_sum_connected_algebraic(&z5, &s).unwrap());
    }

    #[test]
    fn identity_in_s_gives_loops_everywhere() {
        let z4 = FiniteGroup::cyclic(4);
        let g = build_cayley(&z4, &z4.subset([0, 1, 3])).unwrap();
        assert_eq!(g.loop_count(), 4);
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn precondition_errors() {
        let z5 = FiniteGroup::cyclic(5);
        assert!(matches!(
            build_cayley(&z5, &z5.subset([1])),
            Err(Error::NotSymmetric(_))
        ));
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.find_label("213").unwrap();
        assert!(matches!(
            build_cayley_sum(&s3, &s3.subset([t])),
            Err(Error::NotNormal(_))
        ));
        let empty = build_cayley_sum(&z5, &z5.subset([])).unwrap();
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn algebraic_criteria() {
        let z4 = FiniteGroup::cyclic(4);
        assert!(cayley_bipartite_algebraic(&z4, &z4.subset([1, 3])).unwrap());
        let z5 = FiniteGroup::cyclic(5);
        assert!(!cayley_bipartite_algebraic(&z5, &z5.subset([1, 4])).unwrap());
        let z6 = FiniteGroup::cyclic(6);
        assert!(!cayley_bipartite_algebraic(&z6, &z6.subset([2, 4])).unwrap());
        assert!(!cayley_sum_connected_algebraic(&z6, &z6.subset([3])).unwrap());
        let z2 = FiniteGroup::cyclic(2);
        assert!(cayley_sum_connected_algebraic(&z2, &z2.subset([1])).unwrap());
        assert!(cayley_sum_bipartite_sufficient(&z4, &z4.subset([1, 3])).unwrap());
        assert!(!cayley_sum_bipartite_sufficient(&z4, &z4.subset([0, 2])).unwrap());
        assert!(!cayley_sum_bipartite_sufficient(&z5, &z5.subset([1, 4])).unwrap());
    }
}
