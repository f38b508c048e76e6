//! Finite groups stored as full multiplication tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::GroupSubset;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 5040;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum GroupKind {
    Cyclic(usize),
    /// Symmetries of the regular n-gon, order 2n.
    Dihedral(usize),
    Symmetric(usize),
    DirectProduct(Box<FiniteGroup>, Box<FiniteGroup>),
    FromTable {
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    },
}

/// Group JSON: `{"order": n, "table": [[..]], "labels": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub fn make_group(kind: GroupKind, order_cap: usize) -> Result<FiniteGroup> {
    let check = |order: usize| {
        if order > order_cap {
            Err(Error::OrderCapExceeded { order, cap: order_cap })
        } else {
            Ok(())
        }
    };
    match kind {
        GroupKind::Cyclic(n) => {
            nonzero(n)?;
            check(n)?;
            Ok(FiniteGroup::cyclic(n))
        }
        GroupKind::Dihedral(n) => {
            nonzero(n)?;
            check(n.saturating_mul(2))?;
            Ok(FiniteGroup::dihedral(n))
        }
        GroupKind::Symmetric(n) => {
            nonzero(n)?;
            let mut order = 1usize;
            for k in 2..=n {
                order = order.saturating_mul(k);
                check(order)?;
            }
            Ok(FiniteGroup::symmetric(n))
        }
        GroupKind::DirectProduct(g, h) => {
            check(g.order().saturating_mul(h.order()))?;
            Ok(FiniteGroup::direct_product(&g, &h))
        }
        GroupKind::FromTable { table, labels } => {
            check(table.len())?;
            FiniteGroup::from_table(table, labels)
        }
    }
}

fn nonzero(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidGroupTable {
            reason: "group order must be at least 1".into(),
            triple: None,
        })
    } else {
        Ok(())
    }
}

impl FiniteGroup {
    fn from_trusted(order: usize, table: Vec<u32>, labels: Vec<String>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|i| table[e * order + i] as usize == i))
            .expect("constructor produced a table without identity");
        let mut inverses = vec![0; order];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&j| table[i * order + j] as usize == identity)
                .expect("constructor produced a table without inverses");
        }
        FiniteGroup {
            order,
            table,
            identity,
            inverses,
            labels,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(((i + j) % n) as u32);
            }
        }
        Self::from_trusted(n, table, (0..n).map(|i| i.to_string()).collect())
    }

    /// Index i < n is r^i, index n+i is s·r^i.
    pub fn dihedral(n: usize) -> Self {
        let order = 2 * n;
        let decode = |x: usize| (x >= n, x % n);
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (xs, a) = decode(x);
            for y in 0..order {
                let (ys, b) = decode(y);
                // r^a r^b = r^{a+b}; r^a s r^b = s r^{b-a}; s r^a r^b = s r^{a+b}; s r^a s r^b = r^{b-a}
                let (s, e) = match (xs, ys) {
                    (false, false) => (false, (a + b) % n),
                    (false, true) => (true, (b + n - a) % n),
                    (true, false) => (true, (a + b) % n),
                    (true, true) => (false, (b + n - a) % n),
                };
                table.push((if s { n + e } else { e }) as u32);
            }
        }
        let labels = (0..order)
            .map(|x| match decode(x) {
                (false, 0) => "e".to_string(),
                (false, i) => format!("r{i}"),
                (true, 0) => "s".to_string(),
                (true, i) => format!("sr{i}"),
            })
            .collect();
        Self::from_trusted(order, table, labels)
    }

    /// Permutations of {1..n} in lexicographic one-line order; the identity is
    /// index 0. Product is composition, (στ)(i) = σ(τ(i)).
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<u8>> = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, q)| (q.as_slice(), i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        let mut buf = vec![0u8; n];
        for s in &perms {
            for t in &perms {
                for i in 0..n {
                    buf[i] = s[t[i] as usize];
                }
                table.push(index[buf.as_slice()] as u32);
            }
        }
        let sep = if n > 9 { "," } else { "" };
        let labels = perms
            .iter()
            .map(|q| q.iter().map(|&v| (v + 1).to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        Self::from_trusted(order, table, labels)
    }

    /// Index a·|H| + b for the pair (a, b).
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.order, h.order);
        let order = m * k;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = g.mul(x / k, y / k);
                let b = h.mul(x % k, y % k);
                table.push((a * k + b) as u32);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", g.labels[x / k], h.labels[x % k]))
            .collect();
        Self::from_trusted(order, table, labels)
    }

    /// Validates shape, range, the Latin property, identity, inverses and
    /// associativity.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        let bad = |reason: String| Error::InvalidGroupTable { reason, triple: None };
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(bad("table too large".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(bad(format!("entry ({i},{j}) = {v} is out of range")));
                }
                table.push(v as u32);
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(bad(format!("row {i} repeats element {v}")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[j * n + i] as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(bad(format!("column {i} repeats element {v}")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e * n + i] as usize == i && table[i * n + e] as usize == i))
            .ok_or_else(|| bad("no two-sided identity".into()))?;
        let mut inverses = vec![0; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] as usize == identity)
                .expect("latin row contains the identity");
            if table[j * n + i] as usize != identity {
                return Err(bad(format!("element {i} has no two-sided inverse")));
            }
            inverses[i] = j;
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(bad(format!("{} labels for {n} elements", l.len())));
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let g = FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
            labels,
        };
        if let Some((a, b, c)) = g.associativity_failure() {
            return Err(Error::InvalidGroupTable {
                reason: format!("({a}·{b})·{c} != {a}·({b}·{c})"),
                triple: Some((a, b, c)),
            });
        }
        Ok(g)
    }

    pub fn from_json(j: GroupJson) -> Result<Self> {
        if j.order != j.table.len() {
            return Err(Error::InvalidGroupTable {
                reason: format!("order {} but {} rows", j.order, j.table.len()),
                triple: None,
            });
        }
        Self::from_table(j.table, j.labels)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            table: (0..self.order)
                .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
                .collect(),
            labels: Some(self.labels.clone()),
        }
    }

    /// Light's test restricted to a generating set: if (xb)y = x(by) for all
    /// x, y and every b in a set whose products reach every element, the
    /// table is associative.
    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = vec![false; n];
        covered[self.identity] = true;
        for g in 0..n {
            if covered[g] {
                continue;
            }
            gens.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| covered[x]).collect();
            while let Some(w) = stack.pop() {
                for &b in &gens {
                    let p = self.mul(w, b);
                    if !covered[p] {
                        covered[p] = true;
                        stack.push(p);
                    }
                }
            }
        }
        for &b in &gens {
            for x in 0..n {
                let xb = self.mul(x, b);
                for y in 0..n {
                    if self.mul(xb, y) != self.mul(x, self.mul(b, y)) {
                        return Some((x, b, y));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, items: I) -> GroupSubset {
        GroupSubset::from_indices(self.order, items)
    }

    pub fn is_symmetric_set(&self, s: &GroupSubset) -> bool {
        s.iter().all(|x| s.contains(self.inv(x)))
    }

    pub fn is_normal_set(&self, s: &GroupSubset) -> bool {
        (0..self.order).all(|g| {
            let gi = self.inv(g);
            s.iter().all(|x| s.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    pub fn conjugate_set(&self, g: usize, s: &GroupSubset) -> GroupSubset {
        let gi = self.inv(g);
        self.subset(s.iter().map(|x| self.mul(self.mul(g, x), gi)))
    }

    /// The smallest subgroup containing `s`, by closure under products.
    pub fn generated_subgroup(&self, s: &GroupSubset) -> GroupSubset {
        let gens = s.to_vec();
        let mut out = self.subset([self.identity]);
        let mut stack = vec![self.identity];
        while let Some(w) = stack.pop() {
            for &g in &gens {
                let p = self.mul(w, g);
                if !out.contains(p) {
                    out.insert(p);
                    stack.push(p);
                }
            }
        }
        out
    }

    /// {s⁻¹t : s, t ∈ S}.
    pub fn inverse_product_set(&self, s: &GroupSubset) -> GroupSubset {
        let mut out = GroupSubset::empty(self.order);
        for a in s.iter() {
            for b in s.iter() {
                out.insert(self.mul(self.inv(a), b));
            }
        }
        out
    }

    /// Index of a subgroup, `None` if `h` is not a subgroup-sized set.
    pub fn index_of(&self, h: &GroupSubset) -> Option<usize> {
        let k = h.len();
        (k > 0 && self.order % k == 0).then(|| self.order / k)
    }

    /// Every index-2 subgroup contains all squares, so they correspond to the
    /// hyperplanes of the elementary abelian quotient X/⟨squares⟩.
    pub fn index2_subgroups(&self) -> Vec<GroupSubset> {
        let n = self.order;
        if n % 2 == 1 {
            return Vec::new();
        }
        let squares = self.subset((0..n).map(|x| self.mul(x, x)));
        let q = self.generated_subgroup(&squares);
        let mut label: Vec<Option<u32>> = vec![None; n];
        for x in q.iter() {
            label[x] = Some(0);
        }
        let mut rank = 0u32;
        for g in 0..n {
            if label[g].is_some() {
                continue;
            }
            let current: Vec<(usize, u32)> = (0..n).filter_map(|k| label[k].map(|l| (k, l))).collect();
            for (k, l) in current {
                label[self.mul(g, k)] = Some(l | (1 << rank));
            }
            rank += 1;
        }
        let label: Vec<u32> = label.into_iter().map(|l| l.expect("cosets cover X")).collect();
        let mut out: Vec<GroupSubset> = (1u32..(1 << rank))
            .map(|f| self.subset((0..n).filter(|&x| (label[x] & f).count_ones() % 2 == 0)))
            .collect();
        out.sort_by_key(|h| h.to_vec());
        out
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
