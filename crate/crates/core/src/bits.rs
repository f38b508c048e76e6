//! Index sets over `0..len` and the `u64` mask helpers used by the exhaustive
//! enumerations.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of `0..len`, stored as a bitset.
///
/// Houses group subsets (S, S⁻¹S, gSg⁻¹) as well as vertex sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    bits: FixedBitSet,
}

pub type GroupSubset = IndexSet;
pub type VertexSet = IndexSet;

impl IndexSet {
    pub fn empty(len: usize) -> Self {
        IndexSet {
            bits: FixedBitSet::with_capacity(len),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(len);
        bits.insert_range(..);
        IndexSet { bits }
    }

    /// Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask conversion needs len <= 64");
        Self::from_indices(len, MaskIter(mask))
    }

    /// `None` when the universe is larger than 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.universe() > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe(), "index {i} outside 0..{}", self.universe());
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        IndexSet { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        IndexSet { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        IndexSet { bits }
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        IndexSet { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    /// Deserializes a bare index list; the universe is sized to fit it and
    /// callers resize against the owning graph or group.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        let len = v.iter().max().map_or(0, |m| m + 1);
        Ok(IndexSet::from_indices(len, v))
    }
}

/// Iterates the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub struct MaskIter(pub u64);

impl Iterator for MaskIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Lexicographic order of the sorted element lists of two masks.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = a ^ b;
    let i = d.trailing_zeros();
    let above = if i >= 63 { 0 } else { !0u64 << (i + 1) };
    if a & (1 << i) != 0 {
        // a has i, b has something larger at this position or has ended.
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Witness order for vertex sets: cardinality first, then lexicographic.
pub fn witness_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| lex_cmp(a, b))
}

/// Enumerates all submasks of `mask`, including 0 and `mask` itself.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(cur)
    })
}

/// Packs the bits of `value` selected by `select` into the low bits, in order.
#[inline]
pub fn compress(value: u64, select: u64) -> u64 {
    let mut out = 0u64;
    for (k, i) in MaskIter(select).enumerate() {
        if value & (1 << i) != 0 {
            out |= 1 << k;
        }
    }
    out
}
