//! Exact isoperimetric and bipartiteness constants by exhaustive enumeration.
//!
//! Subset scans are over `u64` masks. Pair scans (L, R disjoint) walk every
//! U and every L ⊆ U, which is 3^n work backed by 2^n lookup tables.

use std::cmp::Ordering;
use std::ops::{Add, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, lex_cmp, submasks, MaskIter};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMeasure};
use crate::signed::Signature;
use crate::value::{Quantity, Rational};

pub const DEFAULT_SUBSET_CAP: usize = 22;
pub const DEFAULT_TRIPARTITION_CAP: usize = 14;
/// Caps above these are refused regardless of configuration.
pub const HARD_SUBSET_MAX: usize = 30;
pub const HARD_TRIPARTITION_MAX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCaps {
    pub subset_cap: usize,
    pub tripartition_cap: usize,
}

impl Default for IsoCaps {
    fn default() -> Self {
        IsoCaps {
            subset_cap: DEFAULT_SUBSET_CAP,
            tripartition_cap: DEFAULT_TRIPARTITION_CAP,
        }
    }
}

impl IsoCaps {
    fn check_subsets(&self, n: usize) -> Result<()> {
        let cap = self.subset_cap.min(HARD_SUBSET_MAX);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "subset enumeration",
                size: n,
                cap,
            });
        }
        Ok(())
    }

    fn check_pairs(&self, n: usize) -> Result<()> {
        let cap = self.tripartition_cap.min(HARD_TRIPARTITION_MAX);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "tripartition enumeration",
                size: n,
                cap,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    HeuristicUpperBound,
}

/// The optimising set, plus the split (L, R) where one applies. For signed
/// constants τ is +1 on `left` and −1 on `right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct Witness {
    pub set: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<usize>>,
    /// V1° for the symmetric constants.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior: Option<Vec<usize>>,
}

impl Witness {
    fn set(mask: u64) -> Self {
        Witness {
            set: MaskIter(mask).collect(),
            ..Default::default()
        }
    }

    fn split(mask: u64, left: u64) -> Self {
        Witness {
            set: MaskIter(mask).collect(),
            left: Some(MaskIter(left).collect()),
            right: Some(MaskIter(mask & !left).collect()),
            interior: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantResult {
    pub name: String,
    pub value: Quantity,
    pub witness: Witness,
    pub method: Method,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConstantResult {
    fn exact(name: &str, value: Quantity, witness: Witness) -> Self {
        ConstantResult {
            name: name.to_string(),
            value,
            witness,
            method: Method::Exact,
            notes: Vec::new(),
        }
    }
}

/// Weights for ratios: exact integers, or floats for non-integer π.
pub(crate) trait Scalar:
    Copy + Send + Sync + PartialOrd + Add<Output = Self> + Sub<Output = Self> + 'static
{
    fn zero() -> Self;
    fn cmp_frac(a: (Self, Self), b: (Self, Self)) -> Ordering;
    fn quantity(num: Self, den: Self) -> Quantity;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn cmp_frac(a: (i64, i64), b: (i64, i64)) -> Ordering {
        (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128))
    }
    fn quantity(num: i64, den: i64) -> Quantity {
        Quantity::Exact(Rational::new(num, den))
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn cmp_frac(a: (f64, f64), b: (f64, f64)) -> Ordering {
        (a.0 / a.1).total_cmp(&(b.0 / b.1))
    }
    fn quantity(num: f64, den: f64) -> Quantity {
        Quantity::Float(num / den)
    }
}

/// A candidate (num/den at `set`, split `left`), ordered by value, then
/// |set|, then lexicographic set, then lexicographic left part.
#[derive(Clone, Copy, Debug)]
struct Cand<W> {
    num: W,
    den: W,
    set: u64,
    left: u64,
}

impl<W: Scalar> Cand<W> {
    fn cmp(&self, o: &Self) -> Ordering {
        W::cmp_frac((self.num, self.den), (o.num, o.den))
            .then_with(|| self.set.count_ones().cmp(&o.set.count_ones()))
            .then_with(|| lex_cmp(self.set, o.set))
            .then_with(|| lex_cmp(self.left, o.left))
    }

    fn min(a: Option<Self>, b: Option<Self>) -> Option<Self> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if y.cmp(&x) == Ordering::Less { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

fn require_masks(g: &Graph) -> Result<()> {
    if !g.has_masks() {
        return Err(Error::CapExceeded {
            what: "bitmask enumeration",
            size: g.n(),
            cap: 64,
        });
    }
    Ok(())
}

fn scan_subsets<W, F>(n: usize, f: F) -> Option<Cand<W>>
where
    W: Scalar,
    F: Fn(u64) -> Option<Cand<W>> + Sync,
{
    (1u64..=full_mask(n)).into_par_iter().map(&f).reduce(|| None, Cand::min)
}

/// h = min over ∅≠V1 with vol(V1) ≤ vol(V)/2 of |∂(V1)|/vol(V1).
///
/// Sets of volume 0 (isolated vertices only) have no defined ratio and are
/// skipped.
pub fn cheeger_h(g: &Graph, caps: &IsoCaps) -> Result<ConstantResult> {
    require_masks(g)?;
    caps.check_subsets(g.n())?;
    let n = g.n();
    let total: i64 = (0..n).map(|v| g.degree(v) as i64).sum();
    let best = scan_subsets(n, |a| {
        let mut vol = 0i64;
        let mut bnd = 0i64;
        for x in MaskIter(a) {
            vol += g.degree(x) as i64;
            bnd += (g.nbr_mask(x) & !a).count_ones() as i64;
        }
        (vol > 0 && 2 * vol <= total).then_some(Cand {
            num: bnd,
            den: vol,
            set: a,
            left: 0,
        })
    })
    .ok_or(Error::NoAdmissibleSet("h"))?;
    Ok(ConstantResult::exact(
        "h",
        i64::quantity(best.num, best.den),
        Witness::set(best.set),
    ))
}

/// h_out = min over ∅≠V1 with |V1| ≤ |V|/2 of |∂_out(V1)|/|V1|.
pub fn vertex_iso_h_out(g: &Graph, caps: &IsoCaps) -> Result<ConstantResult> {
    require_masks(g)?;
    caps.check_subsets(g.n())?;
    let n = g.n();
    let best = scan_subsets(n, |a| {
        let size = a.count_ones() as i64;
        if 2 * size > n as i64 {
            return None;
        }
        let nb = MaskIter(a).fold(0u64, |m, x| m | g.nbr_mask(x));
        Some(Cand {
            num: (nb & !a).count_ones() as i64,
            den: size,
            set: a,
            left: 0,
        })
    })
    .ok_or(Error::NoAdmissibleSet("h_out"))?;
    Ok(ConstantResult::exact(
        "h_out",
        i64::quantity(best.num, best.den),
        Witness::set(best.set),
    ))
}

/// Per-subset tables shared by the pair scans.
struct Tables {
    n: usize,
    nbr: Vec<u64>,
    /// Edge-boundary size |∂(A)|.
    bnd: Vec<i64>,
    /// Union of neighbourhoods of A.
    nbr_union: Vec<u64>,
}

impl Tables {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let size = 1usize << n;
        let nbr: Vec<u64> = (0..n).map(|v| g.nbr_mask(v)).collect();
        let mut bnd = vec![0i64; size];
        let mut nbr_union = vec![0u64; size];
        for a in 1..size {
            let x = a.trailing_zeros() as usize;
            let b = a & (a - 1);
            let am = a as u64;
            let bm = b as u64;
            bnd[a] = bnd[b] + (nbr[x] & !am).count_ones() as i64 - (nbr[x] & bm & !(1 << x)).count_ones() as i64;
            nbr_union[a] = nbr_union[b] | nbr[x];
        }
        Tables { n, nbr, bnd, nbr_union }
    }

    fn out(&self, a: u64) -> u64 {
        self.nbr_union[a as usize] & !a
    }

    fn inner(&self, a: u64) -> u64 {
        MaskIter(a)
            .filter(|&x| self.nbr[x] & !a != 0)
            .fold(0, |m, x| m | (1 << x))
    }

    /// I(A): vertices of A with a neighbour in A.
    fn inner_count(&self, a: u64) -> i64 {
        MaskIter(a).filter(|&x| self.nbr[x] & a != 0).count() as i64
    }

    /// e(A, A) = Σ_{x∈A} Σ_{y∈A} a_xy.
    fn e_inside(&self, a: u64) -> i64 {
        MaskIter(a).map(|x| (self.nbr[x] & a).count_ones() as i64).sum()
    }
}

/// For every U, min over L ⊆ U of t[L] + t[U∖L], with the lexicographically
/// smallest L on ties.
fn split_min(n: usize, t: &[i64]) -> Vec<(i64, u64)> {
    (0..1u64 << n)
        .into_par_iter()
        .map(|u| {
            let mut best = (i64::MAX, 0u64);
            for l in submasks(u) {
                let v = t[l as usize] + t[(u & !l) as usize];
                if v < best.0 || (v == best.0 && lex_cmp(l, best.1) == Ordering::Less) {
                    best = (v, l);
                }
            }
            best
        })
        .collect()
}

/// Trevisan β = min over disjoint L, R with L ∪ R ≠ ∅ of
/// (e(L,L) + e(R,R) + |∂(L∪R)|) / (d|L∪R|); d-regular graphs only.
pub fn trevisan_beta(g: &Graph, caps: &IsoCaps) -> Result<ConstantResult> {
    let d = g.regular_degree().ok_or(Error::NotRegular("beta"))? as i64;
    if d == 0 {
        return Err(Error::NoAdmissibleSet("beta"));
    }
    require_masks(g)?;
    caps.check_pairs(g.n())?;
    let t = Tables::new(g);
    let e: Vec<i64> = (0..1u64 << t.n).map(|a| t.e_inside(a)).collect();
    let split = split_min(t.n, &e);
    let best = scan_subsets(t.n, |u| {
        let (v, l) = split[u as usize];
        Some(Cand {
            num: v + t.bnd[u as usize],
            den: d * u.count_ones() as i64,
            set: u,
            left: l,
        })
    })
    .expect("n >= 1");
    Ok(ConstantResult::exact(
        "beta",
        i64::quantity(best.num, best.den),
        Witness::split(best.set, best.left),
    ))
}

/// β_out = min over disjoint L, R with L ∪ R ≠ ∅ of
/// (I(L) + I(R) + |∂_out(L∪R)|) / |L∪R|.
pub fn mrt_beta_out(g: &Graph, caps: &IsoCaps) -> Result<ConstantResult> {
    require_masks(g)?;
    caps.check_pairs(g.n())?;
    let t = Tables::new(g);
    let inner: Vec<i64> = (0..1u64 << t.n).map(|a| t.inner_count(a)).collect();
    let split = split_min(t.n, &inner);
    let best = scan_subsets(t.n, |u| {
        let (v, l) = split[u as usize];
        Some(Cand {
            num: v + t.out(u).count_ones() as i64,
            den: u.count_ones() as i64,
            set: u,
            left: l,
        })
    })
    .expect("n >= 1");
    Ok(ConstantResult::exact(
        "beta_out",
        i64::quantity(best.num, best.den),
        Witness::split(best.set, best.left),
    ))
}

/// h^σ = min over ∅≠V1 of (ι^σ(V1) + |∂(V1)|) / vol(V1).
///
/// For a split (L, R) of U the frustrated non-loop edges are the positive
/// edges across plus the negative edges inside L or R; ι counts each twice
/// and each negative loop once.
pub fn signed_cheeger(g: &Graph, sigma: &Signature, caps: &IsoCaps) -> Result<ConstantResult> {
    require_masks(g)?;
    caps.check_pairs(g.n())?;
    let t = Tables::new(g);
    let n = t.n;
    let pos: Vec<u64> = (0..n)
        .map(|v| g.nbr_mask(v) & !sigma.neg_mask(g, v) & !(1 << v))
        .collect();
    let neg: Vec<u64> = (0..n).map(|v| sigma.neg_mask(g, v) & !(1 << v)).collect();
    let neg_loops: u64 = (0..n)
        .filter(|&v| sigma.neg_mask(g, v) >> v & 1 == 1)
        .fold(0, |m, v| m | (1 << v));
    let inside =
        |masks: &[u64], a: u64| -> i64 { MaskIter(a).map(|x| (masks[x] & a).count_ones() as i64).sum::<i64>() / 2 };
    let size = 1usize << n;
    let pos_in: Vec<i64> = (0..size as u64).map(|a| inside(&pos, a)).collect();
    let g_tab: Vec<i64> = (0..size as u64).map(|a| inside(&neg, a) - pos_in[a as usize]).collect();
    let split = split_min(n, &g_tab);
    let best = scan_subsets(n, |u| {
        let vol: i64 = MaskIter(u).map(|x| g.degree(x) as i64).sum();
        if vol == 0 {
            return None;
        }
        let (v, l) = split[u as usize];
        let frustrated = pos_in[u as usize] + v;
        let iota = 2 * frustrated + (neg_loops & u).count_ones() as i64;
        Some(Cand {
            num: iota + t.bnd[u as usize],
            den: vol,
            set: u,
            left: l,
        })
    })
    .ok_or(Error::NoAdmissibleSet("h_sigma"))?;
    let mut r = ConstantResult::exact(
        "h_sigma",
        i64::quantity(best.num, best.den),
        Witness::split(best.set, best.left),
    );
    if g.loop_count() > 0 {
        r.notes
            .push("self-loops present: a negative loop contributes 1 to the frustration index".into());
    }
    Ok(r)
}

/// ι_∞^{σ,π}(W) for every W with its minimising L (τ = +1 on L).
struct SupTable<W> {
    value: Vec<W>,
    left: Vec<u64>,
    pi: Vec<W>,
}

fn sup_table<W: Scalar>(g: &Graph, sigma: &Signature, weights: &[W]) -> SupTable<W> {
    let n = g.n();
    let size = 1usize << n;
    let neg: Vec<u64> = (0..n).map(|v| sigma.neg_mask(g, v)).collect();
    let pos: Vec<u64> = (0..n).map(|v| g.nbr_mask(v) & !neg[v]).collect();
    let mut touch_neg = vec![0u64; size];
    let mut touch_pos = vec![0u64; size];
    let mut pi = vec![W::zero(); size];
    for a in 1..size {
        let x = a.trailing_zeros() as usize;
        let b = a & (a - 1);
        touch_neg[a] = touch_neg[b] | neg[x];
        touch_pos[a] = touch_pos[b] | pos[x];
        pi[a] = pi[b] + weights[x];
    }
    let rows: Vec<(W, u64)> = (0..size as u64)
        .into_par_iter()
        .map(|w| {
            let mut best: Option<(W, u64)> = None;
            for l in submasks(w) {
                let r = w & !l;
                // x ∈ L is bad when it has a negative neighbour in L (a
                // negative loop included) or a positive neighbour in R.
                let bad_l = l & (touch_neg[l as usize] | touch_pos[r as usize]);
                let bad_r = r & (touch_neg[r as usize] | touch_pos[l as usize]);
                let v = pi[(bad_l | bad_r) as usize];
                let better = match best {
                    None => true,
                    Some((bv, bl)) => v < bv || (v == bv && lex_cmp(l, bl) == Ordering::Less),
                };
                if better {
                    best = Some((v, l));
                }
            }
            best.expect("submasks is nonempty")
        })
        .collect();
    let (value, left) = rows.into_iter().unzip();
    SupTable { value, left, pi }
}

/// (h_out^σ, h_S^σ) from one ι_∞ table.
pub fn signed_vertex_constants(
    g: &Graph,
    sigma: &Signature,
    pi: &VertexMeasure,
    caps: &IsoCaps,
) -> Result<(ConstantResult, ConstantResult)> {
    require_masks(g)?;
    caps.check_pairs(g.n())?;
    if pi.len() != g.n() {
        return Err(Error::InvalidMeasure(format!(
            "{} weights for {} vertices",
            pi.len(),
            g.n()
        )));
    }
    match pi.as_integers() {
        Some(w) => signed_vertex_generic::<i64>(g, sigma, &w),
        None => signed_vertex_generic::<f64>(g, sigma, pi.weights()),
    }
}

fn signed_vertex_generic<W: Scalar>(
    g: &Graph,
    sigma: &Signature,
    weights: &[W],
) -> Result<(ConstantResult, ConstantResult)> {
    let t = Tables::new(g);
    let n = t.n;
    let st = sup_table(g, sigma, weights);
    let two = |v: W| v + v;
    let out_best = scan_subsets(n, |u| {
        let num = two(st.value[u as usize]) + st.pi[t.out(u) as usize];
        Some(Cand {
            num,
            den: st.pi[u as usize],
            set: u,
            left: st.left[u as usize],
        })
    })
    .expect("n >= 1");
    let sym_best = scan_subsets(n, |u| {
        let inner = t.inner(u);
        let interior = u & !inner;
        let sym = t.out(u) | inner;
        let num = two(st.value[interior as usize]) + st.pi[sym as usize];
        Some(Cand {
            num,
            den: st.pi[u as usize],
            set: u,
            left: st.left[interior as usize],
        })
    })
    .expect("n >= 1");
    let out = ConstantResult::exact(
        "h_out_sigma",
        W::quantity(out_best.num, out_best.den),
        Witness::split(out_best.set, out_best.left),
    );
    let interior = sym_best.set & !t.inner(sym_best.set);
    let mut sym = ConstantResult::exact(
        "h_sym_sigma",
        W::quantity(sym_best.num, sym_best.den),
        Witness {
            set: MaskIter(sym_best.set).collect(),
            left: Some(MaskIter(sym_best.left).collect()),
            right: Some(MaskIter(interior & !sym_best.left).collect()),
            interior: Some(MaskIter(interior).collect()),
        },
    );
    if interior == 0 {
        sym.notes
            .push("witness has empty interior; its frustration term is 0".into());
    }
    Ok((out, sym))
}

pub fn signed_h_out(g: &Graph, sigma: &Signature, pi: &VertexMeasure, caps: &IsoCaps) -> Result<ConstantResult> {
    Ok(signed_vertex_constants(g, sigma, pi, caps)?.0)
}

pub fn signed_h_sym(g: &Graph, sigma: &Signature, pi: &VertexMeasure, caps: &IsoCaps) -> Result<ConstantResult> {
    Ok(signed_vertex_constants(g, sigma, pi, caps)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn q(n: i64, d: i64) -> Quantity {
        Quantity::ratio(n, d)
    }

    #[test]
    fn c5_constants() {
        let g = cycle(5);
        let caps = IsoCaps::default();
        let m = Signature::all_minus(&g);
        let pi = VertexMeasure::counting(5);
        let h_out = vertex_iso_h_out(&g, &caps).unwrap();
        assert_eq!((h_out.value, h_out.witness.set.clone()), (q(1, 1), vec![0, 1]));
        assert_eq!(trevisan_beta(&g, &caps).unwrap().value, q(1, 5));
        let bo = mrt_beta_out(&g, &caps).unwrap();
        assert_eq!(bo.value, q(1, 4));
        assert_eq!(bo.witness.left, Some(vec![0, 2]));
        assert_eq!(bo.witness.right, Some(vec![1, 3]));
        let hs = signed_cheeger(&g, &m, &caps).unwrap();
        assert_eq!((hs.value, hs.witness.set.len()), (q(1, 5), 5));
        let (o, s) = signed_vertex_constants(&g, &m, &pi, &caps).unwrap();
        assert_eq!((o.value, o.witness.set.clone()), (q(1, 4), vec![0, 1, 2, 3]));
        assert_eq!((s.value, s.witness.set.clone()), (q(3, 4), vec![0, 1, 2, 3]));
        assert_eq!(s.witness.interior, Some(vec![1, 2]));
    }

    #[test]
    fn other_small_graphs() {
        let caps = IsoCaps::default();
        let h = cheeger_h(&cycle(6), &caps).unwrap();
        assert_eq!((h.value, h.witness.set.clone()), (q(1, 3), vec![0, 1, 2]));
        assert_eq!(vertex_iso_h_out(&cycle(6), &caps).unwrap().value, q(2, 3));
        assert_eq!(vertex_iso_h_out(&complete(4), &caps).unwrap().value, q(1, 1));
        assert_eq!(cheeger_h(&cycle(2), &caps).unwrap().value, q(1, 1));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(cheeger_h(&two, &caps).unwrap().value, q(0, 1));
        assert_eq!(trevisan_beta(&cycle(6), &caps).unwrap().value, q(0, 1));
        assert_eq!(mrt_beta_out(&cycle(6), &caps).unwrap().value, q(0, 1));
    }

    #[test]
    fn loops_everywhere_give_beta_out_one() {
        let g = Graph::from_edges(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(mrt_beta_out(&g, &IsoCaps::default()).unwrap().value, q(1, 1));
    }

    #[test]
    fn beta_refuses_irregular() {
        assert_eq!(
            trevisan_beta(&path(3), &IsoCaps::default()).unwrap_err(),
            Error::NotRegular("beta")
        );
    }

    #[test]
    fn balanced_signatures_vanish() {
        let g = petersen();
        let caps = IsoCaps::default();
        let tau: Vec<i8> = (0..10).map(|v| if v % 3 == 0 { -1 } else { 1 }).collect();
        let s = Signature::all_plus(&g).switch(&g, &tau);
        assert_eq!(signed_cheeger(&g, &s, &caps).unwrap().value, q(0, 1));
        let (o, sy) = signed_vertex_constants(&g, &s, &VertexMeasure::counting(10), &caps).unwrap();
        assert_eq!(o.value, q(0, 1));
        assert_eq!(o.witness.set.len(), 10);
        assert_eq!(sy.value, q(0, 1));
    }

    #[test]
    fn h_sigma_all_minus_equals_beta() {
        let caps = IsoCaps::default();
        for g in [cycle(5), cycle(7), petersen(), hypercube(3), complete(5)] {
            let b = trevisan_beta(&g, &caps).unwrap().value;
            let h = signed_cheeger(&g, &Signature::all_minus(&g), &caps).unwrap().value;
            assert_eq!(b, h);
        }
    }

    #[test]
    fn caps_are_hard() {
        let g = cycle(15);
        assert!(mrt_beta_out(&g, &IsoCaps::default()).unwrap_err().is_cap_exceeded());
        let caps = IsoCaps {
            subset_cap: 40,
            tripartition_cap: 40,
        };
        assert!(cheeger_h(&cycle(31), &caps).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn non_integer_measure_uses_floats() {
        let g = cycle(5);
        let pi = VertexMeasure::new(vec![0.5, 1.0, 1.0, 1.0, 1.0]).unwrap();
        let (o, _) = signed_vertex_constants(&g, &Signature::all_minus(&g), &pi, &IsoCaps::default()).unwrap();
        assert!(matches!(o.value, Quantity::Float(_)));
    }
}
