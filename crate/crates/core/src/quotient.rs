//! Minimal coset representatives of `W/W_M` and the L-factor products `c_w`,
//! `a_w`, `d` attached to them.
//!
//! A representative `w` is stored through its inversion set
//! `Φ_w^∨ = {β^∨ > 0 : wβ^∨ < 0}` and the matrix of `w^{-1}` on simple-coroot
//! coordinates. Left multiplication by `s_i` adds the coroot `w^{-1}α_i^∨` to
//! the inversion set whenever that coroot is positive; the child is again a
//! minimal representative exactly when the new coroot lies outside `Φ_M^∨`.
//! Inversion sets determine Weyl group elements, so they serve as the
//! deduplication key.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lfactor::LFactorProduct;
use crate::parabolic::{ParabolicDatum, Profile};
use crate::rational::{int, Q};

/// Largest number of positive coroots a [`CorootSet`] can hold.
pub const MAX_COROOTS: usize = 256;

/// Reps kept in memory by [`enumerate_quotient`]; larger quotients must be walked.
pub const MATERIALIZE_LIMIT: usize = 1_000_000;

/// Fixed-width set of positive coroot indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorootSet([u64; 4]);

impl CorootSet {
    #[inline]
    pub fn contains(&self, k: usize) -> bool {
        self.0[k >> 6] >> (k & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, k: usize) {
        self.0[k >> 6] |= 1 << (k & 63);
    }

    #[inline]
    pub fn with(mut self, k: usize) -> Self {
        self.insert(k);
        self
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(b, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(b * 64 + t)
                }
            })
        })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = CorootSet::default();
        for k in it {
            s.insert(k);
        }
        s
    }
}

/// A minimal coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRep {
    pub inversions: CorootSet,
    pub length: usize,
    /// Column-major `rank × rank`: column `j` holds `w^{-1} α_j^∨`.
    pub action: Box<[i8]>,
}

impl CosetRep {
    fn identity(rank: usize) -> Self {
        let mut action = vec![0i8; rank * rank].into_boxed_slice();
        for j in 0..rank {
            action[j * rank + j] = 1;
        }
        CosetRep {
            inversions: CorootSet::default(),
            length: 0,
            action,
        }
    }

    /// `w^{-1} α_j^∨` in simple-coroot coordinates.
    pub fn image(&self, j: usize, rank: usize) -> &[i8] {
        &self.action[j * rank..(j + 1) * rank]
    }

    pub fn profile(&self, p: &ParabolicDatum) -> Profile {
        p.profile_of(self.inversions.iter())
    }

    /// `(w^{-1})` as a row-major integer matrix.
    pub fn inverse_matrix(&self, rank: usize) -> Vec<Vec<i32>> {
        (0..rank)
            .map(|i| (0..rank).map(|j| self.action[j * rank + i] as i32).collect())
            .collect()
    }
}

/// Covering edge inside one [`LayerStep`]: `reps[parent] → next[child]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LayerEdge {
    pub parent: usize,
    pub simple: usize,
    pub child: usize,
    pub coroot: usize,
}

/// One layer of the walk: all reps of a given length, the next layer and the
/// covering edges between them.
#[derive(Debug)]
pub struct LayerStep<'a> {
    pub length: usize,
    pub reps: &'a [CosetRep],
    pub next: &'a [CosetRep],
    pub edges: &'a [LayerEdge],
}

/// Totals gathered by [`walk_quotient`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WalkSummary {
    pub count: u64,
    pub edges: u64,
    pub histogram: Vec<u64>,
}

struct CorootLookup {
    rank: usize,
    node: usize,
    map: HashMap<u128, u16>,
}

impl CorootLookup {
    fn new(p: &ParabolicDatum) -> Result<Self> {
        let coroots = p.root().positive_coroots();
        if coroots.len() > MAX_COROOTS {
            return Err(Error::Capacity(format!(
                "{} has {} positive coroots; at most {MAX_COROOTS} are supported",
                p.cartan(),
                coroots.len()
            )));
        }
        if p.root().rank() > 32 {
            return Err(Error::Capacity("rank above 32".into()));
        }
        let map = coroots
            .iter()
            .enumerate()
            .map(|(k, v)| (pack(v.iter().map(|&x| x as i8)), k as u16))
            .collect();
        Ok(CorootLookup {
            rank: p.root().rank(),
            node: p.node(),
            map,
        })
    }

    /// Index of `v` if it is a positive coroot with λ-value ≥ 1.
    #[inline]
    fn outside_index(&self, v: &[i8]) -> Option<usize> {
        if v[self.node - 1] < 1 {
            return None;
        }
        self.map.get(&pack(v.iter().copied())).map(|&k| k as usize)
    }
}

#[inline]
fn pack<I: Iterator<Item = i8>>(it: I) -> u128 {
    it.fold(0u128, |acc, x| (acc << 4) | ((x + 8) as u128 & 0xf))
}

fn child_action(parent: &CosetRep, j: usize, pairing: &[Vec<i32>], rank: usize) -> Box<[i8]> {
    let mut out = parent.action.clone();
    let cj: Vec<i8> = parent.image(j, rank).to_vec();
    for i in 0..rank {
        // s_j α_i^∨ = α_i^∨ − ⟨α_j, α_i^∨⟩ α_j^∨ and ⟨α_j, α_i^∨⟩ = pairing[i][j].
        let a = pairing[i][j] as i8;
        if a == 0 {
            continue;
        }
        for r in 0..rank {
            out[i * rank + r] -= a * cj[r];
        }
    }
    out
}

/// Breadth-first walk over `W/W_M` by length, one layer at a time.
///
/// Only two layers are held in memory. The visitor sees every layer exactly
/// once as `reps`; returning `ControlFlow::Break` stops the walk early.
pub fn walk_quotient<F>(p: &ParabolicDatum, deadline: Option<Instant>, mut visit: F) -> Result<WalkSummary>
where
    F: FnMut(&LayerStep<'_>) -> ControlFlow<()>,
{
    let lookup = CorootLookup::new(p)?;
    let rank = lookup.rank;
    let pairing = p.root().pairing();
    let mut summary = WalkSummary::default();
    let mut layer = vec![CosetRep::identity(rank)];
    let mut length = 0;
    loop {
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExceeded);
        }
        let gen = |(pi, rep): (usize, &CosetRep)| {
            let mut out = Vec::new();
            for j in 0..rank {
                if let Some(k) = lookup.outside_index(rep.image(j, rank)) {
                    out.push((rep.inversions.with(k), pi, j, k));
                }
            }
            out
        };
        let mut cands: Vec<(CorootSet, usize, usize, usize)> = if layer.len() > 2048 {
            layer.par_iter().enumerate().flat_map_iter(gen).collect()
        } else {
            layer.iter().enumerate().flat_map(gen).collect()
        };
        cands.par_sort_unstable();

        let mut next: Vec<CosetRep> = Vec::new();
        let mut edges: Vec<LayerEdge> = Vec::with_capacity(cands.len());
        for (set, parent, j, k) in cands {
            if next.last().map(|r| r.inversions) != Some(set) {
                next.push(CosetRep {
                    inversions: set,
                    length: length + 1,
                    action: Box::default(),
                });
            }
            edges.push(LayerEdge {
                parent,
                simple: j,
                child: next.len() - 1,
                coroot: k,
            });
        }
        edges.sort_unstable();
        {
            let mut filled = vec![false; next.len()];
            for e in &edges {
                if !filled[e.child] {
                    filled[e.child] = true;
                    next[e.child].action = child_action(&layer[e.parent], e.simple, pairing, rank);
                }
            }
        }

        summary.count += layer.len() as u64;
        summary.edges += edges.len() as u64;
        summary.histogram.push(layer.len() as u64);
        let step = LayerStep {
            length,
            reps: &layer,
            next: &next,
            edges: &edges,
        };
        if visit(&step).is_break() {
            return Ok(summary);
        }
        if next.is_empty() {
            break;
        }
        layer = next;
        length += 1;
    }

    let top = layer.len();
    let expected = CorootSet::from_indices(p.outside_coroots().iter().copied());
    if top != 1 || layer[0].inversions != expected {
        return Err(Error::Internal(format!(
            "{} node {}: walk ended with {top} maximal reps, not the unique w0",
            p.cartan(),
            p.node()
        )));
    }
    Ok(summary)
}

/// Global covering edge of a materialized quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringEdge {
    pub parent: usize,
    pub simple: usize,
    pub child: usize,
    pub coroot: usize,
}

/// All representatives and covering edges, in walk order.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub reps: Vec<CosetRep>,
    pub edges: Vec<CoveringEdge>,
    pub layer_offsets: Vec<usize>,
}

impl Quotient {
    pub fn top(&self) -> &CosetRep {
        self.reps.last().expect("quotient has an identity")
    }

    pub fn stats(&self) -> QuotientStats {
        let histogram: Vec<u64> = self.layer_offsets.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
        QuotientStats {
            count: self.reps.len() as u64,
            max_length: histogram.len().saturating_sub(1),
            histogram,
        }
    }
}

/// Materializes the whole quotient (at most [`MATERIALIZE_LIMIT`] reps).
pub fn enumerate_quotient(p: &ParabolicDatum) -> Result<Quotient> {
    let size = p.cartan().weyl_order() / p.cartan().levi_weyl_order(p.node());
    if size > MATERIALIZE_LIMIT as u128 {
        return Err(Error::Capacity(format!(
            "{} node {} has {size} reps; walk it with walk_quotient instead",
            p.cartan(),
            p.node()
        )));
    }
    let mut reps = Vec::new();
    let mut edges = Vec::new();
    let mut layer_offsets = vec![0];
    walk_quotient(p, None, |step| {
        let base = reps.len();
        let next_base = base + step.reps.len();
        reps.extend(step.reps.iter().cloned());
        layer_offsets.push(reps.len());
        edges.extend(step.edges.iter().map(|e| CoveringEdge {
            parent: base + e.parent,
            simple: e.simple,
            child: next_base + e.child,
            coroot: e.coroot,
        }));
        ControlFlow::Continue(())
    })?;
    Ok(Quotient {
        reps,
        edges,
        layer_offsets,
    })
}

/// Count, length histogram and maximal length of `W/W_M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientStats {
    pub count: u64,
    pub histogram: Vec<u64>,
    pub max_length: usize,
}

pub fn quotient_stats(p: &ParabolicDatum) -> Result<QuotientStats> {
    let s = walk_quotient(p, None, |_| ControlFlow::Continue(()))?;
    Ok(QuotientStats {
        count: s.count,
        max_length: s.histogram.len().saturating_sub(1),
        histogram: s.histogram,
    })
}

/// `λ(s_k+1) − h`: the shift of `L(−h, χ^λ_{s+s_k+1}) = L(λs + λ(s_k+1) − h, χ^λ)`.
#[inline]
pub fn shift_of(p: &ParabolicDatum, h: i64, lambda: i64) -> Q {
    int(lambda) * p.s_k1() - int(h)
}

/// `c_w` as the product over `β^∨ ∈ Φ_w^∨` of `L(−h)/L(1−h)`.
pub fn c_w_factorwise(p: &ParabolicDatum, inversions: &CorootSet) -> LFactorProduct {
    let mut out = LFactorProduct::new();
    for k in inversions.iter() {
        let (h, l) = p.coroot_cells()[k];
        let c = shift_of(p, h, l);
        out.insert(l as u32, c, 1);
        out.insert(l as u32, c + 1, -1);
    }
    out
}

/// `c_w` from the profile: `L(−h)^{max(0, m(h)−m(h+1))} / L(1−h)^{max(0, m(h)−m(h−1))}`.
pub fn c_w_closed(p: &ParabolicDatum, profile: &Profile) -> LFactorProduct {
    let mut out = LFactorProduct::new();
    for l in 1..=profile.max_lambda() as i64 {
        for h in 1..=profile.max_height() as i64 {
            let c = shift_of(p, h, l);
            out.insert(l as u32, c, profile.right_drop(h, l) as i64);
            out.insert(l as u32, c + 1, -(profile.left_drop(h, l) as i64));
        }
    }
    out
}

/// `c_w`, computed both ways; disagreement is an internal error.
pub fn c_w(p: &ParabolicDatum, rep: &CosetRep) -> Result<LFactorProduct> {
    let a = c_w_factorwise(p, &rep.inversions);
    let b = c_w_closed(p, &rep.profile(p));
    if a != b {
        return Err(Error::Internal(format!(
            "{} node {}: c_w factor by factor is {a} but the closed form gives {b}",
            p.cartan(),
            p.node()
        )));
    }
    Ok(a)
}

/// `a_w = ∏ L(−h, χ^λ)^{max(0, m_w(h,λ) − m_w(h+1,λ))}`.
pub fn a_w(p: &ParabolicDatum, profile: &Profile) -> LFactorProduct {
    let mut out = LFactorProduct::new();
    for l in 1..=profile.max_lambda() as i64 {
        for h in 1..=profile.max_height() as i64 {
            out.insert(l as u32, shift_of(p, h, l), profile.right_drop(h, l) as i64);
        }
    }
    out
}

/// `d = ∏ L(1−h, χ^λ)^{max(0, m_{w0}(h,λ) − m_{w0}(h−1,λ))}`.
pub fn d_product(p: &ParabolicDatum) -> LFactorProduct {
    let prof = p.full_profile();
    let mut out = LFactorProduct::new();
    for l in 1..=prof.max_lambda() as i64 {
        for h in 1..=prof.max_height() as i64 {
            out.insert(l as u32, shift_of(p, h, l) + 1, prof.left_drop(h, l) as i64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn datum(t: &str, node: usize) -> ParabolicDatum {
        ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap()
    }

    #[test]
    fn small_quotients() {
        let q = enumerate_quotient(&datum("A2", 1)).unwrap();
        assert_eq!(q.stats().histogram, vec![1, 1, 1]);
        let g = enumerate_quotient(&datum("G2", 1)).unwrap();
        assert_eq!(g.reps.len(), 6);
        assert_eq!(g.edges.len(), 5);
        assert_eq!(quotient_stats(&datum("A3", 2)).unwrap().histogram, vec![1, 1, 2, 1, 1]);
        let g2 = quotient_stats(&datum("G2", 2)).unwrap();
        assert_eq!((g2.count, g2.max_length), (6, 5));
        assert_eq!(quotient_stats(&datum("C2", 2)).unwrap().count, 4);
    }

    #[test]
    fn edges_add_one_coroot() {
        let p = datum("B3", 2);
        let quo = enumerate_quotient(&p).unwrap();
        for e in &quo.edges {
            let (a, b) = (&quo.reps[e.parent], &quo.reps[e.child]);
            assert_eq!(a.inversions.with(e.coroot), b.inversions);
            assert_eq!(a.length + 1, b.length);
            assert!(!a.inversions.contains(e.coroot));
        }
    }

    #[test]
    fn action_matrix_matches_reflections() {
        // For each edge, w'^{-1} = w^{-1} s_j, so the new coroot is w^{-1} α_j^∨.
        let p = datum("F4", 3);
        let r = p.root().clone();
        let quo = enumerate_quotient(&p).unwrap();
        for e in quo.edges.iter().take(500) {
            let parent = &quo.reps[e.parent];
            let img: Vec<i32> = parent.image(e.simple, 4).iter().map(|&x| x as i32).collect();
            assert_eq!(r.positive_coroots()[e.coroot], img);
        }
    }

    #[test]
    fn g2_node1_products() {
        let p = datum("G2", 1);
        let quo = enumerate_quotient(&p).unwrap();
        assert!(c_w(&p, &quo.reps[0]).unwrap().is_empty());
        let top = quo.top();
        assert_eq!(
            a_w(&p, &top.profile(&p)),
            LFactorProduct::from_pairs([((1, q(-3, 2)), 1), ((2, int(0)), 1)])
        );
        assert_eq!(
            d_product(&p),
            LFactorProduct::from_pairs([((1, q(5, 2)), 1), ((2, int(1)), 1)])
        );
        assert_eq!(d_product(&p), p.a_pp());
        let cw0 = c_w(&p, top).unwrap();
        assert_eq!(d_product(&p).mul(&cw0), p.a_ppop());
    }

    #[test]
    fn materialize_limit() {
        assert!(enumerate_quotient(&datum("E8", 8)).is_ok());
    }
}
