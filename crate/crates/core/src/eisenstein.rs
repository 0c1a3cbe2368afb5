//! Candidate pole data `(Γ, N, d_0)` of degenerate Eisenstein series.
//!
//! `Γ` is the union over `w ∈ W/W_M` and character orders `d′ ≤ d_0` of the
//! pole real parts of `d·c_w`, each with its maximal net order. No cancellation
//! across different `w` is attempted, so `N` is an upper bound.

use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;
use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::poles_of_profile;
use crate::error::Result;
use crate::lfactor::{LFactorProduct, PoleEntry, PoleLocus};
use crate::parabolic::{ParabolicDatum, Profile};
use crate::quotient::{d_product, walk_quotient};
use crate::rational::{int, serialize_q, Q};
use crate::rootsystem::CartanType;

/// Status of one invariant of a [`PoleReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariant {
    pub name: &'static str,
    pub holds: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    #[serde(rename = "type")]
    pub cartan: CartanType,
    pub node: usize,
    pub d0: u32,
    /// Sorted by real part (descending), then character order.
    pub gamma: Vec<PoleEntry>,
    pub n_max: u32,
    #[serde(serialize_with = "serialize_q")]
    pub strip_bound: Q,
    pub invariants: Vec<Invariant>,
    pub periodicity: &'static str,
}

impl PoleReport {
    pub fn invariant(&self, name: &str) -> Option<&Invariant> {
        self.invariants.iter().find(|i| i.name == name)
    }
}

/// `x ∈ (1/d)ℤ` for some `1 ≤ d ≤ d_0`.
fn in_lattice(x: Q, d0: u32) -> bool {
    (1..=d0 as i64).any(|d| (x * int(d)).is_integer())
}

pub fn eisenstein_poles(p: &ParabolicDatum, deadline: Option<Instant>) -> Result<PoleReport> {
    let d = d_product(p);
    let mut seen: HashSet<Profile> = HashSet::new();
    let mut best: BTreeMap<(Q, u32), u32> = BTreeMap::new();
    walk_quotient(p, deadline, |step| {
        let fresh: Vec<Profile> = step
            .reps
            .iter()
            .map(|r| r.profile(p))
            .filter(|prof| seen.insert(prof.clone()))
            .collect();
        let found: Vec<Vec<PoleEntry>> = fresh.par_iter().map(|prof| poles_of_profile(p, &d, prof)).collect();
        for e in found.into_iter().flatten() {
            let slot = best.entry((e.real_part, e.character_order)).or_insert(0);
            *slot = (*slot).max(e.max_order);
        }
        ControlFlow::Continue(())
    })?;

    let mut gamma: Vec<PoleEntry> = best
        .into_iter()
        .map(|((x, o), m)| PoleEntry {
            real_part: x,
            character_order: o,
            max_order: m,
        })
        .collect();
    gamma.sort_by(|a, b| {
        b.real_part
            .cmp(&a.real_part)
            .then(a.character_order.cmp(&b.character_order))
    });
    let n_max = gamma.iter().map(|e| e.max_order).max().unwrap_or(0);
    let bound = p.s_k1();
    let d0 = p.d0();

    let strip: Vec<String> = gamma
        .iter()
        .filter(|e| e.real_part.abs() > bound)
        .map(|e| format!("real part {} exceeds {}", e.real_part, bound))
        .collect();
    let lattice: Vec<String> = gamma
        .iter()
        .filter(|e| !in_lattice(e.real_part, d0))
        .map(|e| format!("real part {} not in (1/d)Z for d ≤ {d0}", e.real_part))
        .collect();
    let shifted: Vec<String> = gamma
        .iter()
        .filter(|e| !in_lattice(e.real_part + bound, d0))
        .map(|e| format!("real part {} + s_k + 1 not in (1/d)Z for d ≤ {d0}", e.real_part))
        .collect();
    let positive_degree = d.positive_degree() as u32;
    let order_bound: Vec<String> = if n_max > positive_degree {
        vec![format!("N = {n_max} exceeds the degree {positive_degree} of d")]
    } else {
        Vec::new()
    };
    let inv = |name, v: Vec<String>| Invariant {
        name,
        holds: v.is_empty(),
        violations: v,
    };
    Ok(PoleReport {
        cartan: p.cartan(),
        node: p.node(),
        d0,
        gamma,
        n_max,
        strip_bound: bound,
        invariants: vec![
            inv("strip", strip),
            inv("lattice", lattice),
            inv("shifted_lattice", shifted),
            inv("order_bound", order_bound),
        ],
        periodicity: PoleLocus::PERIODICITY,
    })
}

/// `d` at the trivial character order: the numerator of the basic function.
pub fn basic_function_numerator(p: &ParabolicDatum) -> LFactorProduct {
    d_product(p).specialize(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn datum(t: &str, node: usize) -> ParabolicDatum {
        ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap()
    }

    #[test]
    fn a1_gamma() {
        let r = eisenstein_poles(&datum("A1", 1), None).unwrap();
        let got: Vec<_> = r
            .gamma
            .iter()
            .map(|e| (e.real_part, e.character_order, e.max_order))
            .collect();
        assert_eq!(got, vec![(int(0), 1, 1), (int(-1), 1, 1)]);
        assert_eq!(r.n_max, 1);
    }

    #[test]
    fn c2_strip() {
        let r = eisenstein_poles(&datum("C2", 2), None).unwrap();
        assert_eq!(r.strip_bound, q(3, 2));
        assert!(r.invariant("strip").unwrap().holds);
        assert!(r.gamma.iter().all(|e| e.real_part.abs() <= q(3, 2)));
    }

    #[test]
    fn basic_numerators() {
        assert_eq!(
            basic_function_numerator(&datum("A1", 1)),
            LFactorProduct::single(1, int(1), 1)
        );
        assert_eq!(
            basic_function_numerator(&datum("G2", 1)),
            LFactorProduct::from_pairs([((1, q(5, 2)), 1), ((2, int(1)), 1)])
        );
        assert_eq!(
            basic_function_numerator(&datum("C2", 2)),
            LFactorProduct::from_pairs([((1, q(3, 2)), 1), ((2, int(1)), 1)])
        );
    }
}
