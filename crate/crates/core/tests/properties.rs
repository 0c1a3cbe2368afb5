use std::collections::BTreeSet;

use proptest::prelude::*;

use bkpoles::quotient::{c_w_closed, c_w_factorwise, CorootSet};
use bkpoles::rational::{fmt_q, parse_q};
use bkpoles::words::{coroot_sequence, random_rewrites};
use bkpoles::{CartanType, LFactorProduct, ParabolicDatum, ReducedWord, RootDatum, Q};

fn product() -> impl Strategy<Value = LFactorProduct> {
    prop::collection::vec(((1u32..=6, -12i64..=12, 1i64..=3), -3i64..=3), 0..8)
        .prop_map(|v| LFactorProduct::from_pairs(v.into_iter().map(|((l, n, d), e)| ((l, Q::new(n, d)), e))))
}

fn cartan() -> impl Strategy<Value = CartanType> {
    prop::sample::select(vec![
        "A1", "A3", "A5", "B2", "B4", "C3", "C5", "D4", "D5", "G2", "F4", "E6", "E7",
    ])
    .prop_map(|s| s.parse().unwrap())
}

fn datum() -> impl Strategy<Value = ParabolicDatum> {
    (cartan(), any::<prop::sample::Index>())
        .prop_map(|(c, i)| ParabolicDatum::from_type(c, i.index(c.rank()) + 1).unwrap())
}

/// A reduced word for a minimal coset representative, grown from `letters` by
/// keeping only the letters that add a coroot outside the Levi.
fn grow(p: &ParabolicDatum, letters: &[usize]) -> ReducedWord {
    let root = p.root();
    let mut applied = Vec::new();
    for &l in letters {
        let mut next = applied.clone();
        next.push(l % root.rank());
        if coroot_sequence(&ReducedWord::from_applied(next.clone()), root, Some(p.node())).is_ok() {
            applied = next;
        }
    }
    ReducedWord::from_applied(applied)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_form_a_group(a in product(), b in product(), c in product()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).cancel(&b), a.clone());
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert_eq!(a.div(&b), a.mul(&b.inverse()));
    }

    #[test]
    fn specialization_is_a_projection(a in product(), b in product(), o in 1u32..=6) {
        prop_assert_eq!(a.specialize(1), a.clone());
        prop_assert_eq!(a.specialize(o).specialize(o), a.specialize(o));
        prop_assert_eq!(a.mul(&b).specialize(o), a.specialize(o).mul(&b.specialize(o)));
        prop_assert!(a.specialize(o).len() <= a.len());
    }

    #[test]
    fn pole_orders_are_bounded_by_the_positive_degree(a in product(), o in 1u32..=6) {
        let deg = a.specialize(o).positive_degree();
        for e in a.pole_locus(o).entries {
            prop_assert!(i64::from(e.max_order) <= deg);
        }
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..50) {
        let x = Q::new(n, d);
        prop_assert_eq!(parse_q(&fmt_q(&x)), Some(x));
    }

    #[test]
    fn full_profile_is_a_palindrome(p in datum()) {
        let m = p.full_profile();
        prop_assert_eq!(m.total(), p.outside_coroots().len() as u64);
        for ((h, l), c) in m.cells() {
            prop_assert_eq!(m.get(l * p.kappa() - h, l), c);
        }
        prop_assert_eq!(p.s_k() * 2 + 2, Q::from_integer(p.kappa()));
    }

    #[test]
    fn closed_form_matches_factorwise(p in datum(), letters in prop::collection::vec(0usize..8, 0..40)) {
        let word = grow(&p, &letters);
        let root = p.root();
        let seq = coroot_sequence(&word, root, Some(p.node())).unwrap();
        let set = CorootSet::from_indices(seq.iter().map(|v| root.coroot_index(v).unwrap()));
        let prof = p.profile_of(set.iter());
        prop_assert_eq!(prof.total(), word.len() as u64);
        prop_assert_eq!(c_w_factorwise(&p, &set), c_w_closed(&p, &prof));
    }

    #[test]
    fn braid_moves_preserve_the_inversion_set(
        p in datum(),
        letters in prop::collection::vec(0usize..8, 0..40),
        seed in any::<u64>(),
    ) {
        let word = grow(&p, &letters);
        let root = p.root();
        let before: BTreeSet<Vec<i32>> = coroot_sequence(&word, root, Some(p.node())).unwrap().into_iter().collect();
        let walk = random_rewrites(&word, root, Some(p.node()), 200, seed).unwrap();
        let after: ReducedWord = walk.final_word.parse().unwrap();
        prop_assert_eq!(after.len(), word.len());
        let got: BTreeSet<Vec<i32>> = coroot_sequence(&after, root, Some(p.node())).unwrap().into_iter().collect();
        prop_assert_eq!(got, before);
    }

    #[test]
    fn words_round_trip(letters in prop::collection::vec(1usize..=8, 0..20)) {
        let w = ReducedWord::from_written(&letters);
        prop_assert_eq!(w.to_string().parse::<ReducedWord>().unwrap(), w);
    }
}

#[test]
fn long_rewrite_walks_stay_reduced() {
    for (t, node) in [("D5", 3), ("E6", 2), ("B4", 2)] {
        let p = ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap();
        let root = RootDatum::new(p.cartan());
        let (word, _) = bkpoles::words::canonical_w0_word(&p).unwrap();
        let walk = random_rewrites(&word, &root, Some(node), 10_000, 7).unwrap();
        assert_eq!(walk.steps, 10_000, "{t} node {node}");
    }
}
