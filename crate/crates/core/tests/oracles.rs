//! Brute-force oracles, independent of the layered quotient walk.
//!
//! Minimal coset representatives are grown one letter at a time from words,
//! and inversion sets are recomputed from scratch by reflecting simple coroots.

use std::collections::{BTreeSet, HashMap, VecDeque};

use bkpoles::checks::{run_check, CheckKind, CheckStatus};
use bkpoles::quotient::quotient_stats;
use bkpoles::words::{certify_swap_rules, coroot_sequence, coroot_table, explicit_w0_word, DEFAULT_NODE_CAP};
use bkpoles::{CartanType, ParabolicDatum, RootDatum};

type V = Vec<i32>;

struct Brute {
    a: Vec<Vec<i32>>,
    node: usize,
    /// Inversion set -> word in application order.
    reps: Vec<(BTreeSet<V>, Vec<usize>)>,
    /// (parent index, new coroot, child inversion set)
    edges: Vec<(usize, V, BTreeSet<V>)>,
}

fn reflect(a: &[Vec<i32>], i: usize, v: &[i32]) -> V {
    let c: i32 = v.iter().enumerate().map(|(j, x)| x * a[j][i]).sum();
    let mut out = v.to_vec();
    out[i] -= c;
    out
}

fn inversions(a: &[Vec<i32>], word: &[usize]) -> Vec<V> {
    let n = a.len();
    word.iter()
        .enumerate()
        .map(|(k, &s)| {
            let mut v: V = (0..n).map(|j| i32::from(j == s)).collect();
            for &b in word[..k].iter().rev() {
                v = reflect(a, b, &v);
            }
            v
        })
        .collect()
}

fn brute(t: &str, node: usize) -> Brute {
    let ct: CartanType = t.parse().unwrap();
    let a = ct.cartan_matrix();
    let n = a.len();
    let mut index: HashMap<BTreeSet<V>, usize> = HashMap::new();
    let mut reps = vec![(BTreeSet::new(), Vec::new())];
    index.insert(BTreeSet::new(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (set, word) = reps[i].clone();
        for s in 0..n {
            let mut w2 = word.clone();
            w2.push(s);
            let seq = inversions(&a, &w2);
            let new = seq.last().unwrap().clone();
            if new.iter().any(|&x| x < 0) || set.contains(&new) || new[node - 1] == 0 {
                continue;
            }
            let child: BTreeSet<V> = seq.into_iter().collect();
            edges.push((i, new, child.clone()));
            if !index.contains_key(&child) {
                index.insert(child.clone(), reps.len());
                reps.push((child, w2));
                queue.push_back(reps.len() - 1);
            }
        }
    }
    Brute { a, node, reps, edges }
}

impl Brute {
    fn m(&self, set: &BTreeSet<V>, h: i32, l: i32) -> i32 {
        set.iter()
            .filter(|v| v.iter().sum::<i32>() == h && v[self.node - 1] == l)
            .count() as i32
    }

    fn full(&self) -> &BTreeSet<V> {
        self.reps.iter().map(|(s, _)| s).max_by_key(|s| s.len()).unwrap()
    }

    /// Qualifying edges where some unfilled cell (h′,λ′) has λ′(h−1) − λh′ ≥ λ.
    fn comb1_violations(&self) -> u64 {
        let full = self.full();
        let cells: BTreeSet<(i32, i32)> = full.iter().map(|v| (v.iter().sum(), v[self.node - 1])).collect();
        let mut bad = 0;
        for (parent, new, child) in &self.edges {
            let w = &self.reps[*parent].0;
            let (h, l) = (new.iter().sum::<i32>(), new[self.node - 1]);
            let drop = |s: &BTreeSet<V>| (self.m(s, h, l) - self.m(s, h - 1, l)).max(0);
            if drop(child) != drop(w) + 1 {
                continue;
            }
            if cells
                .iter()
                .any(|&(h2, l2)| self.m(full, h2, l2) > self.m(w, h2, l2) && l2 * (h - 1) - l * h2 >= l)
            {
                bad += 1;
            }
        }
        bad
    }

    fn comb_minus_violations(&self) -> u64 {
        let mut bad = 0;
        for (parent, _, child) in &self.edges {
            let w = &self.reps[*parent].0;
            let cells: BTreeSet<(i32, i32)> = child
                .iter()
                .flat_map(|v| {
                    let h: i32 = v.iter().sum();
                    [(h, v[self.node - 1]), (h + 1, v[self.node - 1])]
                })
                .collect();
            let drop = |s: &BTreeSet<V>, h, l| (self.m(s, h, l) - self.m(s, h - 1, l)).max(0);
            if cells.iter().any(|&(h, l)| drop(w, h, l) > drop(child, h, l)) {
                bad += 1;
            }
        }
        bad
    }
}

#[test]
fn quotient_sizes_match_brute_force() {
    for (t, r) in [
        ("A4", 4),
        ("B3", 3),
        ("C4", 4),
        ("D5", 5),
        ("G2", 2),
        ("F4", 4),
        ("E6", 6),
    ] {
        for node in 1..=r {
            let b = brute(t, node);
            let p = ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap();
            assert_eq!(
                quotient_stats(&p).unwrap().count,
                b.reps.len() as u64,
                "{t} node {node}"
            );
            assert!(b.a.len() == r);
        }
    }
}

#[test]
fn comb_minus_violations_match_brute_force() {
    let mut seen_failure = false;
    for (t, r) in [
        ("A4", 4),
        ("B4", 4),
        ("C4", 4),
        ("D4", 4),
        ("D5", 5),
        ("G2", 2),
        ("F4", 4),
        ("E6", 6),
    ] {
        for node in 1..=r {
            let b = brute(t, node);
            let expected = b.comb_minus_violations();
            let p = ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap();
            for kind in [CheckKind::CombMinus, CheckKind::CombPlus] {
                let rep = run_check(&p, kind, None);
                assert_eq!(rep.stats["violating_edges"], expected, "{t} node {node} {kind}");
                let status = if expected == 0 {
                    CheckStatus::Verified
                } else {
                    CheckStatus::Failed
                };
                assert_eq!(rep.status, status, "{t} node {node} {kind}");
            }
            seen_failure |= expected > 0;
        }
    }
    assert!(seen_failure);
}

#[test]
fn comb1_violations_match_brute_force() {
    for (t, r) in [
        ("B4", 4),
        ("B5", 5),
        ("C3", 3),
        ("C4", 4),
        ("D5", 5),
        ("G2", 2),
        ("F4", 4),
        ("E6", 6),
    ] {
        for node in 1..=r {
            let expected = brute(t, node).comb1_violations();
            let p = ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap();
            let rep = run_check(&p, CheckKind::Comb1, None);
            assert_eq!(rep.stats["violating_edges"], expected, "{t} node {node}");
        }
    }
    assert_eq!(brute("B5", 2).comb1_violations(), 1);
    assert_eq!(brute("C4", 2).comb1_violations(), 1);
    assert_eq!(brute("B4", 2).comb1_violations(), 0);
}

#[test]
fn known_counterexample_counts() {
    assert_eq!(brute("D5", 2).comb_minus_violations(), 3);
    assert_eq!(brute("E6", 3).comb_minus_violations(), 12);
    assert_eq!(brute("D4", 2).comb_minus_violations(), 0);
    assert_eq!(brute("A5", 3).comb_minus_violations(), 0);
}

#[test]
fn explicit_words_reproduce_tables() {
    let mut cases = vec![("G2", 1), ("G2", 2)];
    let names: Vec<String> = ["A", "B", "C", "D"]
        .iter()
        .flat_map(|s| (2..=7).map(move |n| format!("{s}{n}")))
        .collect();
    for name in &names {
        let ct: CartanType = match name.parse() {
            Ok(c) => c,
            Err(_) => continue,
        };
        for node in 1..=ct.rank() {
            cases.push((name.as_str(), node));
        }
    }
    for (t, node) in cases {
        let ct: CartanType = t.parse().unwrap();
        let root = RootDatum::new(ct);
        let word = explicit_w0_word(ct, node).unwrap();
        let seq = coroot_sequence(&word, &root, Some(node)).unwrap_or_else(|e| panic!("{t} node {node}: {e}"));
        assert_eq!(seq, coroot_table(ct, node).unwrap(), "{t} node {node}");
        let outside: BTreeSet<V> = root
            .positive_coroots()
            .iter()
            .filter(|v| v[node - 1] > 0)
            .cloned()
            .collect();
        assert_eq!(seq.into_iter().collect::<BTreeSet<_>>(), outside, "{t} node {node}");
    }
}

#[test]
fn swap_certificates_agree_with_ideal_order() {
    for (t, r) in [
        ("A3", 3),
        ("A4", 4),
        ("B3", 3),
        ("C3", 3),
        ("B4", 4),
        ("C4", 4),
        ("D4", 4),
        ("D5", 5),
    ] {
        for node in 1..=r {
            let p = ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap();
            let cert = certify_swap_rules(&p, DEFAULT_NODE_CAP).unwrap();
            if cert.status == CheckStatus::Skipped {
                continue;
            }
            // β can precede β′ in some reduced word iff some representative contains β but not β′.
            let b = brute(t, node);
            let outside: Vec<V> = p
                .root()
                .positive_coroots()
                .iter()
                .filter(|v| v[node - 1] > 0)
                .cloned()
                .collect();
            let mut reversible = 0;
            for (i, x) in outside.iter().enumerate() {
                for y in &outside[i + 1..] {
                    let xy = b.reps.iter().any(|(s, _)| s.contains(x) && !s.contains(y));
                    let yx = b.reps.iter().any(|(s, _)| s.contains(y) && !s.contains(x));
                    reversible += usize::from(xy && yx);
                }
            }
            assert_eq!(cert.reversible_pairs, reversible, "{t} node {node}");
        }
    }
}
