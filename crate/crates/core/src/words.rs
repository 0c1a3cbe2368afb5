//! Reduced words for the longest element of `W/W_M` and their coroot sequences.
//!
//! A word `w = w_m ⋯ w_2 w_1` is stored in application order `[w_1, w_2, …]`.
//! Its coroot sequence is `α̃_(i) = w_1 ⋯ w_{i−1} α_(i)^∨`, where `α_(i)` is
//! the simple root of the letter `w_i`. For a reduced word these coroots are
//! distinct, positive, and together form the inversion set of `w`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::quotient::walk_quotient;
use crate::rootsystem::{CartanType, RootDatum, Series};

/// A word in the simple reflections, stored in application order (0-based letters).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    applied: Vec<usize>,
}

impl ReducedWord {
    /// From letters in application order (rightmost letter first).
    pub fn from_applied(applied: Vec<usize>) -> Self {
        ReducedWord { applied }
    }

    /// From 1-based letters as written, leftmost first: `[1, 2, 1]` is `s1 s2 s1`.
    pub fn from_written(written: &[usize]) -> Self {
        ReducedWord {
            applied: written.iter().rev().map(|&s| s - 1).collect(),
        }
    }

    pub fn applied(&self) -> &[usize] {
        &self.applied
    }

    /// 1-based letters as written.
    pub fn written(&self) -> Vec<usize> {
        self.applied.iter().rev().map(|&s| s + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.applied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.applied.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.applied.is_empty() {
            return f.write_str("e");
        }
        for s in self.written() {
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Parses `s1s2s1`, `s1 s2 s1` or `1 2 1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "e" {
            return Ok(ReducedWord::default());
        }
        let letters: std::result::Result<Vec<usize>, _> = s
            .split(|c: char| c == 's' || c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse::<usize>)
            .collect();
        match letters {
            Ok(l) if l.iter().all(|&x| x >= 1) => Ok(ReducedWord::from_written(&l)),
            _ => Err(Error::Usage(format!("cannot parse word `{s}`"))),
        }
    }
}

/// Coroot sequence of `word`, checking reducedness (and λ ≥ 1 when `node` is given).
pub fn coroot_sequence(word: &ReducedWord, root: &RootDatum, node: Option<usize>) -> Result<Vec<Vec<i32>>> {
    let n = root.rank();
    let pairing = root.pairing();
    // Columns of u = w_1 ⋯ w_{i−1}: cols[j] = u α_j^∨.
    let mut cols: Vec<Vec<i32>> = (0..n).map(|j| (0..n).map(|r| i32::from(r == j)).collect()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(word.len());
    for (pos, &a) in word.applied().iter().enumerate() {
        if a >= n {
            return Err(Error::Usage(format!(
                "letter s{} out of range for {}",
                a + 1,
                root.cartan()
            )));
        }
        let v = cols[a].clone();
        if root.coroot_index(&v).is_none() {
            return Err(Error::NonReduced {
                position: pos + 1,
                reason: format!("the non-positive coroot {v:?}"),
            });
        }
        if !seen.insert(v.clone()) {
            return Err(Error::NonReduced {
                position: pos + 1,
                reason: format!("the repeated coroot {v:?}"),
            });
        }
        if let Some(l) = node {
            if v[l - 1] < 1 {
                return Err(Error::NonReduced {
                    position: pos + 1,
                    reason: format!("the Levi coroot {v:?}"),
                });
            }
        }
        // u ← u s_a: col_i ← col_i − ⟨α_a, α_i^∨⟩ col_a.
        for i in 0..n {
            let c = pairing[i][a];
            if c != 0 && i != a {
                for r in 0..n {
                    cols[i][r] -= c * v[r];
                }
            }
        }
        for x in cols[a].iter_mut() {
            *x = -*x;
        }
        out.push(v);
    }
    Ok(out)
}

fn range(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    lo..=hi
}

/// The explicit closed-form reduced word for `w0 ∈ W/W_M`, 1-based and written
/// left to right; `None` for E and F.
pub fn explicit_w0_word(cartan: CartanType, node: usize) -> Option<ReducedWord> {
    let n = cartan.rank();
    let l = node;
    let mut w: Vec<usize> = Vec::new();
    let a_part = |w: &mut Vec<usize>, top: usize| {
        for r in (l..=top).rev() {
            w.extend(range(r + 1 - l, r));
        }
    };
    match cartan.series() {
        Series::A => a_part(&mut w, n),
        Series::B | Series::C if l < n => {
            for k in (1..=l).rev() {
                w.extend(range(k, n));
            }
            a_part(&mut w, n - 1);
        }
        Series::B | Series::C => {
            for r in (1..=n).rev() {
                w.extend(range(r, n));
            }
        }
        Series::D => {
            let e = |k: usize| if k % 2 == 1 { n } else { n - 1 };
            let swap = |s: usize| match s {
                x if x == n => n - 1,
                x if x == n - 1 => n,
                x => x,
            };
            if l + 2 <= n {
                for k in (1..=l).rev() {
                    w.extend(range(k, n - 2));
                    w.push(e(k));
                }
                a_part(&mut w, n - 1);
            } else {
                for k in (1..n).rev() {
                    if k + 2 <= n {
                        w.extend(range(k, n - 2));
                    }
                    w.push(e(k));
                }
                if l == n - 1 {
                    w = w.into_iter().map(swap).collect();
                }
            }
        }
        Series::G => {
            w = if l == 1 {
                vec![1, 2, 1, 2, 1]
            } else {
                vec![2, 1, 2, 1, 2]
            };
        }
        Series::E | Series::F => return None,
    }
    Some(ReducedWord::from_written(&w))
}

/// A reduced word for `w0 ∈ W/W_M`: the explicit word when one exists, else a
/// greedy word (smallest left descent first) read off the top of the quotient.
/// The flag is `true` for the explicit word.
pub fn canonical_w0_word(p: &ParabolicDatum) -> Result<(ReducedWord, bool)> {
    if let Some(w) = explicit_w0_word(p.cartan(), p.node()) {
        return Ok((w, true));
    }
    let mut top = None;
    walk_quotient(p, None, |step| {
        if step.next.is_empty() {
            top = step.reps.first().cloned();
        }
        ControlFlow::Continue(())
    })?;
    let top = top.ok_or_else(|| Error::Internal("no maximal element".into()))?;
    let root = p.root();
    let n = root.rank();
    let pairing = root.pairing();
    // u = w^{-1} as columns; s_j is a left descent of w iff u α_j^∨ < 0.
    let mut cols: Vec<Vec<i32>> = (0..n)
        .map(|j| top.image(j, n).iter().map(|&x| x as i32).collect())
        .collect();
    let mut written = Vec::new();
    for _ in 0..top.length {
        let j = (0..n)
            .find(|&j| cols[j].iter().all(|&x| x <= 0))
            .ok_or_else(|| Error::Internal("no left descent while descending".into()))?;
        written.push(j + 1);
        let cj = cols[j].clone();
        for i in 0..n {
            let c = pairing[i][j];
            if c != 0 && i != j {
                for r in 0..n {
                    cols[i][r] -= c * cj[r];
                }
            }
        }
        for x in cols[j].iter_mut() {
            *x = -*x;
        }
    }
    Ok((ReducedWord::from_written(&written), false))
}

/// Braid relation by the number of diagram edges between the two letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    /// `s s′ = s′ s` (no edge).
    A,
    /// length-3 relation (one edge).
    B,
    /// length-4 relation (double edge).
    C,
    /// length-6 relation (triple edge).
    D,
}

impl Relation {
    pub fn span(self) -> usize {
        match self {
            Relation::A => 2,
            Relation::B => 3,
            Relation::C => 4,
            Relation::D => 6,
        }
    }

    fn of_pair(root: &RootDatum, a: usize, b: usize) -> Relation {
        let a_ = root.pairing();
        match a_[a][b] * a_[b][a] {
            0 => Relation::A,
            1 => Relation::B,
            2 => Relation::C,
            _ => Relation::D,
        }
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Relation::A),
            "b" => Ok(Relation::B),
            "c" => Ok(Relation::C),
            "d" => Ok(Relation::D),
            _ => Err(Error::Usage(format!("unknown braid relation `{s}`"))),
        }
    }
}

/// The relation applicable at `position` (application order), if any.
pub fn applicable_relation(word: &ReducedWord, position: usize, root: &RootDatum) -> Option<Relation> {
    let w = word.applied();
    let (a, b) = (*w.get(position)?, *w.get(position + 1)?);
    if a == b {
        return None;
    }
    let rel = Relation::of_pair(root, a, b);
    let m = rel.span();
    if position + m > w.len() {
        return None;
    }
    let alternating = (0..m).all(|k| w[position + k] == if k % 2 == 0 { a } else { b });
    alternating.then_some(rel)
}

/// Applies the braid move `relation` at `position` (0-based, application order)
/// and asserts its effect on the coroot sequence.
pub fn braid_move(word: &ReducedWord, position: usize, relation: Relation, root: &RootDatum) -> Result<ReducedWord> {
    match applicable_relation(word, position, root) {
        Some(r) if r == relation => {}
        found => {
            return Err(Error::PatternMismatch {
                position,
                reason: format!("expected relation {relation:?}, letters admit {found:?}"),
            })
        }
    }
    let m = relation.span();
    let mut out = word.applied().to_vec();
    let (a, b) = (out[position], out[position + 1]);
    for k in 0..m {
        out[position + k] = if k % 2 == 0 { b } else { a };
    }
    let out = ReducedWord::from_applied(out);

    let before = coroot_sequence(word, root, None)?;
    let after = coroot_sequence(&out, root, None)?;
    let i = position;
    let outside_same = (0..before.len())
        .filter(|&k| k < i || k >= i + m)
        .all(|k| before[k] == after[k]);
    let local_ok = match relation {
        Relation::A => after[i] == before[i + 1] && after[i + 1] == before[i],
        Relation::B => {
            let sum: Vec<i32> = before[i].iter().zip(&before[i + 2]).map(|(x, y)| x + y).collect();
            after[i] == before[i + 2]
                && after[i + 2] == before[i]
                && after[i + 1] == before[i + 1]
                && before[i + 1] == sum
        }
        Relation::C | Relation::D => (0..m).all(|k| after[i + k] == before[i + m - 1 - k]),
    };
    if !(outside_same && local_ok) {
        return Err(Error::Internal(format!(
            "braid move {relation:?} at {position} on {word} changed the coroot sequence unexpectedly"
        )));
    }
    Ok(out)
}

/// All `(position, relation)` pairs where a braid move applies.
pub fn available_moves(word: &ReducedWord, root: &RootDatum) -> Vec<(usize, Relation)> {
    (0..word.len())
        .filter_map(|i| applicable_relation(word, i, root).map(|r| (i, r)))
        .collect()
}

/// Coroot sequences in the standard tabular layout, read row by row.
pub fn coroot_table(cartan: CartanType, node: usize) -> Option<Vec<Vec<i32>>> {
    let n = cartan.rank();
    let l = node;
    let sum = |parts: &[(usize, usize, i32)]| -> Vec<i32> {
        let mut v = vec![0; n];
        for &(lo, hi, c) in parts {
            for j in lo..=hi {
                v[j - 1] += c;
            }
        }
        v
    };
    let mut out = Vec::new();
    let a_rows = |out: &mut Vec<Vec<i32>>, top: usize| {
        for r in l..=top {
            for t in (1..=l).rev() {
                out.push(sum(&[(t, r, 1)]));
            }
        }
    };
    match cartan.series() {
        Series::A => a_rows(&mut out, n),
        Series::B => {
            // (2,r,t) = α_n + 2Σ_r^{n−1} + Σ_t^{r−1};  (1,m,r) = α_n + 2Σ_m^{n−1} + Σ_r^{m−1}
            let two = |r: usize, t: usize| sum(&[(n, n, 1), (r, n - 1, 2), (t, r - 1, 1)]);
            let one = |m: usize, r: usize| sum(&[(n, n, 1), (m, n - 1, 2), (r, m - 1, 1)]);
            if l < n {
                a_rows(&mut out, n - 1);
            }
            for r in (1..=l.min(n)).rev() {
                for t in (1..=r).rev() {
                    out.push(two(r, t));
                }
                for m in (l + 1..=n).rev() {
                    out.push(one(m, r));
                }
            }
        }
        Series::C => {
            let two = |r: usize, t: usize| {
                if t == r {
                    sum(&[(r, n, 1)])
                } else {
                    sum(&[(r, n, 2), (t, r - 1, 1)])
                }
            };
            let one = |m: usize, r: usize| sum(&[(m, n, 2), (r, m - 1, 1)]);
            if l < n {
                a_rows(&mut out, n - 1);
            }
            for r in (1..=l.min(n)).rev() {
                for t in (1..=r).rev() {
                    out.push(two(r, t));
                }
                for m in (l + 1..=n).rev() {
                    out.push(one(m, r));
                }
            }
        }
        Series::D => {
            // (2,r,t) = α_{n−1} + α_n + 2Σ_r^{n−2} + Σ_t^{r−1};  (1,m,r) = Σ_m^n + Σ_r^{n−2}
            let two = |r: usize, t: usize| sum(&[(n - 1, n, 1), (r, n - 2, 2), (t, r - 1, 1)]);
            let one = |m: usize, r: usize| sum(&[(m, n, 1), (r, n - 2, 1)]);
            if l + 2 <= n {
                a_rows(&mut out, n - 1);
                for r in (1..=l).rev() {
                    for t in (1..r).rev() {
                        out.push(two(r, t));
                    }
                    for m in (l + 1..=n).rev() {
                        out.push(one(m, r));
                    }
                }
            } else {
                // Rows: α_n + Σ_t^{n−2}; α_{n−1} + α_n + Σ_t^{n−2}; then (2,r,t).
                for t in (1..n).rev() {
                    out.push(sum(&[(n, n, 1), (t, n - 2, 1)]));
                }
                for t in (1..=n - 2).rev() {
                    out.push(sum(&[(n - 1, n, 1), (t, n - 2, 1)]));
                }
                for r in (2..=n - 2).rev() {
                    for t in (1..r).rev() {
                        out.push(two(r, t));
                    }
                }
                if l == n - 1 {
                    for v in out.iter_mut() {
                        v.swap(n - 2, n - 1);
                    }
                }
            }
        }
        Series::G => {
            out = if l == 1 {
                vec![vec![1, 0], vec![1, 1], vec![2, 3], vec![1, 2], vec![1, 3]]
            } else {
                vec![vec![0, 1], vec![1, 3], vec![1, 2], vec![2, 3], vec![1, 1]]
            };
        }
        Series::E | Series::F => return None,
    }
    Some(out)
}

/// Labels attached to coroots in the swap rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorootLabel {
    /// `(r, t) = Σ_{j=t}^r α_j^∨`.
    Row { r: usize, t: usize },
    /// `(2, r, t)`.
    Two { r: usize, t: usize },
    /// `(1, m, r)`.
    One { m: usize, r: usize },
}

impl fmt::Display for CorootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CorootLabel::Row { r, t } => write!(f, "({r},{t})"),
            CorootLabel::Two { r, t } => write!(f, "(2,{r},{t})"),
            CorootLabel::One { m, r } => write!(f, "(1,{m},{r})"),
        }
    }
}

/// Labelled coroots outside the Levi, or `None` where no swap rules are known.
pub fn coroot_labels(cartan: CartanType, node: usize) -> Option<Vec<(CorootLabel, Vec<i32>)>> {
    let n = cartan.rank();
    let l = node;
    let sum = |parts: &[(usize, usize, i32)]| -> Vec<i32> {
        let mut v = vec![0; n];
        for &(lo, hi, c) in parts {
            for j in lo..=hi {
                v[j - 1] += c;
            }
        }
        v
    };
    let mut out = Vec::new();
    let rows = |out: &mut Vec<(CorootLabel, Vec<i32>)>, top: usize| {
        for r in l..=top {
            for t in 1..=l {
                out.push((CorootLabel::Row { r, t }, sum(&[(t, r, 1)])));
            }
        }
    };
    match cartan.series() {
        Series::A => rows(&mut out, n),
        Series::B | Series::C => {
            if l < n {
                rows(&mut out, n - 1);
            }
            let b = cartan.series() == Series::B;
            for r in 1..=l {
                for t in 1..=r {
                    let v = if b {
                        sum(&[(n, n, 1), (r, n - 1, 2), (t, r - 1, 1)])
                    } else if t == r {
                        sum(&[(r, n, 1)])
                    } else {
                        sum(&[(r, n, 2), (t, r - 1, 1)])
                    };
                    out.push((CorootLabel::Two { r, t }, v));
                }
                for m in l + 1..=n {
                    let v = if b {
                        sum(&[(n, n, 1), (m, n - 1, 2), (r, m - 1, 1)])
                    } else {
                        sum(&[(m, n, 2), (r, m - 1, 1)])
                    };
                    out.push((CorootLabel::One { m, r }, v));
                }
            }
        }
        Series::D if l + 2 <= n => {
            rows(&mut out, n - 1);
            for r in 1..=l {
                for t in 1..r {
                    out.push((
                        CorootLabel::Two { r, t },
                        sum(&[(n - 1, n, 1), (r, n - 2, 2), (t, r - 1, 1)]),
                    ));
                }
                for m in l + 1..=n {
                    out.push((CorootLabel::One { m, r }, sum(&[(m, n, 1), (r, n - 2, 1)])));
                }
            }
        }
        _ => return None,
    }
    Some(out)
}

/// The rule-based prediction of whether the order of two labelled coroots can be
/// reversed by braid moves.
pub fn rule_predicts_swap(series: Series, n: usize, x: CorootLabel, y: CorootLabel) -> bool {
    use CorootLabel::*;
    let d = series == Series::D;
    match (x, y) {
        (Row { r, t }, Row { r: r2, t: t2 }) => {
            // R1, stated for r ≤ r′.
            let ((r, t), (r2, t2)) = if r <= r2 {
                ((r, t), (r2, t2))
            } else {
                ((r2, t2), (r, t))
            };
            r < r2 && t2 > t
        }
        (Two { r, t }, Two { r: r2, t: t2 }) => {
            // R2, stated for r ≥ r′.
            let ((r, t), (r2, t2)) = if r >= r2 {
                ((r, t), (r2, t2))
            } else {
                ((r2, t2), (r, t))
            };
            r > r2 && t2 > t
        }
        (One { m, r }, One { m: m2, r: r2 }) => {
            // R3, stated for r ≥ r′.
            let ((m, r), (m2, r2)) = if r >= r2 {
                ((m, r), (m2, r2))
            } else {
                ((m2, r2), (m, r))
            };
            r > r2 && m2 > m
        }
        (Two { r, t }, Row { r: r2, t: t2 }) | (Row { r: r2, t: t2 }, Two { r, t }) => {
            t2 < r || (d && t + 1 == r && r == t2 && r2 == n - 1)
        }
        (One { m, r }, Row { r: r2, t: t2 }) | (Row { r: r2, t: t2 }, One { m, r }) => {
            t2 < r || (d && m == r2 + 1 && m == n && (t2 == r || t2 == r + 1))
        }
        (Two { r, t }, One { m: m2, r: r2 }) | (One { m: m2, r: r2 }, Two { r, t }) => {
            t < r2 || (d && r2 == t && t + 1 == r && m2 == n)
        }
    }
}

/// Outcome of [`certify_swap_rules`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapCertificate {
    #[serde(rename = "type")]
    pub cartan: CartanType,
    pub node: usize,
    /// `words` (braid-move graph) or `ideals` (inversion sets of the quotient).
    pub method: &'static str,
    pub status: crate::checks::CheckStatus,
    pub reason: Option<String>,
    pub words: usize,
    pub pairs: usize,
    pub reversible_pairs: usize,
    pub mismatches: Vec<String>,
    /// The four-coroot pattern (c′) of F4/G2 word graphs is not certified.
    pub pattern_c_prime: crate::checks::CheckStatus,
}

/// Default bound on explored words.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// Explores every reduced word of `w0 ∈ W/W_M` reachable by braid moves and
/// compares which coroot pairs change order against the swap rules.
pub fn certify_swap_rules(p: &ParabolicDatum, cap: usize) -> Result<SwapCertificate> {
    use crate::checks::CheckStatus;
    let cartan = p.cartan();
    let node = p.node();
    let root = p.root();
    let mut cert = SwapCertificate {
        cartan,
        node,
        method: "words",
        status: CheckStatus::Verified,
        reason: None,
        words: 0,
        pairs: 0,
        reversible_pairs: 0,
        mismatches: Vec::new(),
        pattern_c_prime: CheckStatus::Skipped,
    };
    let Some(labels) = coroot_labels(cartan, node) else {
        cert.status = CheckStatus::Skipped;
        cert.reason = Some("no swap rules for this type and node".into());
        return Ok(cert);
    };
    let Some(start) = explicit_w0_word(cartan, node) else {
        cert.status = CheckStatus::Skipped;
        cert.reason = Some("no explicit word".into());
        return Ok(cert);
    };
    let index: HashMap<Vec<i32>, usize> = labels.iter().enumerate().map(|(k, (_, v))| (v.clone(), k)).collect();
    let k = labels.len();
    let mut before = vec![vec![false; k]; k];
    let mut seen: HashSet<ReducedWord> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        let seq = coroot_sequence(&w, root, Some(node))?;
        let pos: Vec<usize> = seq
            .iter()
            .map(|v| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Internal(format!("unlabelled coroot {v:?}")))
            })
            .collect::<Result<_>>()?;
        if pos.len() != k {
            return Err(Error::Internal("word length differs from the number of labels".into()));
        }
        for i in 0..k {
            for j in i + 1..k {
                before[pos[i]][pos[j]] = true;
            }
        }
        for (i, rel) in available_moves(&w, root) {
            let nw = braid_move(&w, i, rel, root)?;
            if !seen.contains(&nw) {
                if seen.len() >= cap {
                    cert.status = CheckStatus::Skipped;
                    cert.reason = Some(format!("word graph exceeds the cap of {cap} nodes"));
                    cert.words = seen.len();
                    return Ok(cert);
                }
                seen.insert(nw.clone());
                queue.push_back(nw);
            }
        }
    }
    cert.words = seen.len();
    compare_with_rules(&mut cert, &labels, &before);
    Ok(cert)
}

fn compare_with_rules(cert: &mut SwapCertificate, labels: &[(CorootLabel, Vec<i32>)], before: &[Vec<bool>]) {
    let k = labels.len();
    for a in 0..k {
        for b in a + 1..k {
            cert.pairs += 1;
            let observed = before[a][b] && before[b][a];
            cert.reversible_pairs += usize::from(observed);
            let predicted = rule_predicts_swap(cert.cartan.series(), cert.cartan.rank(), labels[a].0, labels[b].0);
            if observed != predicted {
                cert.mismatches.push(format!(
                    "{} ↔ {}: observed {}, rule says {}",
                    labels[a].0, labels[b].0, observed, predicted
                ));
            }
        }
    }
    if !cert.mismatches.is_empty() {
        cert.status = crate::checks::CheckStatus::Failed;
    }
}

/// Same comparison as [`certify_swap_rules`], with the order relation read off
/// the quotient: `β` can precede `β′` in some reduced word of `w0` iff some
/// representative has `β` but not `β′` among its inversions.
pub fn certify_swap_rules_by_ideals(
    p: &ParabolicDatum,
    deadline: Option<std::time::Instant>,
) -> Result<SwapCertificate> {
    use crate::checks::CheckStatus;
    let cartan = p.cartan();
    let node = p.node();
    let mut cert = SwapCertificate {
        cartan,
        node,
        method: "ideals",
        status: CheckStatus::Verified,
        reason: None,
        words: 0,
        pairs: 0,
        reversible_pairs: 0,
        mismatches: Vec::new(),
        pattern_c_prime: CheckStatus::Skipped,
    };
    let Some(labels) = coroot_labels(cartan, node) else {
        cert.status = CheckStatus::Skipped;
        cert.reason = Some("no swap rules for this type and node".into());
        return Ok(cert);
    };
    let root = p.root();
    let k = labels.len();
    let slot: Vec<Option<usize>> = {
        let mut slot = vec![None; root.positive_coroots().len()];
        for (i, (_, v)) in labels.iter().enumerate() {
            let idx = root
                .coroot_index(v)
                .ok_or_else(|| Error::Internal(format!("label vector {v:?} is not a coroot")))?;
            slot[idx] = Some(i);
        }
        slot
    };
    let mut before = vec![vec![false; k]; k];
    let walked = walk_quotient(p, deadline, |step| {
        for rep in step.reps {
            let mut inside = vec![false; k];
            for idx in rep.inversions.iter() {
                if let Some(i) = slot[idx] {
                    inside[i] = true;
                }
            }
            for x in (0..k).filter(|&x| inside[x]) {
                for y in (0..k).filter(|&y| !inside[y]) {
                    before[x][y] = true;
                }
            }
        }
        ControlFlow::Continue(())
    });
    match walked {
        Err(Error::BudgetExceeded) => {
            cert.status = CheckStatus::Skipped;
            cert.reason = Some("time budget exhausted".into());
            return Ok(cert);
        }
        other => {
            other?;
        }
    }
    compare_with_rules(&mut cert, &labels, &before);
    Ok(cert)
}

/// Summary of a random rewrite walk.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub steps: usize,
    pub moves: BTreeMap<String, usize>,
    pub final_word: String,
}

/// Applies `steps` uniformly random braid moves starting from `word`; every move
/// checks its effect on the coroot sequence and the result stays reduced.
pub fn random_rewrites(
    word: &ReducedWord,
    root: &RootDatum,
    node: Option<usize>,
    steps: usize,
    seed: u64,
) -> Result<WalkReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = word.clone();
    let reference: HashSet<Vec<i32>> = coroot_sequence(&w, root, node)?.into_iter().collect();
    let mut report = WalkReport::default();
    for _ in 0..steps {
        let moves = available_moves(&w, root);
        if moves.is_empty() {
            break;
        }
        let (i, rel) = moves[rng.gen_range(0..moves.len())];
        w = braid_move(&w, i, rel, root)?;
        let seq = coroot_sequence(&w, root, node)?;
        if seq.iter().cloned().collect::<HashSet<_>>() != reference {
            return Err(Error::Internal(format!("coroot set changed after rewriting to {w}")));
        }
        *report.moves.entry(format!("{rel:?}").to_lowercase()).or_default() += 1;
        report.steps += 1;
    }
    report.final_word = w.to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::CartanType;

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn g2_sequences() {
        let r = RootDatum::new(t("G2"));
        let w: ReducedWord = "s1s2s1s2s1".parse().unwrap();
        assert_eq!(
            coroot_sequence(&w, &r, Some(1)).unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![2, 3], vec![1, 2], vec![1, 3]]
        );
        let w: ReducedWord = "s2s1s2s1s2".parse().unwrap();
        assert_eq!(
            coroot_sequence(&w, &r, Some(2)).unwrap(),
            vec![vec![0, 1], vec![1, 3], vec![1, 2], vec![2, 3], vec![1, 1]]
        );
        let single = ReducedWord::from_written(&[2]);
        assert_eq!(coroot_sequence(&single, &r, None).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn non_reduced_is_reported() {
        let r = RootDatum::new(t("A2"));
        let w: ReducedWord = "s1s1".parse().unwrap();
        match coroot_sequence(&w, &r, None) {
            Err(Error::NonReduced { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_words() {
        assert_eq!(explicit_w0_word(t("A3"), 2).unwrap().to_string(), "s2s3s1s2");
        assert_eq!(explicit_w0_word(t("B2"), 2).unwrap().to_string(), "s2s1s2");
        assert_eq!(explicit_w0_word(t("G2"), 1).unwrap().to_string(), "s1s2s1s2s1");
    }

    #[test]
    fn commuting_move_twice_is_identity() {
        let r = RootDatum::new(t("A3"));
        let w = ReducedWord::from_written(&[1, 3, 2]);
        let once = braid_move(&w, 1, Relation::A, &r).unwrap();
        assert_eq!(once.to_string(), "s3s1s2");
        assert_eq!(braid_move(&once, 1, Relation::A, &r).unwrap(), w);
        assert!(braid_move(&w, 0, Relation::A, &r).is_err());
    }

    #[test]
    fn length_three_move() {
        let r = RootDatum::new(t("B3"));
        let w = ReducedWord::from_written(&[1, 2, 1]);
        let out = braid_move(&w, 0, Relation::B, &r).unwrap();
        assert_eq!(out.to_string(), "s2s1s2");
    }
}
