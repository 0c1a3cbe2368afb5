//! The datum `(s_k, Λ, L(d))` attached to a maximal parabolic `P_ℓ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lfactor::LFactorProduct;
use crate::rational::{int, serialize_q, Q};
use crate::rootsystem::{height, CartanType, RootDatum};

/// Dense table `m(h, λ)` of coroot counts by height and λ-value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    max_height: usize,
    max_lambda: usize,
    counts: Vec<u32>,
}

impl Profile {
    pub fn zeros(max_height: usize, max_lambda: usize) -> Self {
        Profile {
            max_height,
            max_lambda,
            counts: vec![0; (max_height + 1) * (max_lambda + 1)],
        }
    }

    #[inline]
    fn slot(&self, h: i64, lambda: i64) -> Option<usize> {
        if h < 0 || lambda < 0 || h as usize > self.max_height || lambda as usize > self.max_lambda {
            None
        } else {
            Some(lambda as usize * (self.max_height + 1) + h as usize)
        }
    }

    /// `m(h, λ)`, zero outside the table.
    #[inline]
    pub fn get(&self, h: i64, lambda: i64) -> u32 {
        self.slot(h, lambda).map_or(0, |k| self.counts[k])
    }

    #[inline]
    pub fn add(&mut self, h: i64, lambda: i64, by: u32) {
        let k = self.slot(h, lambda).expect("cell inside the table");
        self.counts[k] += by;
    }

    pub fn max_height(&self) -> usize {
        self.max_height
    }

    pub fn max_lambda(&self) -> usize {
        self.max_lambda
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Nonzero cells as `((h, λ), count)`, ordered by λ then h.
    pub fn cells(&self) -> BTreeMap<(i64, i64), u32> {
        let mut out = BTreeMap::new();
        for lambda in 0..=self.max_lambda as i64 {
            for h in 0..=self.max_height as i64 {
                let c = self.get(h, lambda);
                if c > 0 {
                    out.insert((h, lambda), c);
                }
            }
        }
        out
    }

    /// `max(0, m(h,λ) − m(h−1,λ))`.
    #[inline]
    pub fn left_drop(&self, h: i64, lambda: i64) -> u32 {
        self.get(h, lambda).saturating_sub(self.get(h - 1, lambda))
    }

    /// `max(0, m(h,λ) − m(h+1,λ))`.
    #[inline]
    pub fn right_drop(&self, h: i64, lambda: i64) -> u32 {
        self.get(h, lambda).saturating_sub(self.get(h + 1, lambda))
    }
}

/// One element `(s_i, λ_i)` of Λ with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LambdaEntry {
    #[serde(serialize_with = "serialize_q")]
    pub s: Q,
    pub lambda: u32,
    pub multiplicity: u32,
}

/// `L(d)`: the real parts `(s_i+1)/d − (s_k+1)` over entries with `λ_i = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub d: u32,
    /// `(real_part, imag_cosets)` with multiplicity, real parts descending.
    pub entries: Vec<(Q, u32)>,
}

impl LevelSet {
    pub fn real_parts(&self) -> Vec<Q> {
        self.entries.iter().map(|&(x, _)| x).collect()
    }
}

/// Level sets `L(d)` for each `d` that occurs, plus the sums `L_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub by_degree: BTreeMap<u32, LevelSet>,
}

impl LevelSets {
    /// Real parts of `L(d)`; empty when `d` does not occur.
    pub fn level(&self, d: u32) -> Vec<Q> {
        self.by_degree.get(&d).map(LevelSet::real_parts).unwrap_or_default()
    }

    /// `L_d = Σ_{d | λ} L(λ)` as a descending multiset of real parts.
    pub fn cumulative(&self, d: u32) -> Vec<Q> {
        let mut out: Vec<Q> = self
            .by_degree
            .iter()
            .filter(|(l, _)| *l % d == 0)
            .flat_map(|(_, s)| s.real_parts())
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// Everything attached to `(type, node)` that does not need the quotient.
#[derive(Debug, Clone)]
pub struct ParabolicDatum {
    root: Arc<RootDatum>,
    node: usize,
    levi: Vec<usize>,
    outside: Vec<usize>,
    kappa: i64,
    s_k: Q,
    lambda: Vec<LambdaEntry>,
    full_profile: Profile,
    coroot_cells: Vec<(i64, i64)>,
}

impl ParabolicDatum {
    pub fn new(root: Arc<RootDatum>, node: usize) -> Result<Self> {
        let rank = root.rank();
        if node == 0 || node > rank {
            return Err(Error::Usage(format!(
                "node {node} out of range 1..={rank} for {}",
                root.cartan()
            )));
        }
        let coroots = root.positive_coroots();
        let coroot_cells: Vec<(i64, i64)> = coroots.iter().map(|v| (height(v), v[node - 1] as i64)).collect();
        let (outside, levi): (Vec<usize>, Vec<usize>) = (0..coroots.len()).partition(|&k| coroot_cells[k].1 >= 1);

        let max_height = coroot_cells.iter().map(|c| c.0).max().unwrap_or(0) as usize + 1;
        let max_lambda = coroot_cells.iter().map(|c| c.1).max().unwrap_or(0) as usize;
        let mut full_profile = Profile::zeros(max_height, max_lambda);
        for &k in &outside {
            full_profile.add(coroot_cells[k].0, coroot_cells[k].1, 1);
        }

        let kappa = derive_kappa(&root, node);
        let h_max1 = outside
            .iter()
            .filter(|&&k| coroot_cells[k].1 == 1)
            .map(|&k| coroot_cells[k].0)
            .max()
            .unwrap_or(0);
        if kappa != h_max1 + 1 {
            return Err(Error::Internal(format!(
                "{} node {node}: κ = ⟨2ρ_P, α_ℓ^∨⟩ = {kappa} but the largest λ=1 coroot height is {h_max1}",
                root.cartan()
            )));
        }
        let s_k = Q::new(kappa, 2) - 1;

        let mut p = ParabolicDatum {
            root,
            node,
            levi,
            outside,
            kappa,
            s_k,
            lambda: Vec::new(),
            full_profile,
            coroot_cells,
        };
        p.lambda = p.derive_lambda();
        p.validate_lambda()?;
        Ok(p)
    }

    pub fn from_type(cartan: CartanType, node: usize) -> Result<Self> {
        Self::new(Arc::new(RootDatum::new(cartan)), node)
    }

    pub fn root(&self) -> &Arc<RootDatum> {
        &self.root
    }

    pub fn cartan(&self) -> CartanType {
        self.root.cartan()
    }

    pub fn node(&self) -> usize {
        self.node
    }

    /// Positive coroot indices with λ-value 0.
    pub fn levi_coroots(&self) -> &[usize] {
        &self.levi
    }

    /// Positive coroot indices with λ-value ≥ 1.
    pub fn outside_coroots(&self) -> &[usize] {
        &self.outside
    }

    /// `(height, λ)` of each positive coroot.
    pub fn coroot_cells(&self) -> &[(i64, i64)] {
        &self.coroot_cells
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn s_k(&self) -> Q {
        self.s_k
    }

    /// `s_k + 1 = κ/2`.
    pub fn s_k1(&self) -> Q {
        Q::new(self.kappa, 2)
    }

    pub fn lambda(&self) -> &[LambdaEntry] {
        &self.lambda
    }

    /// `d_0 = max λ_i`.
    pub fn d0(&self) -> u32 {
        self.lambda.iter().map(|e| e.lambda).max().unwrap_or(0)
    }

    /// `m_{w0}`: counts of all coroots outside the Levi.
    pub fn full_profile(&self) -> &Profile {
        &self.full_profile
    }

    pub fn empty_profile(&self) -> Profile {
        Profile::zeros(self.full_profile.max_height(), self.full_profile.max_lambda())
    }

    /// Profile of a set of positive coroot indices.
    pub fn profile_of<I: IntoIterator<Item = usize>>(&self, coroots: I) -> Profile {
        let mut p = self.empty_profile();
        for k in coroots {
            let (h, l) = self.coroot_cells[k];
            p.add(h, l, 1);
        }
        p
    }

    fn derive_lambda(&self) -> Vec<LambdaEntry> {
        let prof = &self.full_profile;
        let s1 = self.s_k1();
        let mut acc: BTreeMap<(u32, Q), u32> = BTreeMap::new();
        for lambda in 1..=prof.max_lambda() as i64 {
            for h in 1..=prof.max_height() as i64 {
                let e = prof.right_drop(h, lambda);
                if e > 0 {
                    let s = int(h) - int(lambda) * s1;
                    *acc.entry((lambda as u32, s)).or_insert(0) += e;
                }
            }
        }
        acc.into_iter()
            .map(|((lambda, s), multiplicity)| LambdaEntry {
                s,
                lambda,
                multiplicity,
            })
            .collect()
    }

    fn validate_lambda(&self) -> Result<()> {
        let ctx = || format!("{} node {}", self.cartan(), self.node);
        if let Some(e) = self.lambda.iter().find(|e| e.s < int(0)) {
            return Err(Error::Internal(format!("{}: Λ entry {:?} has s < 0", ctx(), e)));
        }
        let ratio = |e: &LambdaEntry| e.s / int(e.lambda as i64);
        let top: Vec<_> = self.lambda.iter().filter(|e| ratio(e) >= self.s_k).collect();
        if top.len() != 1 || top[0].s != self.s_k || top[0].lambda != 1 || top[0].multiplicity != 1 {
            return Err(Error::Internal(format!(
                "{}: s/λ is not uniquely maximal at (s_k, 1) with s_k = {}: {:?}",
                ctx(),
                self.s_k,
                top
            )));
        }
        Ok(())
    }

    pub fn level_sets(&self) -> LevelSets {
        let s1 = self.s_k1();
        let mut by_degree: BTreeMap<u32, LevelSet> = BTreeMap::new();
        for e in &self.lambda {
            let x = (e.s + 1) / int(e.lambda as i64) - s1;
            let set = by_degree.entry(e.lambda).or_insert_with(|| LevelSet {
                d: e.lambda,
                entries: Vec::new(),
            });
            for _ in 0..e.multiplicity {
                set.entries.push((x, e.lambda));
            }
        }
        for set in by_degree.values_mut() {
            set.entries.sort_by(|a, b| b.cmp(a));
        }
        LevelSets { by_degree }
    }

    /// `a_{P|P} = ∏ L(s_i + 1, χ^{λ_i})`.
    pub fn a_pp(&self) -> LFactorProduct {
        let mut p = LFactorProduct::new();
        for e in &self.lambda {
            p.insert(e.lambda, e.s + 1, e.multiplicity as i64);
        }
        p
    }

    /// `a_{P|P^op} = ∏ L(−s_i, χ^{λ_i})`.
    pub fn a_ppop(&self) -> LFactorProduct {
        let mut p = LFactorProduct::new();
        for e in &self.lambda {
            p.insert(e.lambda, -e.s, e.multiplicity as i64);
        }
        p
    }

    pub fn normalizers(&self) -> (LFactorProduct, LFactorProduct) {
        (self.a_pp(), self.a_ppop())
    }
}

/// `κ = ⟨2ρ_P, α_ℓ^∨⟩` with `2ρ_P` the sum of the positive roots having
/// ℓ-coordinate at least 1.
pub fn derive_kappa(root: &RootDatum, node: usize) -> i64 {
    let a = root.pairing();
    root.positive_roots()
        .iter()
        .filter(|b| b[node - 1] >= 1)
        .map(|b| {
            b.iter()
                .enumerate()
                .map(|(j, &bj)| bj as i64 * a[node - 1][j] as i64)
                .sum::<i64>()
        })
        .sum()
}

/// `s_k = κ/2 − 1`.
pub fn derive_s_k(root: &RootDatum, node: usize) -> Q {
    Q::new(derive_kappa(root, node), 2) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn datum(t: &str, node: usize) -> ParabolicDatum {
        ParabolicDatum::from_type(t.parse().unwrap(), node).unwrap()
    }

    fn entries(p: &ParabolicDatum) -> Vec<(Q, u32, u32)> {
        p.lambda().iter().map(|e| (e.s, e.lambda, e.multiplicity)).collect()
    }

    #[test]
    fn s_k_examples() {
        for n in 2..=8 {
            assert_eq!(datum(&format!("C{n}"), n).s_k(), q(n as i64 - 1, 2));
        }
        for n in 4..=8 {
            assert_eq!(datum(&format!("D{n}"), 1).s_k(), int(n as i64 - 2));
        }
        assert_eq!(datum("G2", 2).s_k(), q(1, 2));
        assert_eq!(datum("G2", 1).kappa(), 5);
        assert_eq!(datum("E8", 8).kappa(), 29);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(entries(&datum("G2", 1)), vec![(q(3, 2), 1, 1), (int(0), 2, 1)]);
        assert_eq!(entries(&datum("A2", 1)), vec![(q(1, 2), 1, 1)]);
        assert_eq!(entries(&datum("C2", 2)), vec![(q(1, 2), 1, 1), (int(0), 2, 1)]);
    }

    #[test]
    fn level_set_examples() {
        for n in 2..=8i64 {
            let ls = datum(&format!("B{n}"), 1).level_sets();
            assert_eq!(ls.level(1), vec![int(0)]);
            assert_eq!(ls.level(2), vec![int(1 - n)]);
        }
        let e6 = datum("E6", 2).level_sets();
        assert_eq!(e6.level(1), vec![int(0), int(-2), int(-3)]);
        assert_eq!(e6.level(2), vec![int(-5)]);
        let g2 = datum("G2", 2).level_sets();
        assert_eq!(g2.level(1), vec![int(0)]);
        assert_eq!(g2.level(2), vec![int(-1)]);
        assert_eq!(g2.level(3), vec![int(-1)]);
        assert_eq!(g2.cumulative(1), vec![int(0), int(-1), int(-1)]);
    }

    #[test]
    fn normalizer_examples() {
        let g2 = datum("G2", 1);
        assert_eq!(
            g2.a_ppop(),
            LFactorProduct::from_pairs([((1, q(-3, 2)), 1), ((2, int(0)), 1)])
        );
        let c2 = datum("C2", 2);
        assert_eq!(
            c2.a_pp(),
            LFactorProduct::from_pairs([((1, q(3, 2)), 1), ((2, int(1)), 1)])
        );
        let a1 = datum("A1", 1);
        assert_eq!(
            a1.normalizers(),
            (
                LFactorProduct::single(1, int(1), 1),
                LFactorProduct::single(1, int(0), 1)
            )
        );
    }

    #[test]
    fn bad_node() {
        assert!(ParabolicDatum::from_type("A3".parse().unwrap(), 4).is_err());
        assert!(ParabolicDatum::from_type("A3".parse().unwrap(), 0).is_err());
    }
}
