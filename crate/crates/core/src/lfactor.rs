//! Formal products of local L-factors `∏ L(λs + c, χ^λ)^e`.
//!
//! A product is a map from the key `(λ, c)` to a nonzero integer exponent. The
//! uniformizer size `q` never takes a numeric value: a factor with key `(λ, c)`
//! has its poles on the line `λs + c = 0`, translated by the lattice
//! `(2π√−1 / log q)·(1/λ)ℤ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::rational::{fmt_q, Q};

/// Key of one L-factor: `L(lambda·s + shift, χ^lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorKey {
    pub lambda: u32,
    pub shift: Q,
}

/// Canonical product of L-factors with integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LFactorProduct {
    factors: BTreeMap<FactorKey, i64>,
}

impl LFactorProduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// `L(lambda·s + shift, χ^lambda)^exponent`.
    pub fn single(lambda: u32, shift: Q, exponent: i64) -> Self {
        let mut p = Self::new();
        p.insert(lambda, shift, exponent);
        p
    }

    pub fn from_pairs<I: IntoIterator<Item = ((u32, Q), i64)>>(it: I) -> Self {
        let mut p = Self::new();
        for ((l, c), e) in it {
            p.insert(l, c, e);
        }
        p
    }

    /// Multiplies in `L(lambda·s + shift)^exponent`.
    pub fn insert(&mut self, lambda: u32, shift: Q, exponent: i64) {
        assert!(lambda > 0, "λ must be positive");
        if exponent == 0 {
            return;
        }
        let key = FactorKey { lambda, shift };
        let e = self.factors.entry(key).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.factors.remove(&key);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self, lambda: u32, shift: Q) -> i64 {
        self.factors.get(&FactorKey { lambda, shift }).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactorKey, i64)> + '_ {
        self.factors.iter().map(|(k, &e)| (*k, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.insert(k.lambda, k.shift, e);
        }
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.insert(k.lambda, k.shift, -e);
        }
        out
    }

    /// Removes `other` from `self`; the inverse of [`LFactorProduct::mul`].
    pub fn cancel(&self, other: &Self) -> Self {
        self.div(other)
    }

    pub fn inverse(&self) -> Self {
        LFactorProduct {
            factors: self.factors.iter().map(|(k, &e)| (*k, -e)).collect(),
        }
    }

    /// True when no factor sits in a denominator.
    pub fn is_product_of_l(&self) -> bool {
        self.factors.values().all(|&e| e >= 0)
    }

    /// Sum of the positive exponents.
    pub fn positive_degree(&self) -> i64 {
        self.factors.values().filter(|&&e| e > 0).sum()
    }

    /// Factors that survive for a character of exact order `order`: `χ^λ` is
    /// unramified only when `order | λ`.
    pub fn specialize(&self, order: u32) -> Self {
        assert!(order > 0, "character order must be positive");
        LFactorProduct {
            factors: self
                .factors
                .iter()
                .filter(|(k, _)| k.lambda % order == 0)
                .map(|(k, &e)| (*k, e))
                .collect(),
        }
    }

    /// Real parts of poles with their maximal net order, for a character of
    /// order `order`.
    ///
    /// At real part `x`, the factor `(λ, c)` with `λx + c = 0` has poles at
    /// `x + (2π√−1/log q)·t` for `t ∈ (1/λ)ℤ`. A point with `t = k/m` in lowest
    /// terms meets exactly the factors with `m | λ`, so the maximal order is the
    /// maximum over divisors `m` of the lcm of the λ-values present.
    pub fn pole_locus(&self, order: u32) -> PoleLocus {
        let p = self.specialize(order);
        let mut by_x: BTreeMap<Q, Vec<(u32, i64)>> = BTreeMap::new();
        for (k, e) in p.iter() {
            let x = -k.shift / Q::from_integer(k.lambda as i64);
            by_x.entry(x).or_default().push((k.lambda, e));
        }
        let mut entries = Vec::new();
        for (x, keys) in by_x {
            if !keys.iter().any(|&(_, e)| e > 0) {
                continue;
            }
            let l = keys.iter().fold(1u32, |acc, &(lam, _)| acc.lcm(&lam));
            let best = (1..=l)
                .filter(|m| l % m == 0)
                .map(|m| {
                    keys.iter()
                        .filter(|&&(lam, _)| lam % m == 0)
                        .map(|&(_, e)| e)
                        .sum::<i64>()
                })
                .max()
                .unwrap_or(0);
            if best > 0 {
                entries.push(PoleEntry {
                    real_part: x,
                    character_order: order,
                    max_order: best as u32,
                });
            }
        }
        PoleLocus { entries }
    }
}

impl Mul for &LFactorProduct {
    type Output = LFactorProduct;
    fn mul(self, rhs: Self) -> LFactorProduct {
        LFactorProduct::mul(self, rhs)
    }
}

impl Div for &LFactorProduct {
    type Output = LFactorProduct;
    fn div(self, rhs: Self) -> LFactorProduct {
        LFactorProduct::div(self, rhs)
    }
}

impl fmt::Display for FactorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.lambda == 1 {
            "s".to_string()
        } else {
            format!("{}s", self.lambda)
        };
        let chi = if self.lambda == 1 {
            "χ".to_string()
        } else {
            format!("χ^{}", self.lambda)
        };
        if self.shift.is_zero() {
            write!(f, "L({var}, {chi})")
        } else if self.shift.is_negative() {
            write!(f, "L({var} - {}, {chi})", -self.shift)
        } else {
            write!(f, "L({var} + {}, {chi})", self.shift)
        }
    }
}

impl fmt::Display for LFactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(k, &e)| if e == 1 { k.to_string() } else { format!("{k}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

impl Serialize for LFactorProduct {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            exponent: i64,
            lambda: u32,
            shift: String,
        }
        s.collect_seq(self.factors.iter().map(|(k, &e)| Entry {
            exponent: e,
            lambda: k.lambda,
            shift: fmt_q(&k.shift),
        }))
    }
}

/// One pole real part with the character order and maximal net order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoleEntry {
    pub real_part: Q,
    pub character_order: u32,
    pub max_order: u32,
}

impl Serialize for PoleEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PoleEntry", 3)?;
        st.serialize_field("character_order", &self.character_order)?;
        st.serialize_field("max_order", &self.max_order)?;
        st.serialize_field("real_part", &fmt_q(&self.real_part))?;
        st.end()
    }
}

/// Pole real parts of a product, each modulo its imaginary lattice translates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PoleLocus {
    pub entries: Vec<PoleEntry>,
}

impl PoleLocus {
    pub const PERIODICITY: &'static str = "modulo 2π√−1/log q lattice translates";
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn group_laws() {
        let p = LFactorProduct::from_pairs([((1, q(-3, 2)), 1), ((2, int(0)), 1)]);
        assert!(p.mul(&p.inverse()).is_empty());
        let a = LFactorProduct::single(1, q(-3, 2), 1);
        let b = LFactorProduct::single(2, int(0), 1);
        assert_eq!(a.mul(&b), p);
    }

    #[test]
    fn product_of_l() {
        assert!(LFactorProduct::new().is_product_of_l());
        assert!(!LFactorProduct::single(1, int(0), -1).is_product_of_l());
    }

    #[test]
    fn specialize_examples() {
        let p = LFactorProduct::from_pairs([((1, q(-3, 2)), 1), ((2, int(0)), 1)]);
        assert_eq!(p.specialize(1), p);
        assert_eq!(p.specialize(2), LFactorProduct::single(2, int(0), 1));
        assert!(p.specialize(5).is_empty());
    }

    #[test]
    fn pole_locus_examples() {
        let zeta = LFactorProduct::single(1, int(0), 1);
        assert_eq!(
            zeta.pole_locus(1).entries,
            vec![PoleEntry {
                real_part: int(0),
                character_order: 1,
                max_order: 1
            }]
        );
        let two = LFactorProduct::from_pairs([((1, int(0)), 1), ((2, int(0)), 1)]);
        assert_eq!(two.pole_locus(1).entries[0].max_order, 2);
        let mixed = LFactorProduct::from_pairs([((1, int(0)), 1), ((2, int(1)), -1)]);
        assert_eq!(
            mixed.pole_locus(1).entries,
            vec![PoleEntry {
                real_part: int(0),
                character_order: 1,
                max_order: 1
            }]
        );
        assert!(LFactorProduct::new().pole_locus(1).entries.is_empty());
    }

    #[test]
    fn sublattice_patterns() {
        // L(s)^-1 L(2s): at t = 1/2 only the λ=2 factor has a pole.
        let p = LFactorProduct::from_pairs([((1, int(0)), -1), ((2, int(0)), 1)]);
        assert_eq!(p.pole_locus(1).entries[0].max_order, 1);
        // L(s) L(2s)^-1 L(3s): t=0 gives 1, t=1/3 gives 1, t=1/2 gives -1.
        let p = LFactorProduct::from_pairs([((1, int(0)), 1), ((2, int(0)), -1), ((3, int(0)), 1)]);
        assert_eq!(p.pole_locus(1).entries[0].max_order, 1);
    }

    #[test]
    fn display() {
        let p = LFactorProduct::from_pairs([((1, q(-3, 2)), 1), ((2, int(0)), -1)]);
        assert_eq!(p.to_string(), "L(s - 3/2, χ) · L(2s, χ^2)^-1");
        assert_eq!(LFactorProduct::new().to_string(), "1");
    }
}
