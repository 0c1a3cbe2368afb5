//! Cartan data, positive roots and positive coroots in Bourbaki numbering.
//!
//! Pairing convention: `pairing[i][j] = ⟨α_j, α_i^∨⟩`. Roots are integer vectors
//! in the simple-root basis, coroots integer vectors in the simple-coroot basis.
//! Nodes are 1-based in the public API; simple indices are 0-based.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Series letter of a simple Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, Series::A | Series::B | Series::C | Series::D)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::Usage(format!("unknown series `{other}`"))),
        }
    }
}

/// A simple Cartan type such as `E8` or `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    series: Series,
    rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::Usage(format!("invalid Cartan type {series}{rank}")))
        }
    }

    pub fn series(self) -> Series {
        self.series
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// All exceptional types: G2, F4, E6, E7, E8.
    pub fn exceptional() -> Vec<CartanType> {
        [
            (Series::G, 2),
            (Series::F, 4),
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
        ]
        .into_iter()
        .map(|(s, r)| CartanType { series: s, rank: r })
        .collect()
    }

    /// Classical types A_1..A_n, B_2..B_n, C_2..C_n, D_min..D_n up to `max_rank`.
    pub fn classical(max_rank: usize, d_min: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for series in [Series::A, Series::B, Series::C, Series::D] {
            let lo = match series {
                Series::A => 1,
                Series::D => d_min.max(3),
                _ => 2,
            };
            for rank in lo..=max_rank {
                out.push(CartanType { series, rank });
            }
        }
        out
    }

    /// |W| from the standard closed forms.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1_152,
            Series::G => 12,
        }
    }

    /// Number of positive roots from the standard closed forms.
    pub fn num_positive_roots(self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Squared root lengths, short roots normalized to 2.
    pub fn root_lengths(self) -> Vec<i64> {
        let n = self.rank;
        match self.series {
            Series::A | Series::D | Series::E => vec![2; n],
            Series::B => (0..n).map(|i| if i + 1 == n { 2 } else { 4 }).collect(),
            Series::C => (0..n).map(|i| if i + 1 == n { 4 } else { 2 }).collect(),
            Series::F => vec![4, 4, 2, 2],
            Series::G => vec![2, 6],
        }
    }

    /// Dynkin diagram edges as 0-based node pairs, Bourbaki numbering.
    ///
    /// ```text
    /// A_n  1 - 2 - ... - n          B_n  1 - ... - (n-1) => n
    /// C_n  1 - ... - (n-1) <= n     D_n  1 - ... - (n-2) < (n-1), n
    /// E_n  1 - 3 - 4 - ... - n, 2 - 4
    /// F4   1 - 2 => 3 - 4           G2   1 <≡ 2 (α1 short)
    /// ```
    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.series {
            Series::A | Series::B | Series::C | Series::F | Series::G => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Series::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Series::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix with `a[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan_matrix(self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let len = self.root_lengths();
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            // (α_i, α_j) = -max(|α_i|², |α_j|²)/2 for adjacent nodes.
            let ip = -(len[i].max(len[j])) / 2;
            a[i][j] = (2 * ip / len[i]) as i32;
            a[j][i] = (2 * ip / len[j]) as i32;
        }
        a
    }

    /// Cartan types of the connected components of the diagram with `node` removed.
    pub fn levi_components(self, node: usize) -> Vec<CartanType> {
        let n = self.rank;
        let len = self.root_lengths();
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(i, j)| i + 1 != node && j + 1 != node)
            .collect();
        let mut seen = vec![false; n];
        seen[node - 1] = true;
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for &(i, j) in &edges {
                    let w = if i == v {
                        j
                    } else if j == v {
                        i
                    } else {
                        continue;
                    };
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            let cedges: Vec<_> = edges.iter().filter(|(i, _)| comp.contains(i)).copied().collect();
            out.push(classify_component(&comp, &cedges, &len));
        }
        out.sort();
        out
    }

    /// |W_M| for the Levi of the maximal parabolic at `node`.
    pub fn levi_weyl_order(self, node: usize) -> u128 {
        self.levi_components(node)
            .into_iter()
            .map(CartanType::weyl_order)
            .product()
    }
}

fn classify_component(comp: &[usize], edges: &[(usize, usize)], len: &[i64]) -> CartanType {
    let k = comp.len();
    let mk = |s, r| CartanType { series: s, rank: r };
    if k == 1 {
        return mk(Series::A, 1);
    }
    let ratio = |(i, j): (usize, usize)| len[i].max(len[j]) / len[i].min(len[j]);
    if edges.iter().any(|&e| ratio(e) == 3) {
        return mk(Series::G, 2);
    }
    if edges.iter().any(|&e| ratio(e) == 2) {
        if k == 4 && edges.iter().filter(|&&e| ratio(e) == 1).count() == 2 {
            let double = *edges.iter().find(|&&e| ratio(e) == 2).unwrap();
            let deg = |v: usize| edges.iter().filter(|&&(i, j)| i == v || j == v).count();
            if deg(double.0) == 2 && deg(double.1) == 2 {
                return mk(Series::F, 4);
            }
        }
        // B and C have the same Weyl group; report the one matching the lengths.
        let long = comp.iter().filter(|&&v| len[v] > 2).count();
        return if long == 1 { mk(Series::C, k) } else { mk(Series::B, k) };
    }
    let deg = |v: usize| edges.iter().filter(|&&(i, j)| i == v || j == v).count();
    let Some(&branch) = comp.iter().find(|&&v| deg(v) == 3) else {
        return mk(Series::A, k);
    };
    let mut arms: Vec<usize> = Vec::new();
    for &(i, j) in edges {
        let first = if i == branch {
            j
        } else if j == branch {
            i
        } else {
            continue;
        };
        let (mut prev, mut cur, mut arm) = (branch, first, 1);
        loop {
            let next = edges.iter().find_map(|&(a, b)| {
                if a == cur && b != prev {
                    Some(b)
                } else if b == cur && a != prev {
                    Some(a)
                } else {
                    None
                }
            });
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    arm += 1;
                }
                None => break,
            }
        }
        arms.push(arm);
    }
    arms.sort();
    match arms.as_slice() {
        [1, 1, _] => mk(Series::D, k),
        _ => mk(Series::E, k),
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let series: Series = head.parse()?;
        let rank: usize = tail
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Usage(format!("invalid Cartan type `{s}`")))?;
        CartanType::new(series, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Full positive root and coroot systems of a simple type.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan: CartanType,
    pairing: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    coroots: Vec<Vec<i32>>,
    root_to_coroot: Vec<usize>,
    coroot_to_root: Vec<usize>,
    coroot_index: HashMap<Vec<i32>, usize>,
}

impl RootDatum {
    pub fn new(cartan: CartanType) -> Self {
        let pairing = cartan.cartan_matrix();
        let n = cartan.rank();
        // Roots: s_i(β) = β - ⟨β, α_i^∨⟩ α_i with ⟨β, α_i^∨⟩ = Σ_j β_j a[i][j].
        let roots = closure(n, |i, v| (0..n).map(|j| v[j] * pairing[i][j]).sum());
        // Coroots: s_i(v) = v - ⟨α_i, v⟩ α_i^∨ with ⟨α_i, v⟩ = Σ_j v_j a[j][i].
        let coroots = closure(n, |i, v| (0..n).map(|j| v[j] * pairing[j][i]).sum());

        let coroot_index: HashMap<Vec<i32>, usize> = coroots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let len = cartan.root_lengths();
        let norm = |b: &[i32]| -> i64 {
            let mut s = 0i64;
            for i in 0..n {
                for j in 0..n {
                    // (α_i, α_j) = a[i][j] |α_i|² / 2
                    s += b[i] as i64 * b[j] as i64 * pairing[i][j] as i64 * len[i] / 2;
                }
            }
            s
        };
        let root_to_coroot: Vec<usize> = roots
            .iter()
            .map(|b| {
                let nb = norm(b);
                let cv: Vec<i32> = (0..n).map(|j| (b[j] as i64 * len[j] / nb) as i32).collect();
                coroot_index[&cv]
            })
            .collect();
        let mut coroot_to_root = vec![0; roots.len()];
        for (r, &c) in root_to_coroot.iter().enumerate() {
            coroot_to_root[c] = r;
        }
        RootDatum {
            cartan,
            pairing,
            roots,
            coroots,
            root_to_coroot,
            coroot_to_root,
            coroot_index,
        }
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// `pairing()[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn pairing(&self) -> &[Vec<i32>] {
        &self.pairing
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i32>] {
        &self.coroots
    }

    pub fn coroot_of_root(&self, root: usize) -> usize {
        self.root_to_coroot[root]
    }

    pub fn root_of_coroot(&self, coroot: usize) -> usize {
        self.coroot_to_root[coroot]
    }

    /// Index of a positive coroot given by its coordinates.
    pub fn coroot_index(&self, v: &[i32]) -> Option<usize> {
        self.coroot_index.get(v).copied()
    }

    pub fn highest_root(&self) -> &[i32] {
        self.roots.last().expect("nonempty root system")
    }

    pub fn highest_coroot(&self) -> &[i32] {
        self.coroots.last().expect("nonempty root system")
    }

    /// `⟨α_i, v⟩` for a coroot vector `v`.
    pub fn pair_simple_root(&self, i: usize, v: &[i32]) -> i32 {
        v.iter().zip(&self.pairing).map(|(x, row)| x * row[i]).sum()
    }

    /// `s_i(v) = v - ⟨α_i, v⟩ α_i^∨`.
    pub fn reflect_coroot(&self, i: usize, v: &[i32]) -> Vec<i32> {
        let c = self.pair_simple_root(i, v);
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// `s_i(β) = β - ⟨β, α_i^∨⟩ α_i`.
    pub fn reflect_root(&self, i: usize, v: &[i32]) -> Vec<i32> {
        let c: i32 = v.iter().zip(&self.pairing[i]).map(|(x, a)| x * a).sum();
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }
}

fn closure(n: usize, pair: impl Fn(usize, &[i32]) -> i32) -> Vec<Vec<i32>> {
    let mut found: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut set: std::collections::HashSet<Vec<i32>> = found.iter().cloned().collect();
    let mut k = 0;
    while k < found.len() {
        let v = found[k].clone();
        for i in 0..n {
            let c = pair(i, &v);
            let mut w = v.clone();
            w[i] -= c;
            if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && set.insert(w.clone()) {
                found.push(w);
            }
        }
        k += 1;
    }
    // Height first; within a height, descending lexicographic order puts α_1 first.
    found.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
    found
}

/// Sum of coordinates.
pub fn height(v: &[i32]) -> i64 {
    v.iter().map(|&x| x as i64).sum()
}

/// Coordinate at the 1-based node `node`.
pub fn lambda_value(v: &[i32], node: usize) -> i64 {
    v[node - 1] as i64
}
