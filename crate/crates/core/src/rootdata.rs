//! Root systems from Cartan data, in the node labeling used throughout the crate.
//!
//! Nodes are indexed `0..rank` internally and printed `1..=rank`. Classical
//! types use the usual chain labeling (node `n` carries the double bond in
//! `B_n`/`C_n`, nodes `n-1`, `n` are the fork in `D_n`). For the exceptional
//! types node 1 is the end node whose maximal parabolic is studied in the
//! bad-prime table; [`RootSystem::bourbaki_label`] gives the dictionary.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            other => {
                return Err(Error::InvalidType {
                    family: other.to_string(),
                    rank: 0,
                })
            }
        })
    }
}

/// Parse a type such as `"B3"` or `"e8"`.
pub fn parse_type(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let rank: usize = tail.parse().map_err(|_| Error::Parse(format!("bad Cartan type {s:?}")))?;
    let family: Family = head.parse().map_err(|_| Error::InvalidType {
        family: head.to_string(),
        rank,
    })?;
    Ok((family, rank))
}

/// A subset of the simple reflections, as a bitmask over node indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn full(rank: usize) -> NodeSet {
        NodeSet(((1u32 << rank) - 1) as u16)
    }

    pub fn single(i: usize) -> NodeSet {
        NodeSet(1 << i)
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(it: I) -> NodeSet {
        NodeSet(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(&self, i: usize) -> NodeSet {
        NodeSet(self.0 | (1 << i))
    }

    pub fn without(&self, i: usize) -> NodeSet {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..16).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight<R> {
    pub coords: Vec<R>,
}

impl<R: Ring> Weight<R> {
    pub fn new(coords: Vec<R>) -> Self {
        Weight { coords }
    }

    /// The fundamental weight of node `s`.
    pub fn fundamental(rank: usize, s: usize) -> Self {
        Weight {
            coords: (0..rank).map(|i| if i == s { R::one() } else { R::zero() }).collect(),
        }
    }

    /// The sum of all fundamental weights.
    pub fn rho(rank: usize) -> Self {
        Weight {
            coords: vec![R::one(); rank],
        }
    }

    /// `<self, c>` for a coroot-lattice vector `c` in simple-coroot coordinates.
    pub fn pair(&self, c: &[i32]) -> R {
        self.coords
            .iter()
            .zip(c)
            .filter(|(_, &k)| k != 0)
            .fold(R::zero(), |acc, (x, &k)| acc + x.scale(k as i64))
    }
}

/// Apply the degeneration map for the subset `i` to a coroot-lattice vector.
///
/// A vector supported inside `i` is returned unchanged; any other vector has
/// its `i`-coordinates set to zero.
pub fn degeneration_map(coroot: &[i32], i: NodeSet) -> Vec<i32> {
    let inside = coroot
        .iter()
        .enumerate()
        .all(|(s, &c)| c == 0 || i.contains(s));
    if inside {
        coroot.to_vec()
    } else {
        coroot
            .iter()
            .enumerate()
            .map(|(s, &c)| if i.contains(s) { 0 } else { c })
            .collect()
    }
}

/// Support of a lattice vector.
pub fn support(v: &[i32]) -> NodeSet {
    NodeSet::from_nodes(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
}

/// Render `[1,0,2]` as `a1+2a3`.
pub fn format_coroot(v: &[i32]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match c {
            1 => format!("a{}", i + 1),
            -1 => format!("-a{}", i + 1),
            _ => format!("{c}a{}", i + 1),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+").replace("+-", "-")
    }
}

/// Inverse of [`format_coroot`].
pub fn parse_coroot(s: &str, rank: usize) -> Result<Vec<i32>> {
    let mut v = vec![0i32; rank];
    let s = s.trim();
    if s == "0" {
        return Ok(v);
    }
    let bad = || Error::Parse(format!("coroot label {s:?}"));
    let normalized = s.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let pos = term.find('a').ok_or_else(bad)?;
        let coeff = match &term[..pos] {
            "" => 1,
            "-" => -1,
            c => c.parse::<i32>().map_err(|_| bad())?,
        };
        let idx: usize = term[pos + 1..].parse().map_err(|_| bad())?;
        if idx == 0 || idx > rank {
            return Err(bad());
        }
        v[idx - 1] += coeff;
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Option<Family>,
    rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    coroots: Vec<Vec<i32>>,
    heights: Vec<u32>,
    index: FxHashMap<Vec<i32>, usize>,
    bourbaki: Vec<usize>,
}

/// Serializable summary of a root system.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemDoc {
    pub family: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i32>>,
    pub positive_coroots: Vec<Vec<i32>>,
    pub heights: Vec<u32>,
    pub exponents: Vec<u32>,
    pub bourbaki_labels: Vec<usize>,
}

fn chain(n: usize) -> Vec<Vec<i32>> {
    let mut a = vec![vec![0i32; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

/// Bourbaki Cartan matrix for an exceptional type (nodes 1-based in comments).
fn bourbaki_exceptional(family: Family, rank: usize) -> Vec<Vec<i32>> {
    match family {
        Family::E => {
            // 1-3-4-5-6(-7-8), with 2 attached to 4
            let mut a = vec![vec![0i32; rank]; rank];
            let mut link = |x: usize, y: usize| {
                a[x - 1][y - 1] = -1;
                a[y - 1][x - 1] = -1;
            };
            link(1, 3);
            link(2, 4);
            for k in 3..rank {
                link(k, k + 1);
            }
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            a
        }
        Family::F => {
            // 1-2=>3-4 with 1,2 long
            let mut a = chain(4);
            a[2][1] = -2;
            a
        }
        Family::G => {
            // 1 short, 2 long
            vec![vec![2, -3], vec![-1, 2]]
        }
        _ => unreachable!(),
    }
}

/// `perm[node] = Bourbaki label (1-based)` for the exceptional types.
fn exceptional_labels(family: Family, rank: usize) -> Vec<usize> {
    match (family, rank) {
        (Family::E, 6) => vec![1, 6, 5, 3, 4, 2],
        (Family::E, 7) => vec![7, 6, 1, 3, 2, 4, 5],
        (Family::E, 8) => vec![8, 7, 6, 1, 3, 2, 4, 5],
        (Family::F, 4) => vec![4, 3, 2, 1],
        (Family::G, 2) => vec![1, 2],
        _ => unreachable!(),
    }
}

impl RootSystem {
    /// The irreducible root system of the given type.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let valid = match family {
            Family::A => (1..=8).contains(&rank),
            Family::B | Family::C => (2..=8).contains(&rank),
            Family::D => (3..=8).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !valid {
            return Err(Error::InvalidType {
                family: family.to_string(),
                rank,
            });
        }
        let n = rank;
        let (cartan, bourbaki) = match family {
            Family::A => (chain(n), (1..=n).collect()),
            Family::B => {
                let mut a = chain(n);
                a[n - 1][n - 2] = -2;
                (a, (1..=n).collect())
            }
            Family::C => {
                let mut a = chain(n);
                a[n - 2][n - 1] = -2;
                (a, (1..=n).collect())
            }
            Family::D => {
                let mut a = chain(n);
                // fork: n-1 and n both attached to n-2 (1-based)
                a[n - 2][n - 1] = 0;
                a[n - 1][n - 2] = 0;
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
                (a, (1..=n).collect())
            }
            Family::E | Family::F | Family::G => {
                let b = bourbaki_exceptional(family, n);
                let perm = exceptional_labels(family, n);
                let a = (0..n)
                    .map(|i| (0..n).map(|j| b[perm[i] - 1][perm[j] - 1]).collect())
                    .collect();
                (a, perm)
            }
        };
        let mut rs = RootSystem::from_cartan(cartan)?;
        rs.family = Some(family);
        rs.bourbaki = bourbaki;
        Ok(rs)
    }

    /// Root system (possibly reducible) of an arbitrary Cartan matrix.
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> Result<RootSystem> {
        let n = cartan.len();
        if n == 0 || n > 8 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("Cartan matrix must be square of size 1..=8".into()));
        }
        let unit = |i: usize| -> Vec<i32> { (0..n).map(|j| (i == j) as i32).collect() };
        let mut roots: Vec<Vec<i32>> = (0..n).map(unit).collect();
        let mut coroots: Vec<Vec<i32>> = (0..n).map(unit).collect();
        let mut index: FxHashMap<Vec<i32>, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut head = 0;
        while head < roots.len() {
            for j in 0..n {
                // s_j(beta) = beta - <beta, alpha_j^vee> alpha_j
                let pb: i32 = (0..n).map(|k| roots[head][k] * cartan[j][k]).sum();
                if pb == 0 {
                    continue;
                }
                let mut r = roots[head].clone();
                r[j] -= pb;
                if r.iter().any(|&c| c < 0) || index.contains_key(&r) {
                    continue;
                }
                // s_j(gamma^vee) = gamma^vee - <alpha_j, gamma^vee> alpha_j^vee
                let pc: i32 = (0..n).map(|k| coroots[head][k] * cartan[k][j]).sum();
                let mut c = coroots[head].clone();
                c[j] -= pc;
                if roots.len() > 200 {
                    return Err(Error::Precondition("Cartan matrix is not of finite type".into()));
                }
                index.insert(r.clone(), roots.len());
                roots.push(r);
                coroots.push(c);
            }
            head += 1;
        }
        let mut order: Vec<usize> = (0..roots.len()).collect();
        let height = |r: &Vec<i32>| r.iter().sum::<i32>();
        order.sort_by(|&a, &b| {
            height(&roots[a])
                .cmp(&height(&roots[b]))
                .then_with(|| roots[b].cmp(&roots[a]))
        });
        let roots: Vec<Vec<i32>> = order.iter().map(|&i| roots[i].clone()).collect();
        let coroots: Vec<Vec<i32>> = order.iter().map(|&i| coroots[i].clone()).collect();
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let heights = roots.iter().map(|r| r.iter().sum::<i32>() as u32).collect();
        Ok(RootSystem {
            family: None,
            rank: n,
            cartan,
            roots,
            coroots,
            heights,
            index,
            bourbaki: (1..=n).collect(),
        })
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Type name such as `B3`, or `sub` for a system built from a bare Cartan matrix.
    pub fn name(&self) -> String {
        match self.family {
            Some(f) => format!("{f}{}", self.rank),
            None => format!("sub{}", self.rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i32] {
        &self.roots[i]
    }

    /// Coroot of the `i`-th positive root in simple-coroot coordinates.
    pub fn coroot(&self, i: usize) -> &[i32] {
        &self.coroots[i]
    }

    pub fn coroots(&self) -> &[Vec<i32>] {
        &self.coroots
    }

    /// Index of a positive root given by its coordinates.
    pub fn root_index(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Height of the `i`-th positive root.
    pub fn height(&self, i: usize) -> u32 {
        self.heights[i]
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// Index of the unique root of maximal height (irreducible systems).
    pub fn highest_root(&self) -> usize {
        self.roots.len() - 1
    }

    /// Bourbaki number (1-based) of node `i`.
    pub fn bourbaki_label(&self, i: usize) -> usize {
        self.bourbaki[i]
    }

    /// `<root, coroot>` for root and coroot in simple coordinates.
    pub fn pair_root_coroot(&self, root: &[i32], coroot: &[i32]) -> i32 {
        let mut s = 0;
        for i in 0..self.rank {
            if coroot[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += coroot[i] * root[j] * self.cartan[i][j];
            }
        }
        s
    }

    /// `k_j`: number of positive roots of height `j`, for `j = 1, 2, ...`.
    pub fn height_counts(&self) -> Vec<u32> {
        let max = *self.heights.iter().max().unwrap_or(&0) as usize;
        let mut k = vec![0u32; max];
        for &h in &self.heights {
            k[h as usize - 1] += 1;
        }
        k
    }

    /// Exponents, as the dual partition of the height counts (descending).
    pub fn exponents(&self) -> Vec<u32> {
        let k = self.height_counts();
        let m1 = k.first().copied().unwrap_or(0);
        (1..=m1)
            .map(|i| k.iter().filter(|&&kj| kj >= i).count() as u32)
            .collect()
    }

    /// `prod ht(alpha)` over positive roots.
    pub fn height_product(&self) -> BigInt {
        self.heights.iter().fold(BigInt::one(), |acc, &h| acc * h)
    }

    /// `|Phi+|! / prod ht(alpha)`.
    pub fn stembridge_multinomial(&self) -> BigInt {
        let fact = factorial(self.num_positive() as u32);
        let hp = self.height_product();
        assert!((&fact % &hp).is_zero());
        fact / hp
    }

    /// `|W|` computed as the product of (exponent + 1).
    pub fn group_order(&self) -> u128 {
        self.exponents().iter().map(|&m| m as u128 + 1).product()
    }

    /// Indices of the positive roots lying in the subsystem spanned by `nodes`.
    pub fn roots_in(&self, nodes: NodeSet) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| support(&self.roots[i]).is_subset(&nodes))
            .collect()
    }

    /// The simple root `alpha_j` in the fundamental-weight basis.
    pub fn simple_root_weight(&self, j: usize) -> Vec<i32> {
        (0..self.rank).map(|i| self.cartan[i][j]).collect()
    }

    pub fn to_doc(&self) -> RootSystemDoc {
        RootSystemDoc {
            family: self.family.map_or_else(|| "sub".to_string(), |f| f.to_string()),
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            positive_roots: self.roots.clone(),
            positive_coroots: self.coroots.clone(),
            heights: self.heights.clone(),
            exponents: self.exponents(),
            bourbaki_labels: self.bourbaki.clone(),
        }
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(total), |acc, &m| acc / factorial(m))
}

/// All irreducible types of rank at most `max_rank`.
pub fn all_types(max_rank: usize) -> Vec<(Family, usize)> {
    let mut v = Vec::new();
    for n in 1..=max_rank {
        v.push((Family::A, n));
        if n >= 2 {
            v.push((Family::B, n));
        }
        if n >= 3 {
            v.push((Family::C, n));
            v.push((Family::D, n));
        }
        if n == 2 {
            v.push((Family::G, 2));
        }
        if n == 4 {
            v.push((Family::F, 4));
        }
        if (6..=8).contains(&n) {
            v.push((Family::E, n));
        }
    }
    v
}
