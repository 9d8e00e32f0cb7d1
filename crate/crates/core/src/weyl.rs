//! Weyl groups acting on the positive roots.
//!
//! An element is stored as the images of the positive roots, each image an
//! index into `0..2N`: index `k < N` is the `k`-th positive root and `k + N`
//! its negative. Lengths are inversion counts.

use std::ops::Range;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::rootdata::{NodeSet, RootSystem};

/// Default bound on the number of group elements materialized at once.
pub const DEFAULT_CAP: u128 = 1_200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    images: Box<[u16]>,
    length: u16,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

/// Render a word of node indices as `"e"` or `"321"` (1-based labels).
pub fn word_name(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let sep = if word.iter().any(|&i| i >= 9) { "." } else { "" };
    word.iter()
        .map(|&i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// `w = w' w''` with `w'` minimal in `w W_I` and `w''` in `W_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicFactorization {
    pub subset: NodeSet,
    pub min_rep: WeylElement,
    pub parabolic: WeylElement,
}

/// The Weyl group of a root system.
#[derive(Clone, Debug)]
pub struct Weyl {
    rs: RootSystem,
    npos: usize,
    simple_action: Vec<Vec<u16>>,
    reflections: Vec<WeylElement>,
    cap: u128,
}

impl Weyl {
    pub fn new(rs: RootSystem) -> Weyl {
        let n = rs.rank();
        let npos = rs.num_positive();
        let lookup = |coords: &[i32]| -> u16 {
            if let Some(k) = rs.root_index(coords) {
                return k as u16;
            }
            let neg: Vec<i32> = coords.iter().map(|c| -c).collect();
            (rs.root_index(&neg).expect("image of a root is a root") + npos) as u16
        };
        let reflect = |g: usize, beta: &[i32]| -> Vec<i32> {
            let k = rs.pair_root_coroot(beta, rs.coroot(g));
            beta.iter().zip(rs.root(g)).map(|(b, a)| b - k * a).collect()
        };
        let simple_action: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                (0..2 * npos)
                    .map(|idx| {
                        let k = idx % npos;
                        let img = lookup(&reflect(i, rs.root(k)));
                        if idx < npos {
                            img
                        } else {
                            ((img as usize + npos) % (2 * npos)) as u16
                        }
                    })
                    .collect()
            })
            .collect();
        let reflections = (0..npos)
            .map(|g| {
                let images: Box<[u16]> = (0..npos).map(|k| lookup(&reflect(g, rs.root(k)))).collect();
                make(images, npos)
            })
            .collect();
        Weyl {
            rs,
            npos,
            simple_action,
            reflections,
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u128) -> Weyl {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    #[inline]
    fn apply_idx(&self, w: &WeylElement, idx: u16) -> u16 {
        let n = self.npos as u16;
        if idx < n {
            w.images[idx as usize]
        } else {
            let img = w.images[(idx - n) as usize];
            if img < n {
                img + n
            } else {
                img - n
            }
        }
    }

    /// Image of the root with signed index `idx` (see module docs).
    pub fn act(&self, w: &WeylElement, idx: usize) -> usize {
        self.apply_idx(w, idx as u16) as usize
    }

    pub fn identity(&self) -> WeylElement {
        make((0..self.npos as u16).collect(), self.npos)
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        self.reflections[i].clone()
    }

    /// The reflection `t_gamma` for the `g`-th positive root.
    pub fn reflection(&self, g: usize) -> &WeylElement {
        &self.reflections[g]
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let images = b.images.iter().map(|&x| self.apply_idx(a, x)).collect();
        make(images, self.npos)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let n = self.npos as u16;
        let mut images = vec![0u16; self.npos];
        for (k, &img) in w.images.iter().enumerate() {
            if img < n {
                images[img as usize] = k as u16;
            } else {
                images[(img - n) as usize] = k as u16 + n;
            }
        }
        make(images.into_boxed_slice(), self.npos)
    }

    /// `s_{i1} s_{i2} ...` for node indices.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(self.identity(), |acc, &i| self.mul_simple_right(&acc, i))
    }

    pub fn mul_simple_right(&self, w: &WeylElement, i: usize) -> WeylElement {
        let images = self.simple_action[i][..self.npos]
            .iter()
            .map(|&x| self.apply_idx(w, x))
            .collect();
        make(images, self.npos)
    }

    pub fn mul_simple_left(&self, i: usize, w: &WeylElement) -> WeylElement {
        let act = &self.simple_action[i];
        let images = w.images.iter().map(|&x| act[x as usize]).collect();
        make(images, self.npos)
    }

    /// `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.images[i] as usize >= self.npos
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        let n = self.npos as u16;
        let target = i as u16;
        w.images
            .iter()
            .find(|&&img| img == target || img == target + n)
            .is_some_and(|&img| img >= n)
    }

    /// Lexicographically largest reduced word, as node indices.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<u8> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while cur.length > 0 {
            let i = (0..self.rank())
                .rev()
                .find(|&i| self.is_left_descent(&cur, i))
                .expect("nontrivial element has a descent");
            word.push(i as u8);
            cur = self.mul_simple_left(i, &cur);
        }
        word
    }

    pub fn name(&self, w: &WeylElement) -> String {
        word_name(&self.reduced_word(w))
    }

    /// Bruhat order `v <= w`.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let mut v = v.clone();
        let mut w = w.clone();
        loop {
            if v.length > w.length {
                return false;
            }
            if w.length == 0 {
                return v.length == 0;
            }
            if v.length == 0 {
                return true;
            }
            let i = (0..self.rank())
                .find(|&i| self.is_right_descent(&w, i))
                .unwrap();
            // v <= w  iff  min(v, v s_i) <= w s_i
            if self.is_right_descent(&v, i) {
                v = self.mul_simple_right(&v, i);
            }
            w = self.mul_simple_right(&w, i);
        }
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_in(&self, j: NodeSet) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = j.iter().find(|&i| !self.is_right_descent(&w, i)) {
            w = self.mul_simple_right(&w, i);
        }
        w
    }

    pub fn longest(&self) -> WeylElement {
        self.longest_in(NodeSet::full(self.rank()))
    }

    /// `w = w' w''` with `w' in W^I`, `w'' in W_I`.
    pub fn parabolic_decompose(&self, w: &WeylElement, i: NodeSet) -> ParabolicFactorization {
        let mut min_rep = w.clone();
        while let Some(s) = i.iter().find(|&s| self.is_right_descent(&min_rep, s)) {
            min_rep = self.mul_simple_right(&min_rep, s);
        }
        let parabolic = self.mul(&self.inverse(&min_rep), w);
        ParabolicFactorization {
            subset: i,
            min_rep,
            parabolic,
        }
    }

    /// True when `w` is the minimal representative of `w W_I`.
    pub fn is_min_rep(&self, w: &WeylElement, i: NodeSet) -> bool {
        i.iter().all(|s| !self.is_right_descent(w, s))
    }

    /// True when `w` lies in `W_J`.
    pub fn in_subgroup(&self, w: &WeylElement, j: NodeSet) -> bool {
        self.parabolic_decompose(w, j).min_rep.is_identity()
    }

    /// The chain `S = I_0 > I_1 > ... > I_n = {}` removing `ordering[j-1]` at step `j`.
    pub fn chain(&self, ordering: &[usize]) -> Vec<NodeSet> {
        let mut sets = vec![NodeSet::full(self.rank())];
        for &s in ordering {
            let last = *sets.last().unwrap();
            sets.push(last.without(s));
        }
        sets
    }

    /// Components `(w^(1), ..., w^(n))` with `w^(j)` in `W_{I_{j-1}}^{I_j}`.
    pub fn iterated_decompose(&self, w: &WeylElement, ordering: &[usize]) -> Result<Vec<WeylElement>> {
        check_ordering(ordering, self.rank())?;
        let chain = self.chain(ordering);
        let mut out = Vec::with_capacity(ordering.len());
        let mut rest = w.clone();
        for set in &chain[1..] {
            let f = self.parabolic_decompose(&rest, *set);
            out.push(f.min_rep);
            rest = f.parabolic;
        }
        debug_assert!(rest.is_identity());
        Ok(out)
    }

    /// Minimal representatives of `W_J / W_I` for `I` inside `J`, sorted by
    /// length and then by reduced word.
    ///
    /// They are found as the `W_J`-orbit of a dominant weight whose stabilizer
    /// in `W_J` is exactly `W_I`.
    pub fn coset_reps_in(&self, j: NodeSet, i: NodeSet) -> Result<ElementSet> {
        if !i.is_subset(&j) {
            return Err(Error::Precondition(format!("{i} is not contained in {j}")));
        }
        let rank = self.rank();
        if j == NodeSet::full(rank) && i.is_empty() && self.rs.family().is_some() {
            let order = self.rs.group_order();
            if order > self.cap {
                return Err(Error::CapExceeded {
                    what: format!("the Weyl group of {}", self.rs.name()),
                    size: order,
                    cap: self.cap,
                });
            }
        }
        let cartan = self.rs.cartan();
        let lambda: Vec<i32> = (0..rank).map(|s| (j.contains(s) && !i.contains(s)) as i32).collect();
        let reflect = |mu: &[i32], s: usize| -> Vec<i32> {
            let c = mu[s];
            (0..rank).map(|k| mu[k] - c * cartan[k][s]).collect()
        };

        let mut elements = vec![self.identity()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut level_start = vec![0usize, 1];
        let mut prev: FxHashMap<Vec<i32>, usize> = FxHashMap::default();
        prev.insert(lambda.clone(), 0);
        let mut prev_weights = vec![lambda];
        loop {
            let start = level_start[level_start.len() - 2];
            let end = level_start[level_start.len() - 1];
            let mut next: FxHashMap<Vec<i32>, usize> = FxHashMap::default();
            let mut found: Vec<(Vec<i32>, usize, usize)> = Vec::new();
            for (off, mu) in prev_weights.iter().enumerate() {
                for s in j.iter() {
                    if mu[s] <= 0 {
                        continue;
                    }
                    let nu = reflect(mu, s);
                    if next.contains_key(&nu) {
                        continue;
                    }
                    next.insert(nu.clone(), found.len());
                    found.push((nu, start + off, s));
                }
            }
            if found.is_empty() {
                break;
            }
            if (elements.len() + found.len()) as u128 > self.cap {
                return Err(Error::CapExceeded {
                    what: format!("the coset set W_{j}/W_{i} of {}", self.rs.name()),
                    size: (elements.len() + found.len()) as u128,
                    cap: self.cap,
                });
            }
            let mut level: Vec<(Vec<u8>, WeylElement, Vec<i32>)> = found
                .into_iter()
                .map(|(nu, parent, s)| {
                    let elem = self.mul_simple_left(s, &elements[parent]);
                    // the largest left descent starts the lex-largest reduced word
                    let top = j.iter().filter(|&t| nu[t] < 0).max().unwrap();
                    let lower = reflect(&nu, top);
                    let below = start + prev[&lower];
                    let mut word = Vec::with_capacity(words[below].len() + 1);
                    word.push(top as u8);
                    word.extend_from_slice(&words[below]);
                    (word, elem, nu)
                })
                .collect();
            level.sort_by(|a, b| a.0.cmp(&b.0));
            prev = FxHashMap::default();
            prev_weights = Vec::with_capacity(level.len());
            for (off, (word, elem, nu)) in level.into_iter().enumerate() {
                prev.insert(nu.clone(), off);
                prev_weights.push(nu);
                words.push(word);
                elements.push(elem);
            }
            let _ = end;
            level_start.push(elements.len());
        }
        Ok(ElementSet::new(elements, words, level_start))
    }

    /// `W^I`.
    pub fn coset_reps(&self, i: NodeSet) -> Result<ElementSet> {
        self.coset_reps_in(NodeSet::full(self.rank()), i)
    }

    /// All of `W`.
    pub fn enumerate(&self) -> Result<ElementSet> {
        self.coset_reps(NodeSet::EMPTY)
    }

    /// The subgroup `W_J`.
    pub fn subgroup(&self, j: NodeSet) -> Result<ElementSet> {
        self.coset_reps_in(j, NodeSet::EMPTY)
    }
}

pub(crate) fn check_ordering(ordering: &[usize], rank: usize) -> Result<()> {
    let mut seen = vec![false; rank];
    if ordering.len() != rank {
        return Err(Error::Precondition(format!(
            "ordering must list all {rank} nodes exactly once"
        )));
    }
    for &s in ordering {
        if s >= rank || seen[s] {
            return Err(Error::Precondition(format!(
                "ordering must list all {rank} nodes exactly once"
            )));
        }
        seen[s] = true;
    }
    Ok(())
}

fn make(images: Box<[u16]>, npos: usize) -> WeylElement {
    let length = images.iter().filter(|&&x| x as usize >= npos).count() as u16;
    WeylElement { images, length }
}

/// An ordered set of group elements graded by length.
#[derive(Clone, Debug)]
pub struct ElementSet {
    elements: Vec<WeylElement>,
    words: Vec<Vec<u8>>,
    index: FxHashMap<Box<[u16]>, u32>,
    level_start: Vec<usize>,
}

impl ElementSet {
    fn new(elements: Vec<WeylElement>, words: Vec<Vec<u8>>, level_start: Vec<usize>) -> ElementSet {
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.images.clone(), k as u32))
            .collect();
        ElementSet {
            elements,
            words,
            index,
            level_start,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.images).map(|&k| k as usize)
    }

    pub fn word(&self, k: usize) -> &[u8] {
        &self.words[k]
    }

    pub fn name(&self, k: usize) -> String {
        word_name(&self.words[k])
    }

    /// Largest length occurring.
    pub fn max_length(&self) -> usize {
        self.level_start.len() - 2
    }

    /// Index range of the elements of length `l` (empty when out of range).
    pub fn level(&self, l: usize) -> Range<usize> {
        if l + 1 < self.level_start.len() {
            self.level_start[l]..self.level_start[l + 1]
        } else {
            0..0
        }
    }
}
