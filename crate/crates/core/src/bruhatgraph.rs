//! Bruhat graphs, parabolic Bruhat graphs and their degenerations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{degeneration_map, format_coroot, parse_coroot, support, NodeSet};
use crate::weyl::{check_ordering, ElementSet, Weyl, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub source: u32,
    pub target: u32,
    /// Coroot-lattice vector in simple-coroot coordinates.
    pub label: Box<[i32]>,
}

/// A directed graph graded by length whose edges raise length by one.
///
/// Vertices are sorted by length; `names` holds reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    rank: usize,
    names: Vec<String>,
    lengths: Vec<u16>,
    level_start: Vec<usize>,
    edges: Vec<Edge>,
    out_start: Vec<usize>,
}

impl LabeledGraph {
    /// Vertices must be sorted by length; edges may come in any order.
    pub fn new(rank: usize, names: Vec<String>, lengths: Vec<u16>, mut edges: Vec<Edge>) -> Result<LabeledGraph> {
        if names.len() != lengths.len() {
            return Err(Error::Precondition("one length per vertex".into()));
        }
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("vertices must be sorted by length".into()));
        }
        for e in &edges {
            let (s, t) = (e.source as usize, e.target as usize);
            if s >= names.len() || t >= names.len() || e.label.len() != rank {
                return Err(Error::Precondition("edge out of range".into()));
            }
            if lengths[t] != lengths[s] + 1 {
                return Err(Error::Precondition(format!(
                    "edge {} -> {} does not raise length by one",
                    names[s], names[t]
                )));
            }
        }
        edges.sort();
        let mut out_start = vec![0usize; names.len() + 1];
        for e in &edges {
            out_start[e.source as usize + 1] += 1;
        }
        for k in 0..names.len() {
            out_start[k + 1] += out_start[k];
        }
        let top = lengths.last().map_or(0, |&l| l as usize);
        let mut level_start = vec![0usize; top + 2];
        for &l in &lengths {
            level_start[l as usize + 1] += 1;
        }
        for l in 0..=top {
            level_start[l + 1] += level_start[l];
        }
        Ok(LabeledGraph {
            rank,
            names,
            lengths,
            level_start,
            edges,
            out_start,
        })
    }

    fn from_set(rank: usize, set: &ElementSet, edges: Vec<Edge>) -> LabeledGraph {
        let names = (0..set.len()).map(|k| set.name(k)).collect();
        let lengths = set.elements().iter().map(|e| e.length() as u16).collect();
        LabeledGraph::new(rank, names, lengths, edges).expect("graph built from a graded set")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[Edge] {
        &self.edges[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Index of the first edge leaving `v`.
    pub fn out_offset(&self, v: usize) -> usize {
        self.out_start[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn length(&self, v: usize) -> usize {
        self.lengths[v] as usize
    }

    /// The top length (half the real dimension of the variety).
    pub fn top_degree(&self) -> usize {
        self.level_start.len() - 2
    }

    pub fn level(&self, l: usize) -> Range<usize> {
        if l + 1 < self.level_start.len() {
            self.level_start[l]..self.level_start[l + 1]
        } else {
            0..0
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Edges as `(source name, target name, label)`, for comparisons across
    /// graphs with different vertex orders.
    pub fn edge_set(&self) -> BTreeMap<(String, String), Vec<Box<[i32]>>> {
        let mut out: BTreeMap<(String, String), Vec<Box<[i32]>>> = BTreeMap::new();
        for e in &self.edges {
            out.entry((self.names[e.source as usize].clone(), self.names[e.target as usize].clone()))
                .or_default()
                .push(e.label.clone());
        }
        out
    }

    /// Graphviz rendering with deterministic node and edge order.
    pub fn to_dot(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{title}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (k, name) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  \"{name}\" [length={}];", self.lengths[k]);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.names[e.source as usize],
                self.names[e.target as usize],
                format_coroot(&e.label)
            );
        }
        s.push_str("}\n");
        s
    }

    /// Parse output of [`LabeledGraph::to_dot`].
    pub fn from_dot(text: &str, rank: usize) -> Result<LabeledGraph> {
        let mut names = Vec::new();
        let mut lengths = Vec::new();
        let mut index = BTreeMap::new();
        let mut raw_edges = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.starts_with("digraph")
                || line.starts_with("rankdir")
                || line.starts_with("//")
                || line == "}"
                || line.is_empty()
            {
                continue;
            }
            let quoted: Vec<&str> = line.split('"').collect();
            if line.contains("->") {
                if quoted.len() < 6 {
                    return Err(Error::Parse(format!("bad edge line: {line}")));
                }
                raw_edges.push((quoted[1].to_string(), quoted[3].to_string(), quoted[5].to_string()));
            } else {
                if quoted.len() < 3 {
                    return Err(Error::Parse(format!("bad node line: {line}")));
                }
                let len = quoted[2]
                    .split("length=")
                    .nth(1)
                    .and_then(|r| r.trim_end_matches("];").trim_end_matches(']').parse::<u16>().ok())
                    .ok_or_else(|| Error::Parse(format!("missing length: {line}")))?;
                index.insert(quoted[1].to_string(), names.len() as u32);
                names.push(quoted[1].to_string());
                lengths.push(len);
            }
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (a, b, label) in raw_edges {
            let lookup = |n: &str| {
                index
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("unknown node {n}")))
            };
            edges.push(Edge {
                source: lookup(&a)?,
                target: lookup(&b)?,
                label: parse_coroot(&label, rank)?.into_boxed_slice(),
            });
        }
        LabeledGraph::new(rank, names, lengths, edges)
    }
}

/// The Bruhat graph of `W`: `w -> w t_gamma` whenever the length goes up by one.
pub fn bruhat_graph(weyl: &Weyl, all: &ElementSet) -> LabeledGraph {
    parabolic_graph_on(weyl, all, NodeSet::full(weyl.rank()), NodeSet::EMPTY)
}

/// The parabolic Bruhat graph of `W_J` relative to `W_I` on `W_J^I`, with
/// labels pushed through the degeneration map for `I`.
pub fn parabolic_graph_in(weyl: &Weyl, j: NodeSet, i: NodeSet) -> Result<(ElementSet, LabeledGraph)> {
    let set = weyl.coset_reps_in(j, i)?;
    let graph = parabolic_graph_on(weyl, &set, j, i);
    Ok((set, graph))
}

/// `parabolic_graph_in(S, I)`.
pub fn parabolic_graph(weyl: &Weyl, i: NodeSet) -> Result<(ElementSet, LabeledGraph)> {
    parabolic_graph_in(weyl, NodeSet::full(weyl.rank()), i)
}

fn parabolic_graph_on(weyl: &Weyl, set: &ElementSet, j: NodeSet, i: NodeSet) -> LabeledGraph {
    let rs = weyl.root_system();
    let roots = rs.roots_in(j);
    let mut edges = Vec::new();
    for (a, w) in set.elements().iter().enumerate() {
        for &g in &roots {
            let v = weyl.mul(w, weyl.reflection(g));
            if v.length() != w.length() + 1 {
                continue;
            }
            if let Some(b) = set.index_of(&v) {
                edges.push(Edge {
                    source: a as u32,
                    target: b as u32,
                    label: degeneration_map(rs.coroot(g), i).into_boxed_slice(),
                });
            }
        }
    }
    LabeledGraph::from_set(weyl.rank(), set, edges)
}

/// I-relevance of the Bruhat edge `w -> v`: `l(v') <= l(w') + 1`.
pub fn is_relevant(weyl: &Weyl, w: &WeylElement, v: &WeylElement, i: NodeSet) -> bool {
    let wp = weyl.parabolic_decompose(w, i).min_rep;
    let vp = weyl.parabolic_decompose(v, i).min_rep;
    vp.length() <= wp.length() + 1
}

/// I-relevance from the definition: `v >= w` and `v'' >= w''`.
pub fn is_relevant_by_dominance(weyl: &Weyl, w: &WeylElement, v: &WeylElement, i: NodeSet) -> bool {
    let wd = weyl.parabolic_decompose(w, i);
    let vd = weyl.parabolic_decompose(v, i);
    weyl.bruhat_leq(&wd.min_rep, &vd.min_rep) && weyl.bruhat_leq(&wd.parabolic, &vd.parabolic)
}

/// I-relevance as `v' = w'` or `v'' = w''`.
pub fn is_relevant_by_components(weyl: &Weyl, w: &WeylElement, v: &WeylElement, i: NodeSet) -> bool {
    let wd = weyl.parabolic_decompose(w, i);
    let vd = weyl.parabolic_decompose(v, i);
    wd.min_rep == vd.min_rep || wd.parabolic == vd.parabolic
}

/// One degeneration step on a graph over all of `W`.
///
/// Edges whose label lies in the span of `current` belong to the last factor
/// `W_current`; those are kept only when `next`-relevant and relabeled by
/// the degeneration map for `next`. All other edges are kept as they are.
pub fn degenerate_step(
    weyl: &Weyl,
    all: &ElementSet,
    graph: &LabeledGraph,
    current: NodeSet,
    next: NodeSet,
) -> LabeledGraph {
    let edges = graph
        .edges()
        .iter()
        .filter_map(|e| {
            if !support(&e.label).is_subset(&current) {
                return Some(e.clone());
            }
            let w = all.get(e.source as usize);
            let v = all.get(e.target as usize);
            is_relevant(weyl, w, v, next).then(|| Edge {
                source: e.source,
                target: e.target,
                label: degeneration_map(&e.label, next).into_boxed_slice(),
            })
        })
        .collect();
    LabeledGraph::new(graph.rank(), graph.names.clone(), graph.lengths.clone(), edges).unwrap()
}

/// The I-degenerate Bruhat graph.
pub fn degenerate_graph(weyl: &Weyl, all: &ElementSet, bruhat: &LabeledGraph, i: NodeSet) -> LabeledGraph {
    degenerate_step(weyl, all, bruhat, NodeSet::full(weyl.rank()), i)
}

/// Graphs `B^(0), ..., B^(n-1)` for the chain removing `ordering[0]`, `ordering[1]`, ...
pub fn degeneration_chain(weyl: &Weyl, all: &ElementSet, ordering: &[usize]) -> Result<Vec<LabeledGraph>> {
    check_ordering(ordering, weyl.rank())?;
    let chain = weyl.chain(ordering);
    let mut graphs = vec![bruhat_graph(weyl, all)];
    for j in 1..weyl.rank() {
        let g = degenerate_step(weyl, all, graphs.last().unwrap(), chain[j - 1], chain[j]);
        graphs.push(g);
    }
    Ok(graphs)
}

/// `v` j-dominates `w`: componentwise Bruhat order on the first `j`
/// factors of the iterated decomposition and on the product of the rest.
pub fn j_dominates(weyl: &Weyl, w: &WeylElement, v: &WeylElement, ordering: &[usize], j: usize) -> bool {
    let wc = weyl.iterated_decompose(w, ordering).expect("valid ordering");
    let vc = weyl.iterated_decompose(v, ordering).expect("valid ordering");
    if (0..j).any(|i| !weyl.bruhat_leq(&wc[i], &vc[i])) {
        return false;
    }
    let tail = |c: &[WeylElement]| c[j..].iter().fold(weyl.identity(), |acc, x| weyl.mul(&acc, x));
    weyl.bruhat_leq(&tail(&wc), &tail(&vc))
}

/// The product of factor graphs `B^{I_1} x B^{I_2}_{Phi(I_1)} x ... x B_{Phi(I_{n-1})}`
/// for the given chain of subsets, transported to `W` through the iterated
/// decomposition.
pub fn product_graph(weyl: &Weyl, all: &ElementSet, chain: &[NodeSet]) -> Result<LabeledGraph> {
    let factors: Vec<(ElementSet, LabeledGraph)> = chain
        .windows(2)
        .map(|w| parabolic_graph_in(weyl, w[0], w[1]))
        .collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (a, w) in all.elements().iter().enumerate() {
        let mut comps = Vec::with_capacity(factors.len());
        let mut rest = w.clone();
        for set in &chain[1..] {
            let f = weyl.parabolic_decompose(&rest, *set);
            comps.push(f.min_rep);
            rest = f.parabolic;
        }
        let idx: Vec<usize> = comps
            .iter()
            .zip(&factors)
            .map(|(c, (set, _))| set.index_of(c).expect("component lies in its factor"))
            .collect();
        for (f, (set, graph)) in factors.iter().enumerate() {
            for e in graph.out_edges(idx[f]) {
                let mut target = weyl.identity();
                for (i, c) in comps.iter().enumerate() {
                    let piece = if i == f { set.get(e.target as usize) } else { c };
                    target = weyl.mul(&target, piece);
                }
                let b = all.index_of(&target).expect("product lies in W");
                edges.push(Edge {
                    source: a as u32,
                    target: b as u32,
                    label: e.label.clone(),
                });
            }
        }
    }
    Ok(LabeledGraph::from_set(weyl.rank(), all, edges))
}

/// Compare the I-degenerate graph with `B^I x B_{Phi(I)}`, labels included.
pub fn product_decomposition_check(weyl: &Weyl, all: &ElementSet, i: NodeSet) -> Result<bool> {
    let bruhat = bruhat_graph(weyl, all);
    let deg = degenerate_graph(weyl, all, &bruhat, i);
    let prod = product_graph(weyl, all, &[NodeSet::full(weyl.rank()), i, NodeSet::EMPTY])?;
    Ok(deg.edges() == prod.edges())
}

/// Compare `B^(n-1)` of the degeneration chain with the full product of factors.
pub fn chain_product_check(weyl: &Weyl, all: &ElementSet, ordering: &[usize]) -> Result<bool> {
    let chain = weyl.chain(ordering);
    let graphs = degeneration_chain(weyl, all, ordering)?;
    let prod = product_graph(weyl, all, &chain)?;
    Ok(graphs.last().unwrap().edges() == prod.edges())
}
