//! Iterated degenerations of the Lefschetz determinants and their leading
//! coefficients.
//!
//! With `lambda = sum x_j varpi_{sigma(j)}`, the `j`-th degenerate action
//! only sees the top `x_j`-degree part of the `(j-1)`-th one. After `n - 1`
//! steps the determinant is a single monomial `R_k mu_k`, and `R_k` is the
//! coefficient of `mu_k` in the original `D_k`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bruhatgraph::{degeneration_chain, j_dominates, product_graph, LabeledGraph};
use crate::error::Result;
use crate::exactalg::{Monomial, MultiPoly};
use crate::lefschetz::det::{determinant_over_z, matrix_size};
use crate::rootdata::RootSystem;
use crate::scalar::Fp;
use crate::schubert::{chevalley_apply, edge_weights, lefschetz_degrees, symbolic_weight};
use crate::weyl::{check_ordering, ElementSet, Weyl};

#[derive(Clone, Debug, Serialize)]
pub struct MuData {
    pub k: usize,
    pub level_size: usize,
    /// `M_k^(1), ..., M_k^(n)`.
    pub m: Vec<i64>,
}

impl MuData {
    /// `mu_k = x_1^{M^(1)} ... x_n^{M^(n)}`.
    pub fn monomial(&self) -> Monomial {
        let e: Vec<u16> = self.m.iter().map(|&x| u16::try_from(x).expect("nonnegative exponent")).collect();
        Monomial::from_exponents(&e)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingCheck {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u32>,
    pub mu: String,
    pub leading_monomial: String,
    /// `D_k^(n-1) / mu_k`, from the product of factor graphs.
    pub r_k: String,
    /// Coefficient of `mu_k` in `D_k`.
    pub coefficient: String,
    pub holds: bool,
}

/// Outcome of the exhaustive degree and coefficient identities.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub coefficient_pairs: usize,
    pub determinants: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A Weyl group with a chosen ordering of its simple reflections, the
/// degenerate graphs `B^(0..n-1)` and the product of factor graphs.
pub struct Degeneration {
    weyl: Weyl,
    all: ElementSet,
    ordering: Vec<usize>,
    graphs: Vec<LabeledGraph>,
    product: LabeledGraph,
    /// `l(w^(j))` for every element, by factor.
    components: Vec<Vec<usize>>,
}

impl Degeneration {
    pub fn new(rs: &RootSystem, ordering: &[usize]) -> Result<Degeneration> {
        let weyl = Weyl::new(rs.clone());
        check_ordering(ordering, weyl.rank())?;
        let all = weyl.enumerate()?;
        let graphs = degeneration_chain(&weyl, &all, ordering)?;
        let product = product_graph(&weyl, &all, &weyl.chain(ordering))?;
        let components = all
            .elements()
            .iter()
            .map(|w| Ok(weyl.iterated_decompose(w, ordering)?.iter().map(|c| c.length()).collect()))
            .collect::<Result<_>>()?;
        Ok(Degeneration {
            weyl,
            all,
            ordering: ordering.to_vec(),
            graphs,
            product,
            components,
        })
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn bruhat(&self) -> &LabeledGraph {
        &self.graphs[0]
    }

    /// `B^(j)` for `0 <= j <= n`, with `B^(n) = B^(n-1)`.
    pub fn graph(&self, j: usize) -> &LabeledGraph {
        &self.graphs[j.min(self.graphs.len() - 1)]
    }

    pub fn product(&self) -> &LabeledGraph {
        &self.product
    }

    pub fn degrees(&self) -> Vec<usize> {
        lefschetz_degrees(self.bruhat())
    }

    /// `M_k^(j)` and `mu_k`; `None` when `k` is not a Lefschetz degree.
    pub fn mu_and_mk(&self, k: usize) -> Option<MuData> {
        let g = self.bruhat();
        let size = matrix_size(g, k)?;
        let d = g.top_degree();
        let n = self.weyl.rank();
        let mut m = vec![0i64; n];
        for v in g.level((d + k) / 2) {
            for (j, &l) in self.components[v].iter().enumerate() {
                m[j] += l as i64;
            }
        }
        for w in g.level((d - k) / 2) {
            for (j, &l) in self.components[w].iter().enumerate() {
                m[j] -= l as i64;
            }
        }
        debug_assert_eq!(m.iter().sum::<i64>(), (k * size) as i64);
        Some(MuData { k, level_size: size, m })
    }

    /// `D_k^(j)` over the integers.
    pub fn determinant(&self, j: usize, k: usize) -> Result<MultiPoly<BigInt>> {
        determinant_over_z(self.graph(j), k, Some(&self.ordering))
    }

    /// `D_k^(n-1)` from the product of factor graphs.
    pub fn product_determinant(&self, k: usize) -> Result<MultiPoly<BigInt>> {
        determinant_over_z(&self.product, k, Some(&self.ordering))
    }

    /// Every monomial of `D_k` is at most `mu_k`, and the coefficient of
    /// `mu_k` equals `R_k`; modulo `p` when given.
    pub fn leading_coefficient_check(&self, p: Option<u32>, k: usize) -> Result<LeadingCheck> {
        let mu = self.mu_and_mk(k).ok_or_else(|| crate::error::Error::Precondition(format!("k = {k} out of range")))?;
        let mono = mu.monomial();
        let dk = self.determinant(0, k)?;
        let prod = self.product_determinant(k)?;
        // the product determinant must be R_k mu_k
        let (r_k, pure) = match prod.as_term() {
            Some((c, m)) => (c, m == mono),
            None => (BigInt::zero(), prod.is_zero()),
        };
        let coefficient = dk.coefficient(&mono);
        let reduce = |f: &MultiPoly<BigInt>| -> MultiPoly<Fp> {
            let q = p.expect("characteristic");
            f.map_coeffs(|c| Fp::from_big(c, q))
        };
        let (leading, agree) = match p {
            None => (dk.leading_term().map(|(m, _)| m), coefficient == r_k),
            Some(q) => (
                reduce(&dk).leading_term().map(|(m, _)| m),
                Fp::from_big(&coefficient, q) == Fp::from_big(&r_k, q),
            ),
        };
        let below = leading.is_none_or(|m| m <= mono);
        let show = |m: Option<Monomial>| m.map_or("0".to_string(), |m| MultiPoly::<BigInt>::term(m, BigInt::one()).to_string());
        Ok(LeadingCheck {
            k,
            characteristic: p,
            mu: show(Some(mono)),
            leading_monomial: show(leading),
            r_k: r_k.to_string(),
            coefficient: coefficient.to_string(),
            holds: pure && below && agree,
        })
    }

    /// Every coefficient `C^(j)_{w,v}` obeys the degree bound, the top
    /// coefficient identity and homogeneity; every `D_k^(j)` likewise.
    pub fn lemma_checks(&self) -> Result<LemmaReport> {
        let n = self.weyl.rank();
        let lambda = symbolic_weight::<BigInt>(n, Some(&self.ordering));
        let mut report = LemmaReport::default();
        let len = |v: usize, i: usize| self.components[v][i] as i64;
        for j in 0..n {
            let g = self.graph(j);
            let h = self.graph(j + 1);
            let wg = edge_weights(g, &lambda);
            let wh = edge_weights(h, &lambda);
            let relevant = self.relevant_adjacency(j + 1);
            for w in 0..self.all.len() {
                let cg = coefficients_from(g, &wg, w);
                let ch = coefficients_from(h, &wh, w);
                let reach = reachable(&relevant, w);
                for v in 0..self.all.len() {
                    if g.length(v) <= g.length(w) {
                        continue;
                    }
                    report.coefficient_pairs += 1;
                    let a = len(v, j) - len(w, j);
                    let tag = || format!("j={j} w={} v={}", g.name(w), g.name(v));
                    let deg = cg[v].degree_in(j);
                    if !cg[v].is_zero() {
                        if deg > a {
                            report.failures.push(format!("{}: degree {deg} above {a}", tag()));
                        }
                        if (deg == a) != reach[v] {
                            report.failures.push(format!("{}: equality vs relevant path", tag()));
                        }
                    } else if reach[v] {
                        report.failures.push(format!("{}: relevant path but zero coefficient", tag()));
                    }
                    if top_part(&cg[v], j, a) != ch[v] {
                        report.failures.push(format!("{}: top coefficient differs from next level", tag()));
                    }
                    for i in 0..=j.min(n - 1) {
                        let b = len(v, i) - len(w, i);
                        if !homogeneous(&ch[v], i, b) {
                            report.failures.push(format!("{}: not homogeneous in x{}", tag(), i + 1));
                        }
                    }
                }
            }
        }
        for k in self.degrees() {
            let mu = self.mu_and_mk(k).expect("Lefschetz degree");
            let dets: Vec<MultiPoly<BigInt>> = (0..=n).map(|j| self.determinant(j, k)).collect::<Result<_>>()?;
            for j in 0..n {
                report.determinants += 1;
                let tag = format!("k={k} j={j}");
                if dets[j].degree_in(j) > mu.m[j] {
                    report.failures.push(format!("{tag}: degree in x{} above M", j + 1));
                }
                for i in 0..j {
                    if !homogeneous(&dets[j], i, mu.m[i]) {
                        report.failures.push(format!("{tag}: not homogeneous in x{}", i + 1));
                    }
                }
                if top_part(&dets[j], j, mu.m[j]) != dets[j + 1] {
                    report.failures.push(format!("{tag}: top coefficient differs from D^(j+1)"));
                }
            }
        }
        Ok(report)
    }

    /// Edges of the Bruhat graph whose target `j`-dominates their source.
    fn relevant_adjacency(&self, j: usize) -> Vec<Vec<usize>> {
        let g = self.bruhat();
        let mut adj = vec![Vec::new(); g.num_vertices()];
        for e in g.edges() {
            let (a, b) = (e.source as usize, e.target as usize);
            if j_dominates(&self.weyl, self.all.get(a), self.all.get(b), &self.ordering, j) {
                adj[a].push(b);
            }
        }
        adj
    }
}

/// `coeff_{x_{i+1}^a}(f) * x_{i+1}^a`, zero for negative `a`.
fn top_part(f: &MultiPoly<BigInt>, i: usize, a: i64) -> MultiPoly<BigInt> {
    if a < 0 {
        return MultiPoly::zero();
    }
    let a = a as u16;
    let mut e = [0u16; crate::exactalg::poly::MAX_VARS];
    e[i] = a;
    f.coeff_extract(i, a).mul_monomial(&Monomial(e))
}

fn homogeneous(f: &MultiPoly<BigInt>, i: usize, deg: i64) -> bool {
    f.is_zero() || (deg >= 0 && f.is_homogeneous_in(i, deg as u16))
}

/// All coefficients of `lambda^h . P_w` for `h >= 1`, indexed by vertex.
fn coefficients_from(g: &LabeledGraph, weights: &[MultiPoly<BigInt>], w: usize) -> Vec<MultiPoly<BigInt>> {
    let mut out = vec![MultiPoly::zero(); g.num_vertices()];
    let mut cur = vec![MultiPoly::zero(); g.num_vertices()];
    cur[w] = MultiPoly::one();
    for _ in g.length(w)..g.top_degree() {
        cur = chevalley_apply(g, weights, &cur);
        for (v, c) in cur.iter().enumerate() {
            if !c.is_zero() {
                out[v] = c.clone();
            }
        }
    }
    out
}

fn reachable(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}

/// `M_k^(j)` and `mu_k` for the chain removing `ordering[0]`, `ordering[1]`, ...
pub fn mu_and_mk(rs: &RootSystem, ordering: &[usize], k: usize) -> Result<Option<MuData>> {
    Ok(Degeneration::new(rs, ordering)?.mu_and_mk(k))
}

/// Every ordering of `0..n`.
pub fn all_orderings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// `R_k` at `lambda = (1, ..., 1)` modulo `p`, straight from the product graph.
pub fn r_k_mod_p(product: &LabeledGraph, p: u32, k: usize) -> Result<Fp> {
    let ones = vec![Fp::new(1, p); product.rank()];
    crate::lefschetz::det::determinant_at(product, &ones, k)
}
