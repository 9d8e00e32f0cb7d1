//! The full flag variety as a degeneration to a product of maximal
//! parabolic factors.
//!
//! Along a chain `S = I_0 > I_1 > ... > I_n = {}` every factor
//! `H*(P_{I_{j-1}}/P_{I_j})` is checked for the hard Lefschetz property of its
//! fundamental weight and split into strings. A tensor product of strings is
//! a monomial complete intersection, so the product has the property as soon
//! as each such summand does; that gives `R_k != 0`, hence `D_k != 0`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bruhatgraph::{bruhat_graph, parabolic_graph_in, product_graph};
use crate::error::{Error, Result};
use crate::lefschetz::decomposition::lefschetz_decomposition;
use crate::lefschetz::det::determinant_at;
use crate::lefschetz::fullflag::{find_witness, full_flag_hlp, require_prime, HlpOptions};
use crate::lefschetz::parabolic::default_ordering;
use crate::lefschetz::report::{fingerprint, DetRecord, DetStatus, HlReport, Method, Verdict, Witness};
use crate::modularsl2::monomial_ci_hlp;
use crate::rootdata::RootSystem;
use crate::scalar::Fp;
use crate::schubert::{edge_weights, lefschetz_degrees};
use crate::weyl::{check_ordering, Weyl};

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    /// 1-based position in the chain.
    pub index: usize,
    /// 1-based node removed at this step.
    pub node: usize,
    /// 1-based nodes of `I_{j-1}`.
    pub subsystem: Vec<usize>,
    pub cosets: usize,
    pub top_degree: usize,
    /// String degrees `k` of the Lefschetz decomposition, largest first.
    pub strings: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub subject: String,
    pub characteristic: u32,
    pub positive_roots: usize,
    /// 1-based nodes in removal order.
    pub ordering: Vec<usize>,
    /// Whether `p > |Phi+|`, so that the degeneration argument applies.
    pub applicable: bool,
    pub factors: Vec<FactorReport>,
    /// Distinct tuples `(k_1, ..., k_n)` of string degrees, one per summand type.
    pub summand_tuples: Vec<Vec<usize>>,
    /// Every summand `K[w_j]/(w_j^{k_j+1})` tensor product has the property at `x = 1`.
    pub summands_hlp: bool,
    /// `(k, R_k mod p)` from the product graph at `x = 1`.
    pub r_k: Vec<(usize, u32)>,
    /// The summand test and the direct `R_k` test agree.
    pub consistent: bool,
    pub report: HlReport,
}

impl MainTheoremReport {
    pub fn is_yes(&self) -> bool {
        self.report.is_yes()
    }
}

/// Run the degeneration argument for `G/B` in characteristic `p`.
///
/// Falls back to [`full_flag_hlp`] when `p <= |Phi+|`. Fails with
/// [`Error::NoHlp`] if some factor lacks the property.
pub fn assemble_main_theorem(
    rs: &RootSystem,
    p: u32,
    ordering: Option<&[usize]>,
    opts: &HlpOptions,
) -> Result<MainTheoremReport> {
    require_prime(p)?;
    let n = rs.rank();
    let ordering = ordering.map_or_else(|| default_ordering(rs), |o| o.to_vec());
    check_ordering(&ordering, n)?;
    let positive = rs.num_positive();
    let one_based: Vec<usize> = ordering.iter().map(|s| s + 1).collect();
    if (p as usize) <= positive {
        let report = full_flag_hlp(rs, p, opts)?;
        return Ok(MainTheoremReport {
            subject: rs.name(),
            characteristic: p,
            positive_roots: positive,
            ordering: one_based,
            applicable: false,
            factors: Vec::new(),
            summand_tuples: Vec::new(),
            summands_hlp: report.is_yes(),
            r_k: Vec::new(),
            consistent: true,
            report,
        });
    }
    let weyl = Weyl::new(rs.clone()).with_cap(opts.cap);
    let chain = weyl.chain(&ordering);
    let mut factors = Vec::new();
    for j in 0..n {
        let node = ordering[j];
        let (set, graph) = parabolic_graph_in(&weyl, chain[j], chain[j + 1])?;
        let eta: Vec<Fp> = (0..n).map(|i| Fp::new((i == node) as i64, p)).collect();
        let dec = lefschetz_decomposition(&graph, &edge_weights(&graph, &eta)).map_err(|e| match e {
            Error::NoHlp(msg) => Error::NoHlp(format!("factor {} (node {}) at p = {p}: {msg}", j + 1, node + 1)),
            other => other,
        })?;
        factors.push(FactorReport {
            index: j + 1,
            node: node + 1,
            subsystem: chain[j].iter().map(|s| s + 1).collect(),
            cosets: set.len(),
            top_degree: graph.top_degree(),
            strings: dec.string_degrees(),
        });
    }
    // Sum of k_j is at most sum of d_j = |Phi+| < p.
    let mut tuples: BTreeSet<Vec<usize>> = [Vec::new()].into();
    for f in &factors {
        let distinct: BTreeSet<usize> = f.strings.iter().copied().collect();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                distinct.iter().map(move |&k| {
                    let mut u = t.clone();
                    u.push(k);
                    u
                })
            })
            .collect();
    }
    let mut summands_hlp = true;
    for t in &tuples {
        let degrees: Vec<usize> = t.iter().map(|k| k + 1).collect();
        summands_hlp &= monomial_ci_hlp(&degrees, p, &vec![1; n])?.is_yes();
    }
    let all = weyl.enumerate()?;
    let product = product_graph(&weyl, &all, &chain)?;
    let ones = vec![Fp::new(1, p); n];
    let ks = lefschetz_degrees(&product);
    let mut r_k = Vec::new();
    let mut records = Vec::new();
    for &k in &ks {
        let r = determinant_at(&product, &ones, k)?;
        r_k.push((k, r.value() as u32));
        records.push(DetRecord {
            k,
            size: product.level((product.top_degree() - k) / 2).len(),
            method: Method::Numeric,
            status: if r.value() == 0 { DetStatus::Zero } else { DetStatus::Nonzero },
            determinant: Some(format!("R_k = {}", r.value())),
            terms: None,
            error_bound: None,
            extension_degree: None,
        });
    }
    let r_nonzero = r_k.iter().all(|&(_, r)| r != 0);
    let yes = summands_hlp && r_nonzero;
    let bruhat = bruhat_graph(&weyl, &all);
    let witness = if yes {
        find_witness(&bruhat, p, &lefschetz_degrees(&bruhat), opts, 1)
    } else {
        None
    };
    let mut notes = vec![format!("sum of string degrees is at most |Phi+| = {positive} < p = {p}")];
    if yes && witness.is_none() {
        notes.push(format!("no explicit witness found up to extension degree {}", opts.max_extension));
    }
    let report = HlReport {
        subject: rs.name(),
        characteristic: p,
        graph: "product of maximal parabolic factors".into(),
        top_degree: product.top_degree(),
        ordering: one_based.clone(),
        records,
        verdict: if yes { Verdict::Yes } else { Verdict::No },
        failing_k: r_k.iter().find(|&&(_, r)| r == 0).map(|&(k, _)| k),
        witness: witness.as_deref().map(Witness::new),
        seed: opts.seed(),
        basis_fingerprint: fingerprint(product.names()),
        notes,
    };
    Ok(MainTheoremReport {
        subject: rs.name(),
        characteristic: p,
        positive_roots: positive,
        ordering: one_based,
        applicable: true,
        factors,
        summand_tuples: tuples.into_iter().collect(),
        summands_hlp,
        r_k,
        consistent: summands_hlp == r_nonzero,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    #[test]
    fn type_a_factors_are_projective_spaces() {
        let rs = RootSystem::build(Family::A, 3).unwrap();
        let r = assemble_main_theorem(&rs, 7, None, &HlpOptions::default()).unwrap();
        let strings: Vec<Vec<usize>> = r.factors.iter().map(|f| f.strings.clone()).collect();
        assert_eq!(strings, vec![vec![3], vec![2], vec![1]]);
        assert_eq!(r.summand_tuples, vec![vec![3, 2, 1]]);
        assert!(r.is_yes() && r.consistent);
        assert!(r.report.witness.is_some());
    }

    #[test]
    fn small_characteristic_falls_back() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        let r = assemble_main_theorem(&rs, 3, None, &HlpOptions::default()).unwrap();
        assert!(!r.applicable);
        assert!(r.is_yes());
    }

    #[test]
    fn b3_above_positive_roots() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        let r = assemble_main_theorem(&rs, 11, None, &HlpOptions::default()).unwrap();
        assert!(r.applicable && r.is_yes() && r.consistent);
        assert_eq!(r.factors[0].strings, vec![5]);
        assert!(r.r_k.iter().all(|&(_, x)| x != 0));
    }
}
