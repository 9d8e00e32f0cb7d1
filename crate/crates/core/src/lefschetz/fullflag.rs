//! Hard Lefschetz certification on full flag varieties.

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bruhatgraph::{bruhat_graph, LabeledGraph};
use crate::error::{Error, Result};
use crate::exactalg::{pit_nonzero, ExtField, Gf, PitConfig, PitVerdict};
use crate::lefschetz::det::{determinant_at, determinant_mod_p, matrix_size, Mode};
use crate::lefschetz::report::{fingerprint, DetRecord, DetStatus, HlReport, Method, Verdict, Witness};
use crate::rootdata::{Family, RootSystem};
use crate::scalar::{is_small_prime, Fp};
use crate::schubert::lefschetz_degrees;
use crate::weyl::{Weyl, DEFAULT_CAP};

/// Symbolic determinants with more terms than this are reported by size only.
const RENDER_TERMS: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct HlpOptions {
    pub mode: Mode,
    pub pit: PitConfig,
    /// Largest Weyl group (or coset set) that may be enumerated.
    pub cap: u128,
    /// Largest extension degree tried by the witness search.
    pub max_extension: usize,
    /// Random points tried per field in the witness search.
    pub witness_trials: u32,
}

impl Default for HlpOptions {
    fn default() -> Self {
        HlpOptions {
            mode: Mode::Auto,
            pit: PitConfig::default(),
            cap: DEFAULT_CAP,
            max_extension: 8,
            witness_trials: 64,
        }
    }
}

impl HlpOptions {
    pub fn seed(&self) -> u64 {
        self.pit.seed
    }
}

pub(crate) fn require_prime(p: u32) -> Result<()> {
    if is_small_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{p} is not a prime")))
    }
}

/// Decide whether `D_k` vanishes over `F_p`.
pub fn decide_determinant(graph: &LabeledGraph, p: u32, k: usize, opts: &HlpOptions) -> Result<DetRecord> {
    let size = matrix_size(graph, k)
        .ok_or_else(|| Error::Precondition(format!("k = {k} is not a Lefschetz degree")))?;
    let symbolic = match opts.mode {
        Mode::Symbolic => true,
        Mode::Pit => false,
        Mode::Auto => graph.rank() <= 3 || size <= 4,
    };
    if symbolic {
        let det = determinant_mod_p(graph, p, k, None)?;
        let terms = det.num_terms();
        return Ok(DetRecord {
            k,
            size,
            method: Method::Symbolic,
            status: if det.is_zero() { DetStatus::Zero } else { DetStatus::Nonzero },
            determinant: (terms <= RENDER_TERMS).then(|| det.to_string()),
            terms: Some(terms),
            error_bound: None,
            extension_degree: None,
        });
    }
    let bound = (k * size) as u64;
    let verdict = pit_nonzero(graph.rank(), p, bound, &opts.pit, |pt| {
        determinant_at(graph, pt, k).expect("degree checked above")
    });
    Ok(match verdict {
        PitVerdict::Nonzero {
            value, extension_degree, ..
        } => DetRecord {
            k,
            size,
            method: Method::Pit,
            status: DetStatus::Nonzero,
            determinant: Some(format!("value {value} at a random point")),
            terms: None,
            error_bound: None,
            extension_degree: Some(extension_degree),
        },
        PitVerdict::Zero {
            extension_degree,
            error_bound,
            ..
        } => DetRecord {
            k,
            size,
            method: Method::Pit,
            status: DetStatus::Zero,
            determinant: None,
            terms: None,
            error_bound: Some(error_bound),
            extension_degree: Some(extension_degree),
        },
    })
}

fn nonvanishing(graph: &LabeledGraph, ks: &[usize], pt: &[Gf]) -> bool {
    ks.iter()
        .all(|&k| !determinant_at(graph, pt, k).expect("Lefschetz degree").is_zero())
}

fn all_points(field: &Arc<ExtField>, n: usize) -> Vec<Vec<Gf>> {
    let elems = field.elements();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|pt| {
                elems.iter().map(move |x| {
                    let mut q = pt.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// A weight at which every `D_k` (for `k` in `ks`) is nonzero.
///
/// Tries `rho`, then points of `F_p^n`, then random points over
/// `F_{p^m}` for `m = 2, 3, ...`; fields small enough are searched exhaustively.
/// `min_extension` skips the smaller fields.
pub fn find_witness(
    graph: &LabeledGraph,
    p: u32,
    ks: &[usize],
    opts: &HlpOptions,
    min_extension: usize,
) -> Option<Vec<Gf>> {
    let n = graph.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed());
    for m in min_extension.max(1)..=opts.max_extension {
        let field = ExtField::new(p, m, opts.seed());
        if m == 1 {
            let rho = vec![field.from_int(1); n];
            if nonvanishing(graph, ks, &rho) {
                return Some(rho);
            }
        }
        let exhaustive = (p as f64).powi((m * n) as i32) <= 4096.0;
        if exhaustive {
            if let Some(pt) = all_points(&field, n).into_iter().find(|pt| nonvanishing(graph, ks, pt)) {
                return Some(pt);
            }
        } else {
            for _ in 0..opts.witness_trials {
                let pt: Vec<Gf> = (0..n).map(|_| field.random(&mut rng)).collect();
                if nonvanishing(graph, ks, &pt) {
                    return Some(pt);
                }
            }
        }
    }
    None
}

/// Run the determinant test for every Lefschetz degree, largest first,
/// stopping at the first vanishing one.
pub fn graph_hlp(graph: &LabeledGraph, p: u32, opts: &HlpOptions, subject: String, kind: String) -> Result<HlReport> {
    require_prime(p)?;
    let ks = lefschetz_degrees(graph);
    let mut records = Vec::new();
    let mut failing = None;
    for &k in ks.iter().rev() {
        let rec = decide_determinant(graph, p, k, opts)?;
        let zero = rec.status == DetStatus::Zero;
        records.push(rec);
        if zero {
            failing = Some(k);
            break;
        }
    }
    records.sort_by_key(|r| r.k);
    let mut notes = Vec::new();
    let witness = if failing.is_none() {
        let w = find_witness(graph, p, &ks, opts, 1);
        if w.is_none() {
            notes.push(format!("no witness found up to extension degree {}", opts.max_extension));
        }
        w
    } else {
        None
    };
    Ok(HlReport {
        subject,
        characteristic: p,
        graph: kind,
        top_degree: graph.top_degree(),
        ordering: (1..=graph.rank()).collect(),
        records,
        verdict: if failing.is_none() { Verdict::Yes } else { Verdict::No },
        failing_k: failing,
        witness: witness.as_deref().map(Witness::new),
        seed: opts.seed(),
        basis_fingerprint: fingerprint(graph.names()),
        notes,
    })
}

/// Whether some weight has the hard Lefschetz property on `H*(G/B)` over
/// an algebraically closed field of characteristic `p`.
pub fn full_flag_hlp(rs: &RootSystem, p: u32, opts: &HlpOptions) -> Result<HlReport> {
    require_prime(p)?;
    let weyl = Weyl::new(rs.clone()).with_cap(opts.cap);
    let all = weyl.enumerate()?;
    let graph = bruhat_graph(&weyl, &all);
    graph_hlp(&graph, p, opts, rs.name(), "full flag".into())
}

/// The six cases of small rank and small characteristic.
pub const TABLE1_CASES: [(Family, usize, u32); 6] = [
    (Family::A, 2, 2),
    (Family::B, 2, 3),
    (Family::G, 2, 5),
    (Family::B, 3, 5),
    (Family::C, 3, 5),
    (Family::F, 4, 5),
];

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub subject: String,
    pub characteristic: u32,
    pub positive_roots: usize,
    pub verdict: Verdict,
    pub report: HlReport,
}

/// Run [`full_flag_hlp`] on each entry of [`TABLE1_CASES`].
pub fn table1(opts: &HlpOptions) -> Result<Vec<Table1Row>> {
    TABLE1_CASES
        .iter()
        .map(|&(f, n, p)| {
            let rs = RootSystem::build(f, n)?;
            let report = full_flag_hlp(&rs, p, opts)?;
            Ok(Table1Row {
                subject: rs.name(),
                characteristic: p,
                positive_roots: rs.num_positive(),
                verdict: report.verdict,
                report,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteScan {
    pub subject: String,
    pub characteristic: u32,
    /// Number of weights in `F_p^n` examined.
    pub points: u64,
    /// Number of them with every `D_k` nonzero.
    pub witnesses: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_witness: Option<Vec<i64>>,
    /// A witness over a proper extension, searched when `F_p` has none.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_witness: Option<Witness>,
}

/// Largest `p^n` accepted by [`finite_scan`].
pub const SCAN_CAP: u64 = 1 << 20;

/// Evaluate every weight in `F_p^n` on the full flag variety.
pub fn finite_scan(rs: &RootSystem, p: u32, opts: &HlpOptions) -> Result<FiniteScan> {
    require_prime(p)?;
    let n = rs.rank();
    let total = (p as u64).checked_pow(n as u32).filter(|&t| t <= SCAN_CAP).ok_or(Error::CapExceeded {
        what: "exhaustive weight scan".into(),
        size: (p as u128).saturating_pow(n as u32),
        cap: SCAN_CAP as u128,
    })?;
    let weyl = Weyl::new(rs.clone()).with_cap(opts.cap);
    let all = weyl.enumerate()?;
    let graph = bruhat_graph(&weyl, &all);
    let ks = lefschetz_degrees(&graph);
    let mut witnesses = 0;
    let mut first = None;
    for idx in 0..total {
        let coords: Vec<i64> = (0..n).map(|i| ((idx / (p as u64).pow(i as u32)) % p as u64) as i64).collect();
        let pt: Vec<Fp> = coords.iter().map(|&c| Fp::new(c, p)).collect();
        let ok = ks
            .iter()
            .all(|&k| !determinant_at(&graph, &pt, k).expect("Lefschetz degree").is_zero());
        if ok {
            witnesses += 1;
            first.get_or_insert(coords);
        }
    }
    let extension_witness = if witnesses == 0 {
        find_witness(&graph, p, &ks, opts, 2).as_deref().map(Witness::new)
    } else {
        None
    };
    Ok(FiniteScan {
        subject: rs.name(),
        characteristic: p,
        points: total,
        witnesses,
        first_witness: first,
        extension_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(f, n).unwrap()
    }

    #[test]
    fn small_table_rows() {
        let opts = HlpOptions::default();
        let a2 = full_flag_hlp(&rs(Family::A, 2), 2, &opts).unwrap();
        assert!(a2.is_yes());
        assert!(a2.witness.is_some());
        let b2 = full_flag_hlp(&rs(Family::B, 2), 3, &opts).unwrap();
        assert!(b2.is_yes());
        // the quadratic D_2 has no zero-free point over F_3
        assert!(b2.witness.as_ref().unwrap().extension_degree >= 2);
    }

    #[test]
    fn b2_over_f5_needs_an_extension() {
        let scan = finite_scan(&rs(Family::B, 2), 5, &HlpOptions::default()).unwrap();
        assert_eq!(scan.points, 25);
        assert_eq!(scan.witnesses, 0);
        let w = scan.extension_witness.unwrap();
        assert_eq!(w.extension_degree, 2);
    }

    #[test]
    fn pit_and_symbolic_agree() {
        let g = {
            let w = Weyl::new(rs(Family::A, 3));
            let all = w.enumerate().unwrap();
            bruhat_graph(&w, &all)
        };
        for p in [2u32, 3, 5] {
            for k in lefschetz_degrees(&g) {
                let sym = decide_determinant(&g, p, k, &HlpOptions { mode: Mode::Symbolic, ..Default::default() }).unwrap();
                let pit = decide_determinant(&g, p, k, &HlpOptions { mode: Mode::Pit, ..Default::default() }).unwrap();
                assert_eq!(sym.status, pit.status, "A3 p={p} k={k}");
            }
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(full_flag_hlp(&rs(Family::A, 2), 4, &HlpOptions::default()).is_err());
    }
}
