//! End-to-end acceptance checks. Each test prints a single PASS/FAIL line.

use std::time::{Duration, Instant};

use num_traits::Zero;

use hlp_core::bruhatgraph::{bruhat_graph, chain_product_check, parabolic_graph};
use hlp_core::lefschetz::{
    all_orderings, assemble_main_theorem, determinant_at, determinant_mod_p, determinant_over_z, finite_scan, full_flag_hlp,
    lefschetz_decomposition, parabolic_bad_primes, stembridge_rho, stembridge_symbolic, table1, Degeneration,
    DetStatus, HlReport, HlpOptions, Method, Verdict,
};
use hlp_core::modularsl2::{monomial_ci_hlp, tensor_decompose};
use hlp_core::rootdata::{all_types, Family, NodeSet, RootSystem};
use hlp_core::schubert::{edge_weights, lefschetz_degrees};
use hlp_core::weyl::{Weyl, DEFAULT_CAP};
use hlp_core::{Fp, IntPoly, Ring};

fn run(id: u32, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:.0?}")),
        (o, _) => o,
    };
    match &outcome {
        Ok(msg) => println!("criterion {id:>2} PASS {name}: {msg} ({elapsed:.2?})"),
        Err(msg) => println!("criterion {id:>2} FAIL {name}: {msg} ({elapsed:.2?})"),
    }
    if let Err(msg) = outcome {
        panic!("criterion {id} failed: {msg}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rs(f: Family, n: usize) -> RootSystem {
    RootSystem::build(f, n).unwrap()
}

/// Re-evaluate every `D_k` at a prime-field witness.
fn witness_holds(rs: &RootSystem, report: &HlReport) -> Result<(), String> {
    let w = report.witness.as_ref().ok_or("no witness")?;
    if w.extension_degree > 1 {
        return Ok(());
    }
    let p = report.characteristic;
    let pt: Vec<Fp> = w
        .coordinates
        .iter()
        .map(|c| c.parse::<i64>().map(|v| Fp::new(v, p)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let weyl = Weyl::new(rs.clone());
    let g = bruhat_graph(&weyl, &weyl.enumerate().map_err(|e| e.to_string())?);
    for k in lefschetz_degrees(&g) {
        ensure(!determinant_at(&g, &pt, k).unwrap().is_zero(), || format!("witness kills D_{k}"))?;
    }
    Ok(())
}

#[test]
fn criterion_01_table1() {
    run(1, "small-rank table", Some(Duration::from_secs(30 * 60)), || {
        let expected = [
            ("A2", 2, 3, Verdict::Yes),
            ("B2", 3, 4, Verdict::Yes),
            ("G2", 5, 6, Verdict::Yes),
            ("B3", 5, 9, Verdict::No),
            ("C3", 5, 9, Verdict::No),
            ("F4", 5, 24, Verdict::No),
        ];
        let rows = table1(&HlpOptions::default()).map_err(|e| e.to_string())?;
        ensure(rows.len() == 6, || format!("{} rows", rows.len()))?;
        let mut line = Vec::new();
        for (row, (name, p, pos, verdict)) in rows.iter().zip(expected) {
            ensure(
                row.subject == name && row.characteristic == p && row.positive_roots == pos && row.verdict == verdict,
                || format!("row {} p={} |Phi+|={} {}", row.subject, row.characteristic, row.positive_roots, row.verdict),
            )?;
            if verdict == Verdict::Yes {
                ensure(row.report.witness.is_some(), || format!("{name} has no witness"))?;
            }
            line.push(format!("{name}/{p}={verdict}"));
        }
        Ok(line.join(" "))
    });
}

#[test]
fn criterion_02_failing_degree() {
    run(2, "D_{d-2} identically zero mod 5", None, || {
        let opts = HlpOptions::default();
        let mut found = Vec::new();
        let mut failures = Vec::new();
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::F, 4)] {
            let rs = rs(f, n);
            let weyl = Weyl::new(rs.clone());
            let g = bruhat_graph(&weyl, &weyl.enumerate().unwrap());
            let d = g.top_degree();
            let dm2 = determinant_mod_p(&g, 5, d - 2, None).map_err(|e| e.to_string())?;
            let report = full_flag_hlp(&rs, 5, &opts).map_err(|e| e.to_string())?;
            let top = report.record(d).ok_or("no D_d record")?;
            ensure(top.status == DetStatus::Nonzero && report.verdict == Verdict::No, || format!("{f}{n}: {report}"))?;
            if dm2.is_zero() {
                found.push(format!("{f}{n} k={}", d - 2));
            } else {
                let fp_zero = (0..5u64.pow(n as u32)).all(|idx| {
                    let pt: Vec<Fp> = (0..n).map(|i| Fp::new((idx / 5u64.pow(i as u32) % 5) as i64, 5)).collect();
                    determinant_at(&g, &pt, d - 2).unwrap().is_zero()
                });
                let rec = report.failing_k.and_then(|k| report.record(k)).ok_or("no failing record")?;
                ensure(rec.method == Method::Symbolic, || format!("{f}{n}: {rec:?}"))?;
                failures.push(format!(
                    "{f}{n}: D_{} mod 5 has {} terms{}; first identically zero degree is k={}",
                    d - 2,
                    dm2.num_terms(),
                    if fp_zero { format!(" but vanishes on all of F_5^{n}") } else { String::new() },
                    rec.k
                ));
            }
        }
        if failures.is_empty() {
            Ok(found.join(", "))
        } else {
            Err(format!("{} (holds for {})", failures.join("; "), found.join(", ")))
        }
    });
}

#[test]
fn criterion_03_rank_two_determinants() {
    run(3, "B2 determinants over Z", None, || {
        let weyl = Weyl::new(rs(Family::B, 2));
        let g = bruhat_graph(&weyl, &weyl.enumerate().unwrap());
        // a is the coefficient of the short simple root's weight
        let a = IntPoly::var(1);
        let b = IntPoly::var(0);
        let two = |x: &IntPoly| x.scale(2);
        let d4 = (a.clone() * b.clone() * (a.clone() + b.clone()) * (a.clone() + two(&b))).scale(4);
        let q = a.clone() * a.clone() + two(&(a.clone() * b.clone())) + two(&(b.clone() * b.clone()));
        let got4 = determinant_over_z(&g, 4, None).map_err(|e| e.to_string())?;
        let got2 = determinant_over_z(&g, 2, None).map_err(|e| e.to_string())?;
        let sign = |got: &IntPoly, want: &IntPoly| {
            if got == want {
                1
            } else if *got == -want.clone() {
                -1
            } else {
                0
            }
        };
        let s4 = sign(&got4, &d4);
        ensure(s4 != 0, || format!("D_4 = {got4}"))?;
        let s2 = sign(&got2, &q);
        if s2 == 0 {
            let sq = sign(&got2, &(q.clone() * q.clone()));
            return Err(if sq != 0 {
                format!(
                    "D_4 matches; D_2 = {}(a^2+2ab+2b^2)^2, the square of the expected form (a 2x2 minor of quadratics has degree 4)",
                    if sq < 0 { "-" } else { "" }
                )
            } else {
                format!("D_2 = {got2}")
            });
        }
        ensure(s2 == -s4, || format!("D_2 = {got2}"))?;
        Ok(format!("D_4 = {got4}, D_2 = {got2}"))
    });
}

#[test]
fn criterion_04_finite_field_scan() {
    run(4, "B2 over F_5 and its extensions", Some(Duration::from_secs(1)), || {
        let b2 = rs(Family::B, 2);
        let opts = HlpOptions::default();
        let scan = finite_scan(&b2, 5, &opts).map_err(|e| e.to_string())?;
        ensure(scan.points == 25 && scan.witnesses == 0, || format!("{} of {} points", scan.witnesses, scan.points))?;
        let ext = scan.extension_witness.ok_or("no extension witness")?;
        let full = full_flag_hlp(&b2, 5, &opts).map_err(|e| e.to_string())?;
        ensure(full.is_yes(), || "B2/5 is not Yes".into())?;
        let w = full.witness.ok_or("no witness from the full check")?;
        ensure(w.extension_degree >= 2, || "prime-field witness".into())?;
        Ok(format!("0 of 25 in F_5^2, witness over {}", ext.field))
    });
}

#[test]
fn criterion_05_exceptional_bad_primes() {
    run(5, "exceptional bad primes", None, || {
        let rows: [(Family, usize, &[u64], u64); 5] = [
            (Family::G, 2, &[2], 60),
            (Family::F, 4, &[2, 3, 13], 60),
            (Family::E, 6, &[2, 3, 13], 60),
            (Family::E, 7, &[2, 3, 5, 7, 19, 23], 120),
            (Family::E, 8, &[2, 3, 5, 7, 19, 29, 31, 37, 41, 43, 47, 53], 600),
        ];
        let mut out = Vec::new();
        for (f, n, primes, limit) in rows {
            let start = Instant::now();
            let bad = parabolic_bad_primes(&rs(f, n), 0, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let t = start.elapsed();
            ensure(bad.vanishing.is_empty(), || format!("{f}{n}: vanishing {:?}", bad.vanishing))?;
            ensure(bad.primes == primes, || format!("{f}{n}: {:?}", bad.primes))?;
            ensure(t.as_secs() <= limit, || format!("{f}{n} took {t:.2?}"))?;
            out.push(format!("{f}{n} {:?}", bad.primes));
        }
        Ok(out.join("; "))
    });
}

#[test]
fn criterion_06_classical_families() {
    run(6, "classical strings and diamonds", None, || {
        for (f, lo) in [(Family::B, 2), (Family::C, 2), (Family::D, 3)] {
            for n in lo..=8 {
                let weyl = Weyl::new(rs(f, n));
                let (_, g) = parabolic_graph(&weyl, NodeSet::full(n).without(0)).map_err(|e| e.to_string())?;
                let sizes: Vec<usize> = (0..=g.top_degree()).map(|l| g.level(l).len()).collect();
                let expected: Vec<usize> = match f {
                    Family::D => (0..=2 * n - 2).map(|l| if l == n - 1 { 2 } else { 1 }).collect(),
                    _ => vec![1; 2 * n],
                };
                ensure(sizes == expected, || format!("{f}{n}: levels {sizes:?}"))?;
                let bad = parabolic_bad_primes(&rs(f, n), 0, DEFAULT_CAP).map_err(|e| e.to_string())?;
                let want: &[u64] = if f == Family::C { &[] } else { &[2] };
                ensure(bad.primes == want, || format!("{f}{n}: {:?}", bad.primes))?;
            }
        }
        Ok("B2..B8 {2}, C2..C8 {}, D3..D8 {2}".into())
    });
}

#[test]
fn criterion_07_stembridge() {
    run(7, "top coefficient closed form", None, || {
        let mut symbolic = 0;
        let mut numeric = 0;
        for (f, n) in all_types(6) {
            let rs = rs(f, n);
            let weyl = Weyl::new(rs.clone());
            let g = bruhat_graph(&weyl, &weyl.enumerate().map_err(|e| e.to_string())?);
            if n <= 3 {
                ensure(stembridge_symbolic(&rs, &g).equal, || format!("{f}{n} symbolic"))?;
                symbolic += 1;
            }
            let c = stembridge_rho(&rs, &g);
            ensure(c.equal, || format!("{f}{n} at rho: {} vs {}", c.lhs, c.rhs))?;
            numeric += 1;
        }
        Ok(format!("{symbolic} types symbolic, {numeric} types at rho"))
    });
}

#[test]
fn criterion_08_degeneration_suite() {
    run(8, "degeneration identities", Some(Duration::from_secs(60)), || {
        let mut count = 0;
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let rs = rs(f, n);
            let weyl = Weyl::new(rs.clone());
            let all = weyl.enumerate().unwrap();
            for o in all_orderings(n) {
                ensure(chain_product_check(&weyl, &all, &o).map_err(|e| e.to_string())?, || format!("{f}{n} {o:?} product"))?;
                let deg = Degeneration::new(&rs, &o).map_err(|e| e.to_string())?;
                let lemmas = deg.lemma_checks().map_err(|e| e.to_string())?;
                ensure(lemmas.holds(), || format!("{f}{n} {o:?}: {:?}", lemmas.failures))?;
                for k in deg.degrees() {
                    let c = deg.leading_coefficient_check(None, k).map_err(|e| e.to_string())?;
                    ensure(c.holds, || format!("{f}{n} {o:?} k={k}: {c:?}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} leading-coefficient identities"))
    });
}

fn degree_tuples(max_product: usize) -> Vec<Vec<usize>> {
    fn go(min: usize, room: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for d in min..=room {
            cur.push(d);
            go(d, room / d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, max_product, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_09_monomial_ci() {
    run(9, "monomial complete intersections", None, || {
        let primes = [2u32, 3, 5, 7, 11, 13, 17, 19, 23];
        let mut checked = 0;
        for t in degree_tuples(256) {
            let s: usize = t.iter().map(|d| d - 1).sum();
            for &p in primes.iter().filter(|&&p| p as usize > s) {
                let r = monomial_ci_hlp(&t, p, &vec![1; t.len()]).map_err(|e| e.to_string())?;
                ensure(r.is_yes(), || format!("{t:?} at p={p}"))?;
                checked += 1;
            }
        }
        let bad = monomial_ci_hlp(&[2, 2], 2, &[1, 1]).map_err(|e| e.to_string())?;
        ensure(!bad.is_yes() && bad.failing_k == Some(2), || "(2,2) at p=2".into())?;
        let mut pairs = 0;
        for &p in &primes[1..] {
            for a in 0..p as usize {
                for b in 0..p as usize - a {
                    let td = tensor_decompose(a, b, p).map_err(|e| e.to_string())?;
                    let expected: Vec<(usize, usize)> =
                        (0..=a.min(b)).map(|i| (a + b - 2 * i, 1)).rev().collect();
                    ensure(td.holds() && td.dimension == (a + 1) * (b + 1), || format!("L({a})xL({b}) at p={p}"))?;
                    let mut got = td.summands.clone();
                    got.sort();
                    ensure(got == expected, || format!("L({a})xL({b}) at p={p}: {got:?}"))?;
                    pairs += 1;
                }
            }
        }
        Ok(format!("{checked} (tuple, p) cases Yes, (2,2)/2 No, {pairs} tensor products"))
    });
}

#[test]
fn criterion_10_main_theorem() {
    run(10, "degeneration argument spot checks", None, || {
        let opts = HlpOptions::default();
        let mut out = Vec::new();
        for (f, n, p) in [(Family::A, 3, 7), (Family::B, 3, 11), (Family::C, 3, 11), (Family::G, 2, 7), (Family::A, 4, 11)] {
            let rs = rs(f, n);
            let r = assemble_main_theorem(&rs, p, None, &opts).map_err(|e| e.to_string())?;
            ensure(r.applicable && r.is_yes() && r.consistent, || format!("{f}{n}/{p}"))?;
            witness_holds(&rs, &r.report).map_err(|e| format!("{f}{n}/{p}: {e}"))?;
            out.push(format!("{f}{n}/{p}"));
        }
        Ok(out.join(" "))
    });
}

#[test]
fn criterion_11_lefschetz_decomposition() {
    run(11, "D4 string plus singleton", None, || {
        let weyl = Weyl::new(rs(Family::D, 4));
        let (_, g) = parabolic_graph(&weyl, NodeSet::full(4).without(0)).map_err(|e| e.to_string())?;
        let a = g.vertex_by_name("321").ok_or("no 321")?;
        let b = g.vertex_by_name("421").ok_or("no 421")?;
        for p in [3u32, 5, 7, 11] {
            let eta: Vec<Fp> = (0..4).map(|i| Fp::new((i == 0) as i64, p)).collect();
            let dec = lefschetz_decomposition(&g, &edge_weights(&g, &eta)).map_err(|e| e.to_string())?;
            ensure(dec.string_degrees() == vec![6, 0], || format!("p={p}: {:?}", dec.string_degrees()))?;
            let single = dec.strings[1].primitive();
            let mid = &dec.strings[0].vectors[3];
            let support = |v: &[Fp]| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect::<Vec<_>>();
            let mut ab = vec![a, b];
            ab.sort();
            ensure(support(single) == ab && single[a] == -single[b], || format!("p={p}: singleton"))?;
            ensure(support(mid) == ab && mid[a] == mid[b], || format!("p={p}: string"))?;
        }
        Ok("P_321 - P_421 primitive, P_321 + P_421 on the string, p = 3, 5, 7, 11".into())
    });
}
