//! Representations of `sl2` in positive characteristic and the hard
//! Lefschetz property of monomial complete intersections.

use num_traits::Zero;
use serde::Serialize;

use crate::bruhatgraph::{Edge, LabeledGraph};
use crate::error::{Error, Result};
use crate::exactalg::matrix::{nullspace, rank, solve};
use crate::exactalg::Matrix;
use crate::lefschetz::decomposition::lefschetz_decomposition;
use crate::lefschetz::det::determinant_at;
use crate::lefschetz::fullflag::require_prime;
use crate::lefschetz::report::{fingerprint, DetRecord, DetStatus, HlReport, Method, Verdict, Witness};
use crate::scalar::{Fp, Ring};
use crate::schubert::{edge_weights, lefschetz_degrees};

/// A representation of `sl2` over `F_p` with diagonal `h`.
#[derive(Clone, Debug)]
pub struct Sl2Rep {
    pub p: u32,
    pub e: Matrix<Fp>,
    pub f: Matrix<Fp>,
    pub h: Matrix<Fp>,
    /// Integer eigenvalues of `h`, one per basis vector.
    pub weights: Vec<i64>,
}

fn fp(v: i64, p: u32) -> Fp {
    Fp::new(v, p)
}

fn commutator(a: &Matrix<Fp>, b: &Matrix<Fp>) -> Matrix<Fp> {
    a.mul(b).sub(&b.mul(a))
}

fn kron(a: &Matrix<Fp>, b: &Matrix<Fp>) -> Matrix<Fp> {
    let (r, c) = (a.rows() * b.rows(), a.cols() * b.cols());
    let mut out = Matrix::zeros(r, c);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

fn identity(n: usize, p: u32) -> Matrix<Fp> {
    Matrix::identity(n).map(|x: &Fp| fp(x.value(), p))
}

impl Sl2Rep {
    /// `L(m)` with basis `v_0, ..., v_m` of weights `m, m - 2, ..., -m`:
    /// `e v_k = (m - k + 1) v_{k-1}`, `f v_k = (k + 1) v_{k+1}`.
    pub fn irreducible(m: usize, p: u32) -> Result<Sl2Rep> {
        require_prime(p)?;
        if p == 2 {
            return Err(Error::Precondition("sl2 modules are built only in odd characteristic".into()));
        }
        if m >= p as usize {
            return Err(Error::Precondition(format!("highest weight {m} must be below p = {p}")));
        }
        let n = m + 1;
        let mut e = Matrix::filled(n, n, fp(0, p));
        let mut f = Matrix::filled(n, n, fp(0, p));
        let mut h = Matrix::filled(n, n, fp(0, p));
        let weights: Vec<i64> = (0..n).map(|k| m as i64 - 2 * k as i64).collect();
        for k in 0..n {
            h[(k, k)] = fp(weights[k], p);
            if k >= 1 {
                e[(k - 1, k)] = fp((m - k + 1) as i64, p);
            }
            if k + 1 < n {
                f[(k + 1, k)] = fp(k as i64 + 1, p);
            }
        }
        Ok(Sl2Rep { p, e, f, h, weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn relations_hold(&self) -> bool {
        commutator(&self.e, &self.f) == self.h
            && commutator(&self.h, &self.e) == self.e.scale(2)
            && commutator(&self.h, &self.f) == self.f.scale(-2)
    }

    /// `C = 2ef + 2fe + h^2`.
    pub fn casimir(&self) -> Matrix<Fp> {
        let ef = self.e.mul(&self.f).scale(2);
        let fe = self.f.mul(&self.e).scale(2);
        let hh = self.h.mul(&self.h);
        ef.add(&fe).add(&hh)
    }

    pub fn tensor(&self, other: &Sl2Rep) -> Sl2Rep {
        let p = self.p;
        let (ia, ib) = (identity(self.dim(), p), identity(other.dim(), p));
        let sum = |a: &Matrix<Fp>, b: &Matrix<Fp>| kron(a, &ib).add(&kron(&ia, b));
        let weights = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a + b))
            .collect();
        Sl2Rep {
            p,
            e: sum(&self.e, &other.e),
            f: sum(&self.f, &other.f),
            h: sum(&self.h, &other.h),
            weights,
        }
    }
}

/// `2ef + 2fe + h^2` acts on `L(m)` as the scalar `2m + m^2`.
pub fn casimir_scalar_check(m: usize, p: u32) -> Result<bool> {
    let l = Sl2Rep::irreducible(m, p)?;
    let c = (2 * m as i64 + (m as i64) * (m as i64)) % p as i64;
    Ok(l.relations_hold() && l.casimir() == identity(l.dim(), p).scale(c))
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorDecomposition {
    pub a: usize,
    pub b: usize,
    pub p: u32,
    /// `(m, multiplicity)`, ascending in `m`.
    pub summands: Vec<(usize, usize)>,
    pub dimension: usize,
    /// Each highest-weight vector generates a module of dimension `m + 1`.
    pub irreducible_spans: bool,
    /// Each Casimir eigenspace has dimension `multiplicity * (m + 1)`.
    pub casimir_eigenspaces: bool,
    /// The Casimir scalars `2m + m^2` of distinct summands differ mod `p`.
    pub casimir_separated: bool,
}

impl TensorDecomposition {
    pub fn holds(&self) -> bool {
        let total: usize = self.summands.iter().map(|(m, k)| (m + 1) * k).sum();
        total == self.dimension && self.irreducible_spans && self.casimir_eigenspaces && self.casimir_separated
    }
}

/// Split `L(a) (x) L(b)` by highest-weight vectors and Casimir eigenspaces.
pub fn tensor_decompose(a: usize, b: usize, p: u32) -> Result<TensorDecomposition> {
    if a + b >= p as usize {
        return Err(Error::Precondition(format!("a + b = {} must be below p = {p}", a + b)));
    }
    let v = Sl2Rep::irreducible(a, p)?.tensor(&Sl2Rep::irreducible(b, p)?);
    let dim = v.dim();
    let mut summands = Vec::new();
    let mut irreducible_spans = true;
    for w in (0..=(a + b) as i64).rev() {
        let basis: Vec<usize> = (0..dim).filter(|&i| v.weights[i] == w).collect();
        if basis.is_empty() {
            continue;
        }
        // e restricted to the weight space
        let restricted = Matrix::from_rows((0..dim).map(|r| basis.iter().map(|&c| v.e[(r, c)]).collect()).collect());
        let kernel = nullspace(&restricted);
        if kernel.is_empty() {
            continue;
        }
        for c in &kernel {
            let mut vec = vec![fp(0, p); dim];
            for (x, &i) in c.iter().zip(&basis) {
                vec[i] = *x;
            }
            let mut span = vec![vec.clone()];
            for _ in 0..w {
                let next = v.f.apply(span.last().unwrap());
                span.push(next);
            }
            let killed = v.f.apply(span.last().unwrap()).iter().all(|x| x.is_zero());
            irreducible_spans &= killed && rank(&Matrix::from_rows(span)) == w as usize + 1;
        }
        summands.push((w as usize, kernel.len()));
    }
    summands.sort();
    let cas = v.casimir();
    let id = identity(dim, p);
    let scalar = |m: usize| ((2 * m + m * m) % p as usize) as i64;
    let casimir_eigenspaces = summands.iter().all(|&(m, mult)| {
        let shifted = cas.sub(&id.scale(scalar(m)));
        dim - rank(&shifted) == mult * (m + 1)
    });
    let mut scalars: Vec<i64> = summands.iter().map(|&(m, _)| scalar(m)).collect();
    scalars.sort();
    scalars.dedup();
    Ok(TensorDecomposition {
        a,
        b,
        p,
        casimir_separated: scalars.len() == summands.len(),
        summands,
        dimension: dim,
        irreducible_spans,
        casimir_eigenspaces,
    })
}

/// `K[w_1, ..., w_n] / (w_1^{d_1}, ..., w_n^{d_n})` with its monomial basis,
/// graded by total degree; multiplication by `w_i` is an edge labeled by the
/// `i`-th unit vector.
#[derive(Clone, Debug)]
pub struct MonomialCi {
    degrees: Vec<usize>,
    exponents: Vec<Vec<usize>>,
    graph: LabeledGraph,
}

fn monomial_name(e: &[usize]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("w{}", i + 1) } else { format!("w{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl MonomialCi {
    pub fn new(degrees: &[usize]) -> Result<MonomialCi> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::Precondition("degrees must be positive".into()));
        }
        let n = degrees.len();
        let mut exponents: Vec<Vec<usize>> = vec![Vec::new()];
        for &d in degrees {
            exponents = exponents
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |k| {
                        let mut x = e.clone();
                        x.push(k);
                        x
                    })
                })
                .collect();
        }
        // by degree, then lexicographically from the largest power of w_1
        exponents.sort_by(|a, b| {
            let (da, db): (usize, usize) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index: std::collections::HashMap<&[usize], usize> =
            exponents.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
        let mut edges = Vec::new();
        for (s, e) in exponents.iter().enumerate() {
            for i in 0..n {
                if e[i] + 1 < degrees[i] {
                    let mut t = e.clone();
                    t[i] += 1;
                    let mut label = vec![0i32; n];
                    label[i] = 1;
                    edges.push(Edge {
                        source: s as u32,
                        target: index[t.as_slice()] as u32,
                        label: label.into_boxed_slice(),
                    });
                }
            }
        }
        let names = exponents.iter().map(|e| monomial_name(e)).collect();
        let lengths = exponents.iter().map(|e| e.iter().sum::<usize>() as u16).collect();
        let graph = LabeledGraph::new(n, names, lengths, edges)?;
        Ok(MonomialCi {
            degrees: degrees.to_vec(),
            exponents,
            graph,
        })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn exponents(&self) -> &[Vec<usize>] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `d = sum (d_i - 1)`.
    pub fn top_degree(&self) -> usize {
        self.degrees.iter().map(|d| d - 1).sum()
    }
}

fn coefficients(x: &[i64], p: u32, n: usize) -> Result<Vec<Fp>> {
    if x.len() != n {
        return Err(Error::Precondition(format!("{} coefficients for {n} generators", x.len())));
    }
    let pt: Vec<Fp> = x.iter().map(|&c| fp(c, p)).collect();
    if let Some(i) = pt.iter().position(|c| c.is_zero()) {
        return Err(Error::Precondition(format!("x{} vanishes mod {p}", i + 1)));
    }
    Ok(pt)
}

/// Determinant test for multiplication by `sum x_i w_i` on a monomial
/// complete intersection over `F_p`.
pub fn monomial_ci_hlp(degrees: &[usize], p: u32, x: &[i64]) -> Result<HlReport> {
    require_prime(p)?;
    let ci = MonomialCi::new(degrees)?;
    let pt = coefficients(x, p, degrees.len())?;
    let g = ci.graph();
    let mut records = Vec::new();
    let mut failing = None;
    for k in lefschetz_degrees(g) {
        let det = determinant_at(g, &pt, k)?;
        let zero = det.is_zero();
        records.push(DetRecord {
            k,
            size: g.level((g.top_degree() - k) / 2).len(),
            method: Method::Numeric,
            status: if zero { DetStatus::Zero } else { DetStatus::Nonzero },
            determinant: Some(det.value().to_string()),
            terms: None,
            error_bound: None,
            extension_degree: None,
        });
        if zero && failing.is_none() {
            failing = Some(k);
        }
    }
    let yes = failing.is_none();
    let shown: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    Ok(HlReport {
        subject: format!("monomial complete intersection ({})", shown.join(",")),
        characteristic: p,
        graph: "monomial basis".into(),
        top_degree: g.top_degree(),
        ordering: (1..=degrees.len()).collect(),
        records,
        verdict: if yes { Verdict::Yes } else { Verdict::No },
        failing_k: failing,
        witness: yes.then(|| {
            let gf: Vec<crate::exactalg::Gf> = pt.iter().map(|c| crate::exactalg::Gf::Int(c.value())).collect();
            let mut w = Witness::new(&gf);
            w.field = format!("F_{p}");
            w
        }),
        seed: 0,
        basis_fingerprint: fingerprint(g.names()),
        notes: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Structure {
    pub degrees: Vec<usize>,
    pub p: u32,
    pub dimension: usize,
    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` for the constructed `f`.
    pub relations_hold: bool,
    /// The `f` built from Lefschetz strings equals the sum of the factorwise lowering operators.
    pub f_matches_factors: bool,
    /// `(m, multiplicity)` read off the strings, ascending.
    pub summands: Vec<(usize, usize)>,
    /// The summands agree with iterated Clebsch-Gordan rules.
    pub summands_match: bool,
    pub all_below_p: bool,
}

impl Sl2Structure {
    pub fn holds(&self) -> bool {
        self.relations_hold && self.f_matches_factors && self.summands_match && self.all_below_p
    }
}

/// `L(a_1) (x) ... (x) L(a_r)` by repeated Clebsch-Gordan, as `(m, mult)`.
pub fn clebsch_gordan(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut cur: std::collections::BTreeMap<usize, usize> = [(0usize, 1usize)].into();
    for &b in parts {
        let mut next = std::collections::BTreeMap::new();
        for (&a, &mult) in &cur {
            for i in 0..=a.min(b) {
                *next.entry(a + b - 2 * i).or_insert(0) += mult;
            }
        }
        cur = next;
    }
    cur.into_iter().collect()
}

/// Build `e = sum x_i w_i`, `h = 2 sum k_i - d` and a lowering operator `f`
/// on a monomial complete intersection, and check the `sl2` structure.
///
/// `f` is determined by the Lefschetz strings of `e`: on a string
/// `p, e p, ..., e^k p` it sends `e^l p` to `l (k - l + 1) e^{l-1} p`.
pub fn sl2_structure_check(degrees: &[usize], p: u32, x: &[i64]) -> Result<Sl2Structure> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::Precondition("sl2 modules are built only in odd characteristic".into()));
    }
    let ci = MonomialCi::new(degrees)?;
    let d = ci.top_degree();
    if d >= p as usize {
        return Err(Error::Precondition(format!("sum of (d_i - 1) = {d} must be below p = {p}")));
    }
    let pt = coefficients(x, p, degrees.len())?;
    let g = ci.graph();
    let n = ci.dim();
    let weights = edge_weights(g, &pt);
    let mut e = Matrix::filled(n, n, fp(0, p));
    for (edge, w) in g.edges().iter().zip(&weights) {
        e[(edge.target as usize, edge.source as usize)] = *w;
    }
    let mut h = Matrix::filled(n, n, fp(0, p));
    for v in 0..n {
        h[(v, v)] = fp(2 * g.length(v) as i64 - d as i64, p);
    }
    let dec = lefschetz_decomposition(g, &weights)?;
    // columns: string vectors, and their images under f
    let mut basis_cols = Vec::with_capacity(n);
    let mut image_cols = Vec::with_capacity(n);
    for s in &dec.strings {
        for l in 0..=s.k {
            basis_cols.push(s.vectors[l].clone());
            image_cols.push(if l == 0 {
                vec![fp(0, p); n]
            } else {
                let c = (l * (s.k - l + 1)) as i64;
                s.vectors[l - 1].iter().map(|v| v.scale(c)).collect()
            });
        }
    }
    let b = Matrix::from_rows(basis_cols).transpose();
    let img = Matrix::from_rows(image_cols).transpose();
    // f = img * b^{-1}, row by row: f_row * b = img_row
    let bt = b.transpose();
    let mut f = Matrix::filled(n, n, fp(0, p));
    for r in 0..n {
        let row = solve(&bt, img.row(r)).ok_or_else(|| Error::Precondition("string basis is singular".into()))?;
        for (c, v) in row.into_iter().enumerate() {
            f[(r, c)] = v;
        }
    }
    let relations_hold =
        commutator(&e, &f) == h && commutator(&h, &e) == e.scale(2) && commutator(&h, &f) == f.scale(-2);
    // factorwise: on K[w]/(w^a) with e = x w, f w^k = k (a - k) / x w^{k-1}
    let index: std::collections::HashMap<&[usize], usize> =
        ci.exponents().iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut closed = Matrix::filled(n, n, fp(0, p));
    for (col, ex) in ci.exponents().iter().enumerate() {
        for i in 0..degrees.len() {
            let k = ex[i];
            if k == 0 {
                continue;
            }
            let mut t = ex.clone();
            t[i] -= 1;
            let inv = pt[i].pow(p as u64 - 2);
            let c = fp((k * (degrees[i] - k)) as i64, p) * inv;
            closed[(index[t.as_slice()], col)] = closed[(index[t.as_slice()], col)] + c;
        }
    }
    let mut summands: Vec<(usize, usize)> = dec.shape().into_iter().map(|s| (s.k, s.count)).collect();
    summands.sort();
    let parts: Vec<usize> = degrees.iter().map(|d| d - 1).collect();
    Ok(Sl2Structure {
        degrees: degrees.to_vec(),
        p,
        dimension: n,
        relations_hold,
        f_matches_factors: f == closed,
        summands_match: summands == clebsch_gordan(&parts),
        all_below_p: summands.iter().all(|&(m, _)| m < p as usize),
        summands,
    })
}
