//! Lefschetz decomposition of a graded space into strings.

use serde::Serialize;

use crate::bruhatgraph::LabeledGraph;
use crate::error::{Error, Result};
use crate::exactalg::matrix::{nullspace, rank};
use crate::exactalg::Matrix;
use crate::scalar::Field;
use crate::schubert::{chevalley_apply, power_matrix};

/// `p, eta p, ..., eta^k p` for a primitive vector `p` at level `(d - k) / 2`.
#[derive(Clone, Debug)]
pub struct LefschetzString<F> {
    pub level: usize,
    pub k: usize,
    /// `vectors[l] = eta^l p`, dense over all vertices.
    pub vectors: Vec<Vec<F>>,
}

impl<F> LefschetzString<F> {
    pub fn primitive(&self) -> &[F] {
        &self.vectors[0]
    }

    /// Number of basis vectors, `k + 1`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzDecomposition<F> {
    pub top_degree: usize,
    pub strings: Vec<LefschetzString<F>>,
}

/// Shape of a decomposition: `(k, r_k)` with `r_k` strings of `k + 1` vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringShape {
    pub k: usize,
    pub count: usize,
}

impl<F: Field> LefschetzDecomposition<F> {
    /// The values `k` of all strings, largest first.
    pub fn string_degrees(&self) -> Vec<usize> {
        self.strings.iter().map(|s| s.k).collect()
    }

    pub fn shape(&self) -> Vec<StringShape> {
        let mut out: Vec<StringShape> = Vec::new();
        for s in &self.strings {
            match out.iter_mut().find(|x| x.k == s.k) {
                Some(x) => x.count += 1,
                None => out.push(StringShape { k: s.k, count: 1 }),
            }
        }
        out
    }

    /// All string vectors, string by string.
    pub fn basis(&self) -> Vec<&[F]> {
        self.strings.iter().flat_map(|s| s.vectors.iter().map(|v| v.as_slice())).collect()
    }
}

/// Decompose the space spanned by the vertices of `graph` under the degree-one
/// map with edge weights `weights`.
///
/// Fails with [`Error::NoHlp`] naming the first degree `k` (largest first)
/// where `eta^k` is not an isomorphism.
pub fn lefschetz_decomposition<F: Field>(graph: &LabeledGraph, weights: &[F]) -> Result<LefschetzDecomposition<F>> {
    let d = graph.top_degree();
    let n = graph.num_vertices();
    for j in 0..=d / 2 {
        let k = d - 2 * j;
        if k == 0 {
            continue;
        }
        let m = power_matrix(graph, weights, k).expect("opposite levels");
        if !m.is_square() || rank(&m) != m.rows() {
            return Err(Error::NoHlp(format!("eta^{k} is not an isomorphism")));
        }
    }
    let mut strings = Vec::new();
    for j in 0..=d / 2 {
        let k = d - 2 * j;
        let range = graph.level(j);
        let kernel: Vec<Vec<F>> = if j + k + 1 > d {
            (0..range.len())
                .map(|i| (0..range.len()).map(|c| if c == i { F::one() } else { F::zero() }).collect())
                .collect()
        } else {
            // rows are sources, so the kernel of the map is the left kernel
            let rows: Vec<Vec<F>> = range
                .clone()
                .map(|w| crate::schubert::power_from(graph, weights, w, k + 1))
                .collect();
            let cols = graph.level(j + k + 1).len();
            let m = Matrix::from_flat(rows.len(), cols, rows.into_iter().flatten().collect());
            nullspace(&m.transpose())
        };
        for c in kernel {
            let mut v = vec![F::zero(); n];
            for (i, x) in c.into_iter().enumerate() {
                v[range.start + i] = x;
            }
            let mut vectors = vec![v];
            for _ in 0..k {
                let next = chevalley_apply(graph, weights, vectors.last().unwrap());
                vectors.push(next);
            }
            if chevalley_apply(graph, weights, vectors.last().unwrap()).iter().any(|x| !x.is_zero()) {
                return Err(Error::Precondition(format!("primitive vector at level {j} is not killed by eta^{}", k + 1)));
            }
            strings.push(LefschetzString { level: j, k, vectors });
        }
    }
    let dec = LefschetzDecomposition { top_degree: d, strings };
    let total: usize = dec.strings.iter().map(|s| s.len()).sum();
    let basis = dec.basis();
    if total != n || rank(&Matrix::from_rows(basis.iter().map(|v| v.to_vec()).collect())) != n {
        return Err(Error::Precondition("strings do not form a basis".into()));
    }
    Ok(dec)
}
