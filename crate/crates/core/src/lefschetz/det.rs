//! Determinants of `lambda^k` between opposite levels of a graded graph.

use num_bigint::BigInt;
use serde::Serialize;

use crate::bruhatgraph::LabeledGraph;
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, MultiPoly, PackedSpace};
use crate::scalar::{Fp, Ring};
use crate::schubert::{edge_weights, power_matrix, symbolic_weight};

/// How determinants are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Symbolic for small ranks and small matrices, randomized otherwise.
    #[default]
    Auto,
    Symbolic,
    Pit,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "auto" => Ok(Mode::Auto),
            "symbolic" => Ok(Mode::Symbolic),
            "pit" => Ok(Mode::Pit),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Side length of the matrix of `lambda^k`, or `None` if `k` is out of range.
pub fn matrix_size(graph: &LabeledGraph, k: usize) -> Option<usize> {
    let d = graph.top_degree();
    if k > d || !(d - k).is_multiple_of(2) {
        return None;
    }
    Some(graph.level((d - k) / 2).len())
}

fn check_square(graph: &LabeledGraph, k: usize) -> Result<usize> {
    let d = graph.top_degree();
    let size = matrix_size(graph, k)
        .ok_or_else(|| Error::Precondition(format!("k = {k} is not a Lefschetz degree for top degree {d}")))?;
    let other = graph.level((d + k) / 2).len();
    if size != other {
        return Err(Error::Precondition(format!(
            "levels {} and {} have sizes {size} and {other}",
            (d - k) / 2,
            (d + k) / 2
        )));
    }
    Ok(size)
}

/// `D_k` at a point `lambda` (fundamental-weight coordinates by node).
pub fn determinant_at<R: Ring>(graph: &LabeledGraph, lambda: &[R], k: usize) -> Result<R> {
    check_square(graph, k)?;
    let weights = edge_weights(graph, lambda);
    Ok(power_matrix(graph, &weights, k).expect("checked degree").det())
}

/// The matrix of `lambda^k` at a point.
pub fn matrix_at<R: Ring>(graph: &LabeledGraph, lambda: &[R], k: usize) -> Result<Matrix<R>> {
    check_square(graph, k)?;
    let weights = edge_weights(graph, lambda);
    Ok(power_matrix(graph, &weights, k).expect("checked degree"))
}

/// `D_k` over the integers with `x_j` attached to node `ordering[j]`.
pub fn determinant_over_z(graph: &LabeledGraph, k: usize, ordering: Option<&[usize]>) -> Result<MultiPoly<BigInt>> {
    let lambda = symbolic_weight::<BigInt>(graph.rank(), ordering);
    determinant_at(graph, &lambda, k)
}

/// `D_k` modulo `p`, computed in dense packed form.
///
/// Entries are propagated level by level as homogeneous polynomials of
/// degree `k`, then combined by subset expansion.
pub fn determinant_mod_p(graph: &LabeledGraph, p: u32, k: usize, ordering: Option<&[usize]>) -> Result<MultiPoly<Fp>> {
    let size = check_square(graph, k)?;
    let n = graph.rank();
    let d = graph.top_degree();
    let node = |j: usize| ordering.map_or(j, |o| o[j]);
    let lin: Vec<Vec<u32>> = graph
        .edges()
        .iter()
        .map(|e| (0..n).map(|j| e.label[node(j)].rem_euclid(p as i32) as u32).collect())
        .collect();
    let space = PackedSpace::new(p, n, k)?;
    let lo = graph.level((d - k) / 2);
    let mut entries = Vec::with_capacity(size * size);
    for source in lo {
        let mut level = graph.length(source);
        let mut range = graph.level(level);
        let mut cur: Vec<Option<Vec<u32>>> = vec![None; range.len()];
        cur[source - range.start] = Some(space.constant(1));
        for _ in 0..k {
            let next_range = graph.level(level + 1);
            let mut next: Vec<Option<Vec<u32>>> = vec![None; next_range.len()];
            for (off, c) in cur.iter().enumerate() {
                let Some(c) = c else { continue };
                let w = range.start + off;
                let base = graph.out_offset(w);
                for (i, e) in graph.out_edges(w).iter().enumerate() {
                    let slot = next[e.target as usize - next_range.start].get_or_insert_with(|| space.zero());
                    space.add_mul_linear(slot, c, &lin[base + i]);
                }
            }
            cur = next;
            range = next_range;
            level += 1;
        }
        entries.extend(cur.into_iter().map(|c| c.unwrap_or_else(|| space.zero())));
    }
    space.det(&entries, size, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhatgraph::bruhat_graph;
    use crate::rootdata::{Family, RootSystem};
    use crate::weyl::Weyl;
    use num_traits::Zero;

    fn graph(f: Family, n: usize) -> LabeledGraph {
        let w = Weyl::new(RootSystem::build(f, n).unwrap());
        let all = w.enumerate().unwrap();
        bruhat_graph(&w, &all)
    }

    #[test]
    fn packed_route_agrees_with_reduction_over_z() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::A, 3)] {
            let g = graph(f, n);
            for k in crate::schubert::lefschetz_degrees(&g) {
                let z = determinant_over_z(&g, k, None).unwrap();
                for p in [2u32, 3, 5, 7] {
                    let reduced = z.map_coeffs(|c| Fp::from_big(c, p));
                    assert_eq!(determinant_mod_p(&g, p, k, None).unwrap(), reduced, "{f}{n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn numeric_route_is_evaluation() {
        let g = graph(Family::B, 2);
        let z = determinant_over_z(&g, 2, None).unwrap();
        let pt = [BigInt::from(3), BigInt::from(-2)];
        let direct = determinant_at(&g, &pt, 2).unwrap();
        assert_eq!(z.evaluate(&pt, |c| c.clone()), direct);
    }

    #[test]
    fn out_of_range_degrees() {
        let g = graph(Family::A, 2);
        assert!(determinant_at(&g, &[BigInt::from(1), BigInt::from(1)], 2).is_err());
        assert!(determinant_at(&g, &[BigInt::from(1), BigInt::from(1)], 5).is_err());
        assert!(!determinant_at(&g, &[BigInt::from(1), BigInt::from(1)], 3).unwrap().is_zero());
    }
}
