//! Chevalley action of weights on Schubert classes.
//!
//! A weight acts on a labeled graph by `lambda . P_w = sum <lambda, label> P_v`
//! over the edges `w -> v`; this covers the ordinary, parabolic and
//! degenerate actions alike.

use num_traits::Zero;

use crate::bruhatgraph::LabeledGraph;
use crate::exactalg::{Matrix, MultiPoly};
use crate::scalar::Ring;

/// `<lambda, c>` for `lambda` in the fundamental-weight basis.
pub fn pairing<R: Ring>(lambda: &[R], c: &[i32]) -> R {
    lambda
        .iter()
        .zip(c)
        .filter(|(_, &k)| k != 0)
        .fold(R::zero(), |acc, (x, &k)| acc + x.scale(k as i64))
}

/// `<lambda, label>` for every edge, in edge order.
pub fn edge_weights<R: Ring>(graph: &LabeledGraph, lambda: &[R]) -> Vec<R> {
    graph.edges().iter().map(|e| pairing(lambda, &e.label)).collect()
}

/// `lambda = sum x_j varpi_{ordering[j]}` with indeterminates `x_0, x_1, ...`.
///
/// Without an ordering, node `s` carries `x_s`.
pub fn symbolic_weight<R: Ring>(rank: usize, ordering: Option<&[usize]>) -> Vec<MultiPoly<R>> {
    let mut lambda = vec![MultiPoly::zero(); rank];
    for j in 0..rank {
        let node = ordering.map_or(j, |o| o[j]);
        lambda[node] = MultiPoly::var(j);
    }
    lambda
}

/// `lambda . class` where `weights` are the edge weights of `lambda`.
pub fn chevalley_apply<R: Ring>(graph: &LabeledGraph, weights: &[R], class: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); graph.num_vertices()];
    for (w, c) in class.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let base = graph.out_offset(w);
        for (k, e) in graph.out_edges(w).iter().enumerate() {
            let t = e.target as usize;
            let add = c.clone() * weights[base + k].clone();
            out[t] = std::mem::replace(&mut out[t], R::zero()) + add;
        }
    }
    out
}

/// Coefficients of `lambda^steps . P_source`, as a dense vector over the
/// level `length(source) + steps`.
pub fn power_from<R: Ring>(graph: &LabeledGraph, weights: &[R], source: usize, steps: usize) -> Vec<R> {
    let mut level = graph.length(source);
    let mut range = graph.level(level);
    let mut cur = vec![R::zero(); range.len()];
    cur[source - range.start] = R::one();
    for _ in 0..steps {
        let next_range = graph.level(level + 1);
        let mut next = vec![R::zero(); next_range.len()];
        for (off, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = range.start + off;
            let base = graph.out_offset(w);
            for (k, e) in graph.out_edges(w).iter().enumerate() {
                let t = e.target as usize - next_range.start;
                let add = c.clone() * weights[base + k].clone();
                next[t] = std::mem::replace(&mut next[t], R::zero()) + add;
            }
        }
        cur = next;
        range = next_range;
        level += 1;
    }
    cur
}

/// `C_{w,v}(lambda)`: the coefficient of `P_v` in `lambda^{l(v)-l(w)} . P_w`.
pub fn path_coefficient<R: Ring>(graph: &LabeledGraph, weights: &[R], w: usize, v: usize) -> R {
    let (lw, lv) = (graph.length(w), graph.length(v));
    if lv < lw {
        return R::zero();
    }
    let row = power_from(graph, weights, w, lv - lw);
    row[v - graph.level(lv).start].clone()
}

/// The matrix of `lambda^k` from level `(d-k)/2` to level `(d+k)/2`, rows
/// indexed by sources. `None` when `d - k` is odd or `k > d`.
pub fn power_matrix<R: Ring>(graph: &LabeledGraph, weights: &[R], k: usize) -> Option<Matrix<R>> {
    let d = graph.top_degree();
    if k > d || !(d - k).is_multiple_of(2) {
        return None;
    }
    let lo = graph.level((d - k) / 2);
    let cols = graph.level((d + k) / 2).len();
    let rows: Vec<Vec<R>> = lo.map(|w| power_from(graph, weights, w, k)).collect();
    let nrows = rows.len();
    Some(Matrix::from_flat(nrows, cols, rows.into_iter().flatten().collect()))
}

/// Values of `k` for which a Lefschetz determinant is defined: `0 < k <= d`, `d - k` even.
pub fn lefschetz_degrees(graph: &LabeledGraph) -> Vec<usize> {
    let d = graph.top_degree();
    (1..=d).filter(|k| (d - k).is_multiple_of(2)).collect()
}

/// Coefficient of the top class in `lambda^d . P_e`.
pub fn top_coefficient<R: Ring>(graph: &LabeledGraph, weights: &[R]) -> R {
    let d = graph.top_degree();
    let row = power_from(graph, weights, 0, d);
    row.into_iter().fold(R::zero(), |a, b| a + b)
}

/// `lambda^k` as a sum over paths, by explicit enumeration. Exponential; for tests.
pub fn path_sum_bruteforce<R: Ring>(graph: &LabeledGraph, weights: &[R], w: usize, v: usize) -> R {
    fn go<R: Ring>(g: &LabeledGraph, weights: &[R], at: usize, v: usize, acc: R, out: &mut R) {
        if at == v {
            *out = std::mem::replace(out, R::zero()) + acc;
            return;
        }
        if g.length(at) >= g.length(v) {
            return;
        }
        let base = g.out_offset(at);
        for (k, e) in g.out_edges(at).iter().enumerate() {
            go(g, weights, e.target as usize, v, acc.clone() * weights[base + k].clone(), out);
        }
    }
    let mut out = R::zero();
    go(graph, weights, w, v, R::one(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::bruhatgraph::{bruhat_graph, degeneration_chain};
    use crate::rootdata::{Family, RootSystem};
    use crate::weyl::Weyl;
    use num_bigint::BigInt;

    type P = MultiPoly<BigInt>;

    fn graph(f: Family, n: usize) -> (Weyl, crate::weyl::ElementSet, LabeledGraph) {
        let w = Weyl::new(RootSystem::build(f, n).unwrap());
        let all = w.enumerate().unwrap();
        let g = bruhat_graph(&w, &all);
        (w, all, g)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn a2_chevalley() {
        let (_, _, g) = graph(Family::A, 2);
        let lambda = symbolic_weight::<BigInt>(2, None);
        let weights = edge_weights(&g, &lambda);
        let mut pe = vec![P::zero(); 6];
        pe[0] = P::one();
        let out = chevalley_apply(&g, &weights, &pe);
        assert_eq!(out[1], P::var(0));
        assert_eq!(out[2], P::var(1));
        let mut top = vec![P::zero(); 6];
        top[5] = P::one();
        assert!(chevalley_apply(&g, &weights, &top).iter().all(|c| c.is_zero()));
        // varpi_s . P_e = P_s
        let ws = vec![big(1), big(0)];
        let w = edge_weights(&g, &ws);
        let mut e = vec![big(0); 6];
        e[0] = big(1);
        assert_eq!(chevalley_apply(&g, &w, &e), vec![big(0), big(1), big(0), big(0), big(0), big(0)]);
    }

    #[test]
    fn a2_top_coefficient() {
        let (_, _, g) = graph(Family::A, 2);
        let rho = edge_weights(&g, &[big(1), big(1)]);
        assert_eq!(path_coefficient(&g, &rho, 0, 5), big(6));
        assert_eq!(path_coefficient(&g, &rho, 3, 3), big(1));
        let lambda = symbolic_weight::<BigInt>(2, None);
        let weights = edge_weights(&g, &lambda);
        let c = path_coefficient(&g, &weights, 0, 5);
        assert_eq!(c, path_sum_bruteforce(&g, &weights, 0, 5));
        // 3 x1 x2 (x1 + x2)
        let (a, b) = (P::var(0), P::var(1));
        let want = (a.clone() * b.clone() * (a + b)).scale(3);
        assert_eq!(c, want);
    }

    #[test]
    fn iteration_matches_path_enumeration() {
        for (f, n) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let (_, _, g) = graph(f, n);
            let lambda = symbolic_weight::<BigInt>(n, None);
            let weights = edge_weights(&g, &lambda);
            for w in 0..g.num_vertices() {
                for v in 0..g.num_vertices() {
                    if g.length(v) < g.length(w) {
                        continue;
                    }
                    assert_eq!(
                        path_coefficient(&g, &weights, w, v),
                        path_sum_bruteforce(&g, &weights, w, v),
                        "{f}{n} {} {}",
                        g.name(w),
                        g.name(v)
                    );
                }
            }
        }
    }

    #[test]
    fn composition_through_a_level() {
        let (_, _, g) = graph(Family::B, 3);
        let weights = edge_weights(&g, &[big(2), big(-1), big(3)]);
        let top = g.num_vertices() - 1;
        let whole = path_coefficient(&g, &weights, 0, top);
        for l in 1..g.top_degree() {
            let split = g
                .level(l)
                .map(|u| path_coefficient(&g, &weights, 0, u) * path_coefficient(&g, &weights, u, top))
                .fold(big(0), |a, b| a + b);
            assert_eq!(split, whole);
        }
    }

    #[test]
    fn degenerate_coefficients() {
        let (w, all, _) = graph(Family::A, 2);
        let graphs = degeneration_chain(&w, &all, &[0, 1]).unwrap();
        let lambda = symbolic_weight::<BigInt>(2, Some(&[0, 1]));
        let g1 = &graphs[1];
        let weights = edge_weights(g1, &lambda);
        let t = g1.vertex_by_name("2").unwrap();
        let ts = g1.vertex_by_name("21").unwrap();
        assert!(path_coefficient(g1, &weights, t, ts).is_zero());
    }

    #[test]
    fn power_matrix_shapes() {
        let (_, _, g) = graph(Family::B, 2);
        assert_eq!(lefschetz_degrees(&g), vec![2, 4]);
        let weights = edge_weights(&g, &[big(1), big(1)]);
        let m = power_matrix(&g, &weights, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(power_matrix(&g, &weights, 3).is_none());
        assert_eq!(top_coefficient(&g, &weights), power_matrix(&g, &weights, 4).unwrap()[(0, 0)]);
    }
}
