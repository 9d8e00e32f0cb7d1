//! The top power of a weight against its closed product form.

use num_bigint::BigInt;
use serde::Serialize;

use crate::bruhatgraph::LabeledGraph;
use crate::rootdata::RootSystem;
use crate::scalar::Ring;
use crate::schubert::{edge_weights, pairing, symbolic_weight, top_coefficient};

#[derive(Clone, Debug, Serialize)]
pub struct StembridgeCheck<R> {
    /// `C_{e,w_0}(lambda)` from the graph.
    pub lhs: R,
    /// `|Phi+|! prod <lambda, alpha^vee> / ht(alpha)`.
    pub rhs: R,
    pub equal: bool,
}

/// The closed form `|Phi+|! prod_{alpha > 0} <lambda, alpha^vee> / ht(alpha)`.
pub fn stembridge_formula<R: Ring>(rs: &RootSystem, lambda: &[R]) -> R {
    rs.coroots()
        .iter()
        .fold(R::one(), |acc, c| acc * pairing(lambda, c))
        .scale_big(&rs.stembridge_multinomial())
}

/// Compare the top coefficient of `lambda^d . P_e` on `graph` with the closed form.
pub fn stembridge_check<R: Ring>(rs: &RootSystem, graph: &LabeledGraph, lambda: &[R]) -> StembridgeCheck<R> {
    let lhs = top_coefficient(graph, &edge_weights(graph, lambda));
    let rhs = stembridge_formula(rs, lambda);
    let equal = lhs == rhs;
    StembridgeCheck { lhs, rhs, equal }
}

/// The check with `lambda = sum x_s varpi_s` over the integers.
pub fn stembridge_symbolic(
    rs: &RootSystem,
    graph: &LabeledGraph,
) -> StembridgeCheck<crate::exactalg::MultiPoly<BigInt>> {
    stembridge_check(rs, graph, &symbolic_weight::<BigInt>(rs.rank(), None))
}

/// The check at `lambda = rho`.
pub fn stembridge_rho(rs: &RootSystem, graph: &LabeledGraph) -> StembridgeCheck<BigInt> {
    stembridge_check(rs, graph, &vec![BigInt::from(1); rs.rank()])
}
