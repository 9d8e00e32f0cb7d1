//! Maximal parabolic quotients: integer Lefschetz determinants of a single
//! fundamental weight, and the orderings of the simple reflections used to
//! chain them together.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::bruhatgraph::parabolic_graph;
use crate::error::{Error, Result};
use crate::exactalg::factor::{format_factored, prime_divisors, to_u64_list};
use crate::lefschetz::det::determinant_at;
use crate::rootdata::{Family, NodeSet, RootSystem};
use crate::schubert::lefschetz_degrees;
use crate::weyl::Weyl;

/// The ordering of the simple reflections whose successive maximal
/// parabolic factors each remove the first node of a type with known
/// behavior. Nodes are 0-based.
pub fn default_ordering(rs: &RootSystem) -> Vec<usize> {
    let n = rs.rank();
    match rs.family() {
        // 1, ..., n-3, n-1, n-2, n
        Some(Family::D) => {
            let mut o: Vec<usize> = (0..n - 3).collect();
            o.extend([n - 2, n - 3, n - 1]);
            o
        }
        // 1, 4, 3, 2
        Some(Family::F) => vec![0, 3, 2, 1],
        _ => (0..n).collect(),
    }
}

/// Parse a 1-based ordering such as `1,4,3,2`.
pub fn parse_ordering(s: &str, rank: usize) -> Result<Vec<usize>> {
    let nodes: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad node {t:?}"))))
        .collect::<Result<_>>()?;
    if nodes.iter().any(|&x| x == 0 || x > rank) {
        return Err(Error::Parse(format!("nodes must lie in 1..={rank}")));
    }
    let o: Vec<usize> = nodes.iter().map(|x| x - 1).collect();
    crate::weyl::check_ordering(&o, rank)?;
    Ok(o)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegerDeterminant {
    pub k: usize,
    pub size: usize,
    pub value: String,
    pub factored: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BadPrimes {
    pub subject: String,
    /// 1-based node whose fundamental weight acts.
    pub node: usize,
    pub positive_roots: usize,
    pub cosets: usize,
    pub top_degree: usize,
    pub determinants: Vec<IntegerDeterminant>,
    /// Primes dividing some determinant.
    pub primes: Vec<u64>,
    /// Degrees whose determinant vanishes over the integers (then every prime is bad).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vanishing: Vec<usize>,
}

/// Integer determinants of `varpi_node^k` on the cohomology of `G/P` for the
/// maximal parabolic omitting `node`, and the primes dividing them.
pub fn parabolic_bad_primes(rs: &RootSystem, node: usize, cap: u128) -> Result<BadPrimes> {
    let n = rs.rank();
    if node >= n {
        return Err(Error::Precondition(format!("node {} outside 1..={n}", node + 1)));
    }
    let weyl = Weyl::new(rs.clone()).with_cap(cap);
    let (set, graph) = parabolic_graph(&weyl, NodeSet::full(n).without(node))?;
    let lambda: Vec<BigInt> = (0..n).map(|i| BigInt::from((i == node) as i64)).collect();
    let mut determinants = Vec::new();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut vanishing = Vec::new();
    for k in lefschetz_degrees(&graph) {
        let size = graph.level((graph.top_degree() - k) / 2).len();
        let det = determinant_at(&graph, &lambda, k)?;
        if det.is_zero() {
            vanishing.push(k);
        } else {
            primes.extend(prime_divisors(&det));
        }
        determinants.push(IntegerDeterminant {
            k,
            size,
            value: det.to_string(),
            factored: format_factored(&det),
        });
    }
    primes.sort();
    primes.dedup();
    Ok(BadPrimes {
        subject: rs.name(),
        node: node + 1,
        positive_roots: rs.num_positive(),
        cosets: set.len(),
        top_degree: graph.top_degree(),
        determinants,
        primes: to_u64_list(&primes),
        vanishing,
    })
}
