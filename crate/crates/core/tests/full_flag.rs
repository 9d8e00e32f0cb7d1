use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use hlp_core::bruhatgraph::{bruhat_graph, LabeledGraph};
use hlp_core::lefschetz::{
    all_orderings, assemble_main_theorem, determinant_at, determinant_mod_p, determinant_over_z, full_flag_hlp,
    stembridge_formula, Degeneration, HlpOptions,
};
use hlp_core::rootdata::{all_types, Family, RootSystem};
use hlp_core::schubert::{lefschetz_degrees, symbolic_weight};
use hlp_core::weyl::Weyl;
use hlp_core::{Fp, IntPoly, Ring};

const PRIMES: [u32; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn graph(rs: &RootSystem) -> LabeledGraph {
    let w = Weyl::new(rs.clone());
    bruhat_graph(&w, &w.enumerate().unwrap())
}

fn fp_point(coords: &[i64], p: u32) -> Vec<Fp> {
    coords.iter().map(|&c| Fp::new(c, p)).collect()
}

#[test]
fn large_characteristic_has_a_witness() {
    let opts = HlpOptions::default();
    for (f, n) in all_types(3) {
        let rs = RootSystem::build(f, n).unwrap();
        let g = graph(&rs);
        for &p in PRIMES.iter().filter(|&&p| p as usize > rs.num_positive()) {
            let r = full_flag_hlp(&rs, p, &opts).unwrap();
            assert!(r.is_yes(), "{f}{n} p={p}");
            let w = r.witness.expect("witness");
            if w.extension_degree == 1 {
                let coords: Vec<i64> = w.coordinates.iter().map(|c| c.parse().unwrap()).collect();
                let pt = fp_point(&coords, p);
                for k in lefschetz_degrees(&g) {
                    assert!(!determinant_at(&g, &pt, k).unwrap().is_zero(), "{f}{n} p={p} k={k}");
                }
            }
        }
    }
}

#[test]
fn degeneration_route_agrees_with_direct_route() {
    let opts = HlpOptions::default();
    for (f, n) in all_types(3) {
        let rs = RootSystem::build(f, n).unwrap();
        let p = *PRIMES.iter().find(|&&p| p as usize > rs.num_positive()).unwrap();
        for o in all_orderings(n) {
            let r = assemble_main_theorem(&rs, p, Some(&o), &opts).unwrap();
            assert!(r.consistent && r.is_yes(), "{f}{n} {o:?}");
        }
    }
}

#[test]
fn top_determinant_is_the_product_formula() {
    for (f, n) in all_types(3) {
        let rs = RootSystem::build(f, n).unwrap();
        let g = graph(&rs);
        let d = g.top_degree();
        let det = determinant_over_z(&g, d, None).unwrap();
        let formula = stembridge_formula(&rs, &symbolic_weight::<BigInt>(n, None));
        assert_eq!(det, formula, "{f}{n}");
    }
}

#[test]
fn lemma_identities_in_rank_three() {
    for f in [Family::A, Family::B, Family::C] {
        let rs = RootSystem::build(f, 3).unwrap();
        for o in all_orderings(3) {
            let deg = Degeneration::new(&rs, &o).unwrap();
            let rep = deg.lemma_checks().unwrap();
            assert!(rep.holds(), "{f}3 {o:?}: {:?}", rep.failures);
            for k in deg.degrees() {
                assert!(deg.leading_coefficient_check(None, k).unwrap().holds, "{f}3 {o:?} k={k}");
            }
        }
    }
}

/// For B3 and C3 at p = 5 the polynomial `D_7` survives reduction but has no
/// zero-free point in `F_5^3`; `D_5` is the first one that vanishes identically.
#[test]
fn b3_c3_obstruction_in_characteristic_five() {
    for f in [Family::B, Family::C] {
        let rs = RootSystem::build(f, 3).unwrap();
        let g = graph(&rs);
        assert!(!determinant_mod_p(&g, 5, 7, None).unwrap().is_zero());
        assert!(determinant_mod_p(&g, 5, 5, None).unwrap().is_zero());
        for idx in 0..125i64 {
            let pt = fp_point(&[idx % 5, idx / 5 % 5, idx / 25], 5);
            assert!(determinant_at(&g, &pt, 7).unwrap().is_zero());
        }
        assert_eq!(full_flag_hlp(&rs, 5, &HlpOptions::default()).unwrap().failing_k, Some(5));
    }
    let f4 = RootSystem::build(Family::F, 4).unwrap();
    assert!(determinant_mod_p(&graph(&f4), 5, 22, None).unwrap().is_zero());
}

#[test]
fn b2_middle_determinant_is_a_square() {
    let g = graph(&RootSystem::build(Family::B, 2).unwrap());
    // a short, b long
    let (a, b) = (IntPoly::var(1), IntPoly::var(0));
    let q = a.clone() * a.clone() + (a.clone() * b.clone()).scale(2) + (b.clone() * b).scale(2);
    let d2 = determinant_over_z(&g, 2, None).unwrap();
    assert!(d2 == q.clone() * q.clone() || d2 == -(q.clone() * q));
}

fn small_type() -> impl Strategy<Value = (Family, usize)> {
    prop::sample::select(all_types(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn numeric_route_matches_symbolic_route(
        (f, n) in small_type(),
        p in prop::sample::select(PRIMES.to_vec()),
        coords in prop::collection::vec(0i64..31, 3),
        pick in 0usize..8,
    ) {
        let rs = RootSystem::build(f, n).unwrap();
        let g = graph(&rs);
        let ks = lefschetz_degrees(&g);
        let k = ks[pick % ks.len()];
        let pt = fp_point(&coords[..n], p);
        let sym = determinant_mod_p(&g, p, k, None).unwrap();
        prop_assert_eq!(sym.evaluate(&pt, |c| *c), determinant_at(&g, &pt, k).unwrap());
    }

    #[test]
    fn packed_route_is_reduction_over_z(
        (f, n) in small_type(),
        p in prop::sample::select(PRIMES.to_vec()),
        pick in 0usize..8,
    ) {
        let rs = RootSystem::build(f, n).unwrap();
        let g = graph(&rs);
        let ks = lefschetz_degrees(&g);
        let k = ks[pick % ks.len()];
        let z = determinant_over_z(&g, k, None).unwrap();
        let reduced = z.map_coeffs(|c: &BigInt| {
            let r: BigInt = ((c % p) + p) % p;
            Fp::new(i64::try_from(r).unwrap(), p)
        });
        prop_assert_eq!(reduced, determinant_mod_p(&g, p, k, None).unwrap());
    }
}
