use proptest::prelude::*;

use hlp_core::modularsl2::{clebsch_gordan, monomial_ci_hlp, sl2_structure_check, tensor_decompose, MonomialCi};

const PRIMES: [u32; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn tuple_and_prime() -> impl Strategy<Value = (Vec<usize>, u32)> {
    (prop::collection::vec(1usize..6, 1..4), prop::sample::select(PRIMES.to_vec())).prop_filter(
        "sum of d_i - 1 below p",
        |(d, p)| d.iter().map(|x| x - 1).sum::<usize>() < *p as usize,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonzero_coefficients_give_the_property(
        (d, p) in tuple_and_prime(),
        x in prop::collection::vec(1i64..100, 3),
    ) {
        let x: Vec<i64> = x[..d.len()].iter().map(|v| if v % p as i64 == 0 { v + 1 } else { *v }).collect();
        prop_assert!(monomial_ci_hlp(&d, p, &x).unwrap().is_yes());
    }

    #[test]
    fn sl2_structure_is_the_clebsch_gordan_series((d, p) in tuple_and_prime()) {
        let s = sl2_structure_check(&d, p, &vec![1; d.len()]).unwrap();
        prop_assert!(s.holds());
        let parts: Vec<usize> = d.iter().map(|x| x - 1).collect();
        prop_assert_eq!(s.summands, clebsch_gordan(&parts));
        prop_assert_eq!(s.dimension, MonomialCi::new(&d).unwrap().dim());
    }

    #[test]
    fn tensor_products_split_by_casimir(a in 0usize..12, b in 0usize..12, p in prop::sample::select(PRIMES.to_vec())) {
        prop_assume!(a + b < p as usize);
        let t = tensor_decompose(a, b, p).unwrap();
        prop_assert!(t.holds());
        prop_assert_eq!(t.summands, clebsch_gordan(&[a, b]));
    }
}

#[test]
fn zero_coefficient_is_refused() {
    assert!(monomial_ci_hlp(&[2, 3], 5, &[1, 0]).is_err());
    assert!(monomial_ci_hlp(&[2, 3], 5, &[1, 10]).is_err());
}

#[test]
fn small_characteristic_can_fail() {
    // (2, 2, 2) at p = 2: lambda^2 . 1 = 2 (w1 w2 + w1 w3 + w2 w3)
    let r = monomial_ci_hlp(&[2, 2, 2], 2, &[1, 1, 1]).unwrap();
    assert!(!r.is_yes());
    assert!(tensor_decompose(3, 2, 5).is_err());
}
