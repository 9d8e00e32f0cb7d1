//! Integer factorization: trial division, Miller–Rabin, Pollard–Brent.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1 << 14;

fn small_primes(limit: u32) -> Vec<u32> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Deterministic for `n < 3.3e24` with these bases, probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 64;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    factor_into(d, out);
    factor_into(e, out);
}

/// Prime factorization of `|n|` as `prime -> exponent`; empty for `|n| <= 1`.
pub fn factorize(n: &BigInt) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.magnitude().clone();
    if m <= BigUint::one() {
        return out;
    }
    for p in small_primes(TRIAL_LIMIT) {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    factor_into(m, &mut out);
    out
}

/// Distinct prime divisors of `n`, ascending. Zero has no defined set and panics.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    assert!(n.sign() != Sign::NoSign, "prime divisors of zero");
    factorize(n).into_keys().collect()
}

/// Render `n` as `-2^3 * 5 * 13`.
pub fn format_factored(n: &BigInt) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let sign = if n.sign() == Sign::Minus { "-" } else { "" };
    let f = factorize(n);
    if f.is_empty() {
        return format!("{sign}1");
    }
    let parts: Vec<String> = f
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    format!("{sign}{}", parts.join(" * "))
}

/// Primes as `u64` where they fit.
pub fn to_u64_list(ps: &[BigUint]) -> Vec<u64> {
    ps.iter().filter_map(|p| p.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 97, 7919, 1_000_000_007, 2_305_843_009_213_693_951];
        for p in primes {
            assert!(is_probable_prime(&BigUint::from(p)), "{p}");
        }
        for c in [1u64, 4, 561, 1_000_000_007 * 3, 3_215_031_751] {
            assert!(!is_probable_prime(&BigUint::from(c)), "{c}");
        }
    }

    #[test]
    fn factor_large_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &q * 4u32);
        let f = factorize(&n);
        assert_eq!(f.get(&BigUint::from(2u32)), Some(&2));
        assert_eq!(f.get(&p), Some(&1));
        assert_eq!(f.get(&q), Some(&1));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_factored(&BigInt::from(-520)), "-2^3 * 5 * 13");
        assert_eq!(format_factored(&BigInt::from(1)), "1");
    }

    proptest! {
        #[test]
        fn product_of_factors_is_the_number(n in 1u64..u64::MAX) {
            let f = factorize(&BigInt::from(n));
            let mut prod = BigUint::one();
            for (p, e) in &f {
                prop_assert!(is_probable_prime(p));
                prod *= p.pow(*e);
            }
            prop_assert_eq!(prod, BigUint::from(n));
        }
    }
}
