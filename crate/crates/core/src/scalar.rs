//! Coefficient domains.
//!
//! Everything above this module is written against [`Ring`] (and [`Field`]
//! where division is required), so the same Chevalley iteration and the same
//! determinant code run over `BigInt`, a prime field, an extension field, or
//! polynomials with any of those as coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactalg::matrix::{self, Matrix};

/// A commutative ring with identity and exact arithmetic.
///
/// `zero()`/`one()` come from `num-traits`. Types whose arithmetic depends on
/// runtime data (a modulus, an extension field) return context-free constants
/// from those constructors; the constants adopt the context of whatever they
/// are combined with.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self · k` for a machine integer `k`.
    fn scale(&self, k: i64) -> Self;

    /// `self · k` for an arbitrary-precision integer `k`.
    fn scale_big(&self, k: &BigInt) -> Self;

    /// Determinant of a square matrix. The default is division-free.
    fn determinant(m: &Matrix<Self>) -> Self {
        matrix::det_division_free(m)
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    /// Characteristic, or 0 when the element carries no context yet.
    fn characteristic(&self) -> u64;
}

/// Rings supporting exact division (used by fraction-free elimination).
pub trait ExactDiv: Ring {
    /// `self / other` when `other` divides `self`, else `None`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn scale(&self, k: i64) -> Self {
        self * k
    }

    fn scale_big(&self, k: &BigInt) -> Self {
        self * k
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        matrix::det_bareiss(m)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

/// Element of the prime field `F_p`, `p < 2^31`.
///
/// A modulus of 0 marks an integer constant that has not met a field element
/// yet (produced by `zero()`, `one()` and scaling those).
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u32,
}

#[inline]
fn reduce(v: i64, p: u32) -> i64 {
    if p == 0 {
        v
    } else {
        v.rem_euclid(p as i64)
    }
}

#[inline]
fn join(a: u32, b: u32) -> u32 {
    if a == 0 {
        b
    } else {
        debug_assert!(b == 0 || a == b, "mixing F_{a} and F_{b}");
        a
    }
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        assert!(p >= 2, "modulus must be a prime");
        Fp {
            value: reduce(value, p),
            modulus: p,
        }
    }

    pub fn from_big(value: &BigInt, p: u32) -> Self {
        let r = value.mod_floor(&BigInt::from(p));
        Fp::new(r.to_i64().expect("residue fits"), p)
    }

    /// Canonical representative in `0..p` (or the raw integer for a constant).
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp {
            value: 1,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let p = join(self.modulus, other.modulus);
        reduce(self.value, p) == reduce(other.value, p)
    }
}

impl Eq for Fp {}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        let p = join(self.modulus, rhs.modulus);
        Fp {
            value: reduce(reduce(self.value, p) + reduce(rhs.value, p), p),
            modulus: p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        let p = join(self.modulus, rhs.modulus);
        Fp {
            value: reduce(reduce(self.value, p) - reduce(rhs.value, p), p),
            modulus: p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        let p = join(self.modulus, rhs.modulus);
        Fp {
            value: reduce(reduce(self.value, p) * reduce(rhs.value, p), p),
            modulus: p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: reduce(-self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

impl Ring for Fp {
    fn scale(&self, k: i64) -> Self {
        let p = self.modulus;
        Fp {
            value: reduce(self.value * reduce(k, p), p),
            modulus: p,
        }
    }

    fn scale_big(&self, k: &BigInt) -> Self {
        if self.modulus == 0 {
            let k = k.to_i64().expect("integer constant out of range without a modulus");
            return self.scale(k);
        }
        *self * Fp::from_big(k, self.modulus)
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        matrix::det_gauss(m)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            return match self.value {
                1 | -1 => Some(*self),
                _ => None,
            };
        }
        Some(self.pow(self.modulus as u64 - 2))
    }

    fn characteristic(&self) -> u64 {
        self.modulus as u64
    }
}

/// Reduce an integer into `F_p`.
pub fn reduce_big(value: &BigInt, p: u32) -> Fp {
    Fp::from_big(value, p)
}

/// True when `n` is a prime (trial division, intended for small moduli).
pub fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_adopt_modulus() {
        let a = Fp::new(3, 5);
        assert_eq!(a + Fp::one(), Fp::new(4, 5));
        assert_eq!(Fp::zero() - a, Fp::new(2, 5));
        assert_eq!(Fp::one().scale(7) * a, Fp::new(1, 5));
        assert_eq!(Fp::new(0, 7), Fp::zero());
    }

    #[test]
    fn inverse_mod_p() {
        for p in [2u32, 3, 5, 7, 31] {
            for v in 1..p as i64 {
                let a = Fp::new(v, p);
                assert_eq!(a * a.inv().unwrap(), Fp::new(1, p));
            }
        }
        assert!(Fp::new(0, 5).inv().is_none());
    }

    #[test]
    fn reduction_is_a_ring_morphism() {
        let a = BigInt::from(-123456789i64);
        let b = BigInt::from(987654321i64);
        for p in [3u32, 5, 13, 53] {
            assert_eq!(reduce_big(&(&a * &b), p), reduce_big(&a, p) * reduce_big(&b, p));
            assert_eq!(reduce_big(&(&a + &b), p), reduce_big(&a, p) + reduce_big(&b, p));
        }
    }
}
