//! Finite extension fields `F_{p^m} = F_p[t]/(f)` with `f` monic irreducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::matrix::{self, Matrix};
use crate::scalar::{Field, Fp, Ring};

/// Dense univariate polynomials over `F_p`, coefficients low degree first.
pub(crate) mod upoly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        trim(&mut a);
        while a.len() > dm {
            let lead = *a.last().unwrap();
            let shift = a.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let db = b.len() - 1;
        let inv = inv_mod(*b.last().unwrap(), p);
        trim(&mut a);
        while a.len() > db {
            let lead = (a.last().unwrap() * inv) % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    /// `base^e mod m` with `e` given as a big exponent in little-endian u64 limbs.
    pub fn pow_polymod(base: &[u64], e: &num_bigint::BigUint, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = rem_monic(mul(&acc, &acc, p), m, p);
            if e.bit(i) {
                acc = rem_monic(mul(&acc, base, p), m, p);
            }
        }
        acc
    }

    /// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let deg = f.len() - 1;
        if deg == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        let pb = num_bigint::BigUint::from(p);
        for _ in 0..deg / 2 {
            xp = pow_polymod(&xp, &pb, f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// The field `F_p[t]/(modulus)`.
#[derive(Debug, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    degree: usize,
    /// Monic modulus, low degree first, length `degree + 1`.
    modulus: Vec<u64>,
}

impl ExtField {
    /// Build `F_{p^m}`; the modulus is found by seeded random search.
    pub fn new(p: u32, degree: usize, seed: u64) -> Arc<ExtField> {
        assert!(degree >= 1);
        let p64 = p as u64;
        if degree == 1 {
            return Arc::new(ExtField {
                p: p64,
                degree,
                modulus: vec![0, 1],
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ degree as u64);
        loop {
            let mut f: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..p64)).collect();
            if f[0] == 0 {
                continue;
            }
            f.push(1);
            if upoly::is_irreducible(&f, p64) {
                return Arc::new(ExtField {
                    p: p64,
                    degree,
                    modulus: f,
                });
            }
        }
    }

    /// Smallest extension degree `m` with `p^m > bound`.
    pub fn degree_exceeding(p: u32, bound: u64) -> usize {
        let mut q: u128 = p as u128;
        let mut m = 1;
        while q <= bound as u128 {
            q *= p as u128;
            m += 1;
        }
        m
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.degree as u32)
    }

    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> Gf {
        let v: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        let v = upoly::rem_monic(v, &self.modulus, self.p);
        Gf::Elem(self.clone(), pad(v, self.degree))
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> Gf {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.element(&[r])
    }

    pub fn from_fp(self: &Arc<Self>, v: Fp) -> Gf {
        self.from_int(v.value())
    }

    /// The generator `t` of the extension.
    pub fn generator(self: &Arc<Self>) -> Gf {
        self.element(&[0, 1])
    }

    pub fn random<R: Rng>(self: &Arc<Self>, rng: &mut R) -> Gf {
        let c: Vec<u64> = (0..self.degree).map(|_| rng.gen_range(0..self.p)).collect();
        self.element(&c)
    }

    /// Every element, for small fields.
    pub fn elements(self: &Arc<Self>) -> Vec<Gf> {
        let q = self.order().to_u64().expect("small field");
        (0..q)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(self.degree);
                for _ in 0..self.degree {
                    c.push(idx % self.p);
                    idx /= self.p;
                }
                self.element(&c)
            })
            .collect()
    }
}

fn pad(mut v: Vec<u64>, len: usize) -> Box<[u64]> {
    v.resize(len, 0);
    v.into_boxed_slice()
}

/// Element of an [`ExtField`]; `Int` is a context-free integer constant.
#[derive(Clone, Debug)]
pub enum Gf {
    Int(i64),
    Elem(Arc<ExtField>, Box<[u64]>),
}

impl Gf {
    pub fn field(&self) -> Option<&Arc<ExtField>> {
        match self {
            Gf::Int(_) => None,
            Gf::Elem(f, _) => Some(f),
        }
    }

    /// Coefficients in the power basis `1, t, t^2, ...`.
    pub fn coeffs(&self) -> Vec<u64> {
        match self {
            Gf::Int(v) => vec![*v as u64],
            Gf::Elem(_, c) => c.to_vec(),
        }
    }

    fn lift(&self, field: &Arc<ExtField>) -> Box<[u64]> {
        match self {
            Gf::Int(v) => {
                let mut c = vec![0u64; field.degree];
                c[0] = v.rem_euclid(field.p as i64) as u64;
                c.into_boxed_slice()
            }
            Gf::Elem(f, c) => {
                debug_assert!(Arc::ptr_eq(f, field) || **f == **field, "mixing extension fields");
                c.clone()
            }
        }
    }

    fn common(a: &Gf, b: &Gf) -> Option<Arc<ExtField>> {
        a.field().or(b.field()).cloned()
    }

    pub fn pow(&self, e: &BigInt) -> Gf {
        let mut acc = Gf::one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.clone() * acc;
            if e.bit(i) {
                acc = acc * self.clone();
            }
        }
        acc
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self) -> Gf {
        match self {
            Gf::Int(_) => self.clone(),
            Gf::Elem(f, _) => self.pow(&BigInt::from(f.p)),
        }
    }

    /// True when the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        match self {
            Gf::Int(_) => true,
            Gf::Elem(_, c) => c.iter().skip(1).all(|&x| x == 0),
        }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Gf) -> bool {
        match Gf::common(self, other) {
            None => match (self, other) {
                (Gf::Int(a), Gf::Int(b)) => a == b,
                _ => unreachable!(),
            },
            Some(f) => self.lift(&f) == other.lift(&f),
        }
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf::Int(v) => write!(f, "{v}"),
            Gf::Elem(_, c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| match i {
                        0 => format!("{x}"),
                        1 if x == 1 => "t".to_string(),
                        1 => format!("{x}*t"),
                        _ if x == 1 => format!("t^{i}"),
                        _ => format!("{x}*t^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        match Gf::common(&self, &rhs) {
            None => match (self, rhs) {
                (Gf::Int(a), Gf::Int(b)) => Gf::Int(a + b),
                _ => unreachable!(),
            },
            Some(f) => {
                let a = self.lift(&f);
                let b = rhs.lift(&f);
                let c: Vec<u64> = a.iter().zip(b.iter()).map(|(x, y)| (x + y) % f.p).collect();
                Gf::Elem(f, c.into_boxed_slice())
            }
        }
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        match self {
            Gf::Int(a) => Gf::Int(-a),
            Gf::Elem(f, c) => {
                let p = f.p;
                let c: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
                Gf::Elem(f, c.into_boxed_slice())
            }
        }
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self + (-rhs)
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        match Gf::common(&self, &rhs) {
            None => match (self, rhs) {
                (Gf::Int(a), Gf::Int(b)) => Gf::Int(a * b),
                _ => unreachable!(),
            },
            Some(f) => {
                let prod = upoly::mul(&self.lift(&f), &rhs.lift(&f), f.p);
                let r = upoly::rem_monic(prod, &f.modulus, f.p);
                let d = f.degree;
                Gf::Elem(f, pad(r, d))
            }
        }
    }
}

impl Zero for Gf {
    fn zero() -> Gf {
        Gf::Int(0)
    }

    fn is_zero(&self) -> bool {
        match self {
            Gf::Int(v) => *v == 0,
            Gf::Elem(_, c) => c.iter().all(|&x| x == 0),
        }
    }
}

impl One for Gf {
    fn one() -> Gf {
        Gf::Int(1)
    }
}

impl Ring for Gf {
    fn scale(&self, k: i64) -> Gf {
        self.clone() * Gf::Int(k)
    }

    fn scale_big(&self, k: &BigInt) -> Gf {
        match self {
            Gf::Int(_) => self.scale(k.to_i64().expect("constant without field context")),
            Gf::Elem(f, _) => {
                let r = k.mod_floor(&BigInt::from(f.p)).to_i64().unwrap();
                self.scale(r)
            }
        }
    }

    fn determinant(m: &Matrix<Gf>) -> Gf {
        matrix::det_gauss(m)
    }
}

impl Field for Gf {
    fn inv(&self) -> Option<Gf> {
        if self.is_zero() {
            return None;
        }
        match self {
            Gf::Int(v) if *v == 1 || *v == -1 => Some(self.clone()),
            Gf::Int(_) => None,
            Gf::Elem(f, _) => Some(self.pow(&(f.order() - 2))),
        }
    }

    fn characteristic(&self) -> u64 {
        self.field().map_or(0, |f| f.p)
    }
}
