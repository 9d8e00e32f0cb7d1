//! Sparse multivariate polynomials in at most eight variables.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration is
//! in lexicographic order with `x1 > x2 > ... > x8` and the last entry is the
//! leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::matrix::{self, Matrix};
use crate::scalar::Ring;

/// Maximum number of variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector; index 0 is `x1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.0;
        m[i] = e;
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial with coefficients in `R`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        MultiPoly { terms }
    }

    /// The variable `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), R::one())
    }

    pub fn term(m: Monomial, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, other: &Self, m: &Monomial, c: &R) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc.clone() * c.clone());
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Leading term in lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, R)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Degree in `x_{i+1}`; `-1` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> i64 {
        self.terms
            .keys()
            .map(|m| m.0[i] as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficient of `x_{i+1}^a`, as a polynomial not involving `x_{i+1}`.
    pub fn coeff_extract(&self, i: usize, a: u16) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == a)
                .map(|(m, c)| (m.with_exponent(i, 0), c.clone()))
                .collect(),
        }
    }

    /// True when every term has degree exactly `deg` in `x_{i+1}` (zero counts).
    pub fn is_homogeneous_in(&self, i: usize, deg: u16) -> bool {
        self.terms.keys().all(|m| m.0[i] == deg)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> MultiPoly<S> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Evaluate at `point`, embedding coefficients with `embed`.
    pub fn evaluate<S: Ring, F: Fn(&R) -> S>(&self, point: &[S], embed: F) -> S {
        let nvars = point.len();
        let mut powers: Vec<Vec<S>> = vec![vec![S::one()]; nvars];
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                assert!(i < nvars, "evaluation point has too few coordinates");
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().clone() * point[i].clone();
                    powers[i].push(next);
                }
                t = t * powers[i][e as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Number of variables actually occurring (highest index + 1).
    pub fn num_vars(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// `Some((c, m))` when the polynomial is a single term `c*m`.
    pub fn as_term(&self) -> Option<(R, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *m))
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MultiPoly<R> {
    /// Terms from the leading one down, e.g. `4*x1^3*x2 + x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if mag.contains('+') { format!("({mag})") } else { mag };
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> Add for MultiPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<R: Ring> Sub for MultiPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for MultiPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &small.terms {
            out.add_scaled(&large, m, c);
        }
        out
    }
}

impl<R: Ring> Zero for MultiPoly<R> {
    fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for MultiPoly<R> {
    fn one() -> Self {
        MultiPoly::constant(R::one())
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn scale(&self, k: i64) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c.scale(k))))
    }

    fn scale_big(&self, k: &BigInt) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c.scale_big(k))))
    }

    /// Constant matrices go to the coefficient ring's own determinant.
    fn determinant(m: &Matrix<Self>) -> Self {
        let consts: Option<Vec<R>> = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].as_constant())
            .collect();
        match consts {
            Some(c) => {
                let cm = Matrix::from_flat(m.rows(), m.cols(), c);
                MultiPoly::constant(R::determinant(&cm))
            }
            None => matrix::det_division_free(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use proptest::prelude::*;

    type P = MultiPoly<BigInt>;

    fn x(i: usize) -> P {
        P::var(i)
    }

    fn c(v: i64) -> P {
        P::constant(BigInt::from(v))
    }

    #[test]
    fn lex_leading_term() {
        // x1*x2^5 > x2^9 > x1^0
        let f = x(0) * x(1).pow(5) + x(1).pow(9) + c(3);
        let (m, co) = f.leading_term().unwrap();
        assert_eq!(m, Monomial::from_exponents(&[1, 5]));
        assert_eq!(co, BigInt::from(1));
    }

    #[test]
    fn coefficient_extraction() {
        let f = x(0).pow(2) * x(1);
        assert_eq!(f.coeff_extract(0, 2), x(1));
        assert!(f.coeff_extract(0, 1).is_zero());
        assert_eq!(P::zero().degree_in(0), -1);
        assert_eq!(f.degree_in(1), 1);
    }

    #[test]
    fn expansion_of_a_product() {
        // 4ab(a+b)(a+2b) = 4a^3b + 12a^2b^2 + 8ab^3
        let a = x(0);
        let b = x(1);
        let f = c(4) * a.clone() * b.clone() * (a.clone() + b.clone()) * (a.clone() + c(2) * b.clone());
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.leading_term().unwrap().1, BigInt::from(4));
        assert_eq!(f.coefficient(&Monomial::from_exponents(&[2, 2])), BigInt::from(12));
        assert_eq!(f.to_string(), "4*x1^3*x2 + 12*x1^2*x2^2 + 8*x1*x2^3");
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = x(0) + x(1);
        let g = f.clone() - x(1);
        assert_eq!(g, x(0));
        assert!((f.clone() - f).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0u16..3, 0u16..3, 0u16..3, -5i64..6), 0..6).prop_map(|ts| {
            P::from_terms(
                ts.into_iter()
                    .map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), BigInt::from(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_homomorphism(f in small_poly(), g in small_poly(),
                                        pt in prop::collection::vec(-4i64..5, 3)) {
            let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
            let ev = |p: &P| p.evaluate(&pt, |c| c.clone());
            prop_assert_eq!(ev(&(f.clone() * g.clone())), ev(&f) * ev(&g));
            prop_assert_eq!(ev(&(f.clone() + g.clone())), ev(&f) + ev(&g));
        }

        #[test]
        fn reduction_mod_p_commutes_with_product(f in small_poly(), g in small_poly()) {
            let red = |p: &P| p.map_coeffs(|c| Fp::from_big(c, 7));
            prop_assert_eq!(red(&(f.clone() * g.clone())), red(&f) * red(&g));
        }
    }
}
