//! Dense homogeneous polynomials over small prime fields.
//!
//! A homogeneous polynomial of known degree in `n` variables is stored with
//! the last variable dropped: exponents `(e_0, ..., e_{n-2})` are packed into
//! `sum e_i * base^(n-2-i)`. With `base` above every degree in play, packing
//! is additive, so multiplying monomials is adding indices.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::scalar::Fp;

/// Upper bound on the number of `u64` cells a determinant may allocate.
const DET_CELL_LIMIT: usize = 1 << 26;

#[derive(Clone, Debug)]
pub struct PackedSpace {
    p: u32,
    nvars: usize,
    len: usize,
    strides: Vec<usize>,
}

impl PackedSpace {
    pub fn new(p: u32, nvars: usize, max_degree: usize) -> Result<PackedSpace> {
        if p >= 1 << 16 {
            return Err(Error::Precondition(format!("packed arithmetic needs p < 65536, got {p}")));
        }
        if nvars == 0 {
            return Err(Error::Precondition("at least one variable".into()));
        }
        let base = max_degree + 1;
        let dims = nvars - 1;
        let len = (0..dims).try_fold(1usize, |acc, _| acc.checked_mul(base));
        let len = match len {
            Some(l) if l <= DET_CELL_LIMIT => l,
            _ => {
                return Err(Error::CapExceeded {
                    what: "dense polynomial storage".into(),
                    size: (base as u128).saturating_pow(dims as u32),
                    cap: DET_CELL_LIMIT as u128,
                })
            }
        };
        let strides = (0..dims).map(|i| base.pow((dims - 1 - i) as u32)).collect();
        Ok(PackedSpace {
            p,
            nvars,
            len,
            strides,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.len]
    }

    pub fn constant(&self, c: u32) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    /// `out += lin * inp` for a linear form with coefficients `lin` (mod p).
    pub fn add_mul_linear(&self, out: &mut [u32], inp: &[u32], lin: &[u32]) {
        let p = self.p;
        let last = lin[self.nvars - 1];
        for (idx, &c) in inp.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &stride) in self.strides.iter().enumerate() {
                if lin[i] != 0 {
                    let t = idx + stride;
                    out[t] = ((out[t] as u64 + c as u64 * lin[i] as u64) % p as u64) as u32;
                }
            }
            if last != 0 {
                out[idx] = ((out[idx] as u64 + c as u64 * last as u64) % p as u64) as u32;
            }
        }
    }

    fn exponents(&self, mut idx: usize) -> Vec<u16> {
        let mut e = vec![0u16; self.nvars];
        for (i, &s) in self.strides.iter().enumerate() {
            e[i] = (idx / s) as u16;
            idx %= s;
        }
        e
    }

    /// Unpack as a homogeneous polynomial of total degree `degree`.
    pub fn to_poly(&self, v: &[u32], degree: usize) -> MultiPoly<Fp> {
        let mut out = MultiPoly::zero();
        for (idx, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = self.exponents(idx);
            let used: usize = e.iter().map(|&x| x as usize).sum();
            debug_assert!(used <= degree);
            e[self.nvars - 1] = (degree - used) as u16;
            out.add_term(Monomial::from_exponents(&e), Fp::new(c as i64, self.p));
        }
        out
    }

    /// Pack a homogeneous polynomial.
    pub fn from_poly(&self, f: &MultiPoly<Fp>) -> Vec<u32> {
        let mut v = self.zero();
        for (m, c) in f.terms() {
            let idx: usize = (0..self.nvars - 1).map(|i| m.exponent(i) as usize * self.strides[i]).sum();
            v[idx] = c.value().rem_euclid(self.p as i64) as u32;
        }
        v
    }

    /// Move a vector packed in `from` into this space (same variables, larger base).
    pub fn reembed(&self, v: &[u32], from: &PackedSpace) -> Vec<(usize, u32)> {
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| {
                let e = from.exponents(idx);
                let j = (0..self.nvars - 1).map(|i| e[i] as usize * self.strides[i]).sum();
                (j, c)
            })
            .collect()
    }

    /// Determinant of an `m x m` matrix whose entries, packed in `self`, are
    /// homogeneous of degree `entry_degree`. Expansion over column subsets,
    /// one row at a time.
    pub fn det(&self, entries: &[Vec<u32>], m: usize, entry_degree: usize) -> Result<MultiPoly<Fp>> {
        assert_eq!(entries.len(), m * m);
        if m == 0 {
            return Ok(MultiPoly::constant(Fp::new(1, self.p)));
        }
        if m > 24 {
            return Err(Error::CapExceeded {
                what: "subset expansion of a polynomial determinant".into(),
                size: m as u128,
                cap: 24,
            });
        }
        let big = PackedSpace::new(self.p, self.nvars, entry_degree * m)?;
        let widest = (0..=m).map(|r| binomial(m, r)).max().unwrap();
        if widest.saturating_mul(big.len) > DET_CELL_LIMIT {
            return Err(Error::CapExceeded {
                what: "subset expansion of a polynomial determinant".into(),
                size: (widest as u128) * big.len as u128,
                cap: DET_CELL_LIMIT as u128,
            });
        }
        let sparse: Vec<Vec<(usize, u32)>> = entries.iter().map(|e| big.reembed(e, self)).collect();
        let p = self.p as u64;
        let mut prev: std::collections::HashMap<u32, Vec<u32>> = std::collections::HashMap::new();
        prev.insert(0, big.constant(1));
        let mut acc = vec![0u64; big.len];
        for r in 0..m {
            let mut next = std::collections::HashMap::new();
            for mask in subsets(m, r + 1) {
                acc.iter_mut().for_each(|x| *x = 0);
                let mut any = false;
                for (pos, c) in (0..m).filter(|&c| mask >> c & 1 == 1).enumerate() {
                    let entry = &sparse[r * m + c];
                    let minor = &prev[&(mask & !(1 << c))];
                    if entry.is_empty() {
                        continue;
                    }
                    // row r is the last row of the minor
                    let negate = (r + pos) % 2 == 1;
                    for (ib, &vb) in minor.iter().enumerate() {
                        if vb == 0 {
                            continue;
                        }
                        any = true;
                        let vb = if negate { p - vb as u64 } else { vb as u64 };
                        for &(ia, va) in entry {
                            acc[ia + ib] += va as u64 * vb;
                        }
                    }
                    // keep the accumulator far from overflow
                    acc.iter_mut().for_each(|x| *x %= p);
                }
                let out: Vec<u32> = if any {
                    acc.iter().map(|&x| (x % p) as u32).collect()
                } else {
                    big.zero()
                };
                next.insert(mask, out);
            }
            prev = next;
        }
        let full = (1u32 << m) - 1;
        Ok(big.to_poly(&prev[&full], entry_degree * m))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets(m: usize, size: usize) -> Vec<u32> {
    (0u32..1 << m).filter(|s| s.count_ones() as usize == size).collect()
}
