//! Dense matrices over a [`Ring`] and exact determinants.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::scalar::{ExactDiv, Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn filled(rows: usize, cols: usize, value: R) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Row-major data of length `rows * cols`.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, R::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], R::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Matrix<R> {
        self.map(|a| a.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self · v` for a column vector.
    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Determinant using the ring's preferred algorithm.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        R::determinant(self)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

/// Largest size for which the subset expansion is used.
const EXPANSION_MAX: usize = 12;

/// Division-free determinant: Laplace expansion over column subsets for
/// small matrices, Berkowitz beyond.
pub fn det_division_free<R: Ring>(m: &Matrix<R>) -> R {
    if m.rows <= EXPANSION_MAX {
        det_expansion(m)
    } else {
        det_berkowitz(m)
    }
}

/// Row-by-row Laplace expansion, memoising minors by their column set.
///
/// After processing rows `0..r`, `layer[mask]` holds the minor on those rows
/// and the columns in `mask` (|mask| = r).
pub fn det_expansion<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows;
    assert!(m.is_square());
    assert!(n < 31, "expansion limited to n < 31");
    if n == 0 {
        return R::one();
    }
    let mut layer: Vec<(u32, R)> = vec![(0, R::one())];
    for r in 0..n {
        let mut next: rustc_hash::FxHashMap<u32, R> = Default::default();
        for (mask, minor) in &layer {
            if minor.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 || m[(r, c)].is_zero() {
                    continue;
                }
                // the new column sits after `above` columns already used
                let above = (mask >> c).count_ones();
                let term = minor.clone() * m[(r, c)].clone();
                let term = if above % 2 == 1 { -term } else { term };
                let new_mask = mask | (1 << c);
                let slot = next.entry(new_mask).or_insert_with(R::zero);
                let cur = std::mem::replace(slot, R::zero());
                *slot = cur + term;
            }
        }
        layer = next.into_iter().collect();
        layer.sort_by_key(|(mask, _)| *mask);
    }
    layer.pop().map_or_else(R::zero, |(_, v)| v)
}

/// Berkowitz's division-free characteristic polynomial algorithm; O(n^4).
pub fn det_berkowitz<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    // Characteristic polynomial coefficients of the trailing principal
    // submatrix, highest degree first; start from the bottom-right 1x1 block.
    let mut poly = vec![R::one(), -m[(n - 1, n - 1)].clone()];
    for start in (0..n - 1).rev() {
        let size = n - start; // size of the block including row `start`
        let a = m[(start, start)].clone();
        let row: Vec<R> = (start + 1..n).map(|j| m[(start, j)].clone()).collect();
        let mut col: Vec<R> = (start + 1..n).map(|i| m[(i, start)].clone()).collect();
        // items: 1, -a, -R C, -R A C, -R A^2 C, ...
        let mut items = vec![R::one(), -a];
        for step in 0..size - 1 {
            let rc = row
                .iter()
                .zip(&col)
                .fold(R::zero(), |acc, (r, c)| acc + r.clone() * c.clone());
            items.push(-rc);
            if step + 1 < size - 1 {
                col = (start + 1..n)
                    .map(|i| {
                        (start + 1..n)
                            .zip(&col)
                            .fold(R::zero(), |acc, (j, c)| acc + m[(i, j)].clone() * c.clone())
                    })
                    .collect();
            }
        }
        // new poly = T · poly, T lower-triangular Toeplitz (size+1) x size
        let mut next = Vec::with_capacity(size + 1);
        for i in 0..=size {
            let mut acc = R::zero();
            for (j, p) in poly.iter().enumerate() {
                if i >= j {
                    acc = acc + items[i - j].clone() * p.clone();
                }
            }
            next.push(acc);
        }
        poly = next;
    }
    let c = poly.pop().expect("non-empty");
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn det_bareiss<R: ExactDiv>(m: &Matrix<R>) -> R {
    let n = m.rows;
    assert!(m.is_square());
    if n == 0 {
        return R::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return R::zero();
            };
            for j in 0..n {
                let tmp = a[(k, j)].clone();
                a[(k, j)] = a[(swap, j)].clone();
                a[(swap, j)] = tmp;
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[(i, k)] = R::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Gaussian elimination over a field.
pub fn det_gauss<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    assert!(m.is_square());
    let mut a = m.clone();
    let mut det = F::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return F::zero();
        };
        if piv != k {
            for j in 0..n {
                let tmp = a[(k, j)].clone();
                a[(k, j)] = a[(piv, j)].clone();
                a[(piv, j)] = tmp;
            }
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det = det * pivot.clone();
        let inv = pivot.inv().expect("nonzero pivot is invertible");
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = a[(i, k)].clone() * inv.clone();
            for j in k..n {
                let v = a[(i, j)].clone() - factor.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    det
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(a: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..a.cols {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(piv, j)].clone();
                a[(piv, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in 0..a.cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in 0..a.cols {
                let v = a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{ v : m v = 0 }`, one vector per free column, in column order.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); a.cols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, if the system is consistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(r, m.cols)].clone();
    }
    Some(x)
}
