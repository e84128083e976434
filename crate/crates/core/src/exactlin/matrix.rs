use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Field, Scalar};
use crate::error::LinAlgError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

/// A consistent linear system: one solution plus the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Build from integer rows; all rows must have equal length.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Mat { field, rows, cols, data })
    }

    /// Column matrix from a vector.
    pub fn column(field: Field, v: &[Scalar]) -> Mat {
        Mat { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { self.field.one() } else { self.field.zero() }))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Scalar) -> Mat {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Scalar, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add_scaled");
        if self.field.is_zero(c) {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let f = self.field;
        match f {
            Field::Prime(p) => {
                let b: Vec<u64> = other.data.iter().map(|s| s.numer() as u64).collect();
                let limit = lazy_limit(p);
                let mut acc = vec![0u64; n * m];
                for i in 0..n {
                    let out = &mut acc[i * m..(i + 1) * m];
                    let mut pending = 0;
                    for l in 0..k {
                        let a = self.data[i * k + l].numer() as u64;
                        if a == 0 {
                            continue;
                        }
                        if pending == limit {
                            out.iter_mut().for_each(|o| *o %= p);
                            pending = 0;
                        }
                        for (o, &b) in out.iter_mut().zip(&b[l * m..(l + 1) * m]) {
                            *o += a * b;
                        }
                        pending += 1;
                    }
                }
                Mat { field: f, rows: n, cols: m, data: acc.into_iter().map(|v| f.from_i64((v % p) as i64)).collect() }
            }
            Field::Rationals => {
                let mut out = Mat::zeros(f, n, m);
                for i in 0..n {
                    for l in 0..k {
                        let a = self.get(i, l);
                        if f.is_zero(a) {
                            continue;
                        }
                        for j in 0..m {
                            let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                            out.set(i, j, v);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let f = self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rows `rs` and columns `cs` of `self`, in the given orders.
    pub fn select(&self, rs: &[usize], cs: &[usize]) -> Mat {
        Mat::from_fn(self.field, rs.len(), cs.len(), |i, j| self.get(rs[i], cs[j]))
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// Adds `c * b` to the block whose top-left corner is `(r0, c0)`.
    pub fn add_scaled_block(&mut self, r0: usize, c0: usize, c: Scalar, b: &Mat) {
        let f = self.field;
        if f.is_zero(c) {
            return;
        }
        for i in 0..b.rows {
            let dst = &mut self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + b.cols];
            for (a, &x) in dst.iter_mut().zip(&b.data[i * b.cols..(i + 1) * b.cols]) {
                *a = f.add(*a, f.mul(c, x));
            }
        }
    }

    pub fn block_diag(field: Field, blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        Mat::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols))
        })
    }

    pub fn echelon(&self) -> Echelon {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        Echelon { reduced, pivots }
    }

    /// Reduce to RREF in place and return pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        match self.field {
            Field::Prime(p) => {
                let mut buf: Vec<u64> = self.data.iter().map(|s| s.numer() as u64).collect();
                let pivots = rref_prime(&mut buf, self.rows, self.cols, p);
                let f = self.field;
                for (d, v) in self.data.iter_mut().zip(buf) {
                    *d = f.from_i64(v as i64);
                }
                pivots
            }
            Field::Rationals => rref_generic(self),
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().pivots.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let e = self.echelon();
        kernel_from_echelon(&e, self.cols)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        self.echelon().pivots.iter().map(|&j| self.col(j)).collect()
    }

    /// Solve `self * x = b`.
    ///
    /// A length mismatch is a usage error; an inconsistent system is
    /// `Ok(None)`.
    pub fn solve_linear(&self, b: &[Scalar]) -> Result<Option<Solution>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let f = self.field;
        let aug = self.hstack(&Mat::column(f, b));
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.reduced.get(r, self.cols);
        }
        let kernel = kernel_from_echelon(
            &Echelon { reduced: e.reduced.block(0, 0, e.reduced.rows, self.cols), pivots: e.pivots.clone() },
            self.cols,
        );
        Ok(Some(Solution { particular: x, kernel }))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Mat::identity(self.field, n));
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(e.reduced.block(0, n, n, n))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(a.get(r, c))) else {
                return f.zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = f.neg(det);
            }
            let piv = a.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for r in c + 1..n {
                let factor = f.mul(a.get(r, c), inv);
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(r, j), f.mul(factor, a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Is the square matrix nilpotent?
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows as u64).is_zero()
    }
}

fn kernel_from_echelon(e: &Echelon, cols: usize) -> Vec<Vec<Scalar>> {
    let f = e.reduced.field;
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in e.pivots.iter().enumerate() {
            v[pc] = f.neg(e.reduced.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// How many products below `p^2` can be added to a value below `p`
/// before a `u64` could overflow.
pub(crate) fn lazy_limit(p: u64) -> usize {
    let sq = (p - 1) * (p - 1);
    usize::try_from((u64::MAX - p) / sq.max(1)).unwrap_or(usize::MAX).max(1)
}

fn rref_prime(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let factor = row[c];
            if factor == 0 {
                return;
            }
            let m = p - factor;
            for j in c..cols {
                row[j] = (row[j] + m * pivot_row[j]) % p;
            }
        };
        before.chunks_mut(cols).for_each(eliminate);
        after.chunks_mut(cols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

fn rref_generic(m: &mut Mat) -> Vec<usize> {
    let f = m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(pr, r);
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if f.is_zero(factor) {
                continue;
            }
            for j in c..cols {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.display(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::zeros(q(), 0, 0).rank(), 0);
        assert_eq!(Mat::identity(q(), 2).rank(), 2);
        assert_eq!(Mat::from_i64_rows(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(q(), 3).kernel_basis().is_empty());
        assert_eq!(Mat::zeros(q(), 2, 3).kernel_basis().len(), 3);
        let k = Mat::from_i64_rows(q(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        let f = q();
        assert_eq!(f.add(k[0][0], k[0][1]), f.zero());
        assert!(!f.is_zero(k[0][0]));
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let s = Mat::identity(f, 2).solve_linear(&[f.from_i64(1), f.from_i64(2)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![f.from_i64(1), f.from_i64(2)]);
        assert!(s.kernel.is_empty());

        let s = Mat::from_i64_rows(f, &[&[1, 1]]).solve_linear(&[f.zero()]).unwrap().unwrap();
        assert_eq!(s.particular, vec![f.zero(), f.zero()]);
        assert_eq!(s.kernel.len(), 1);

        assert_eq!(Mat::from_i64_rows(f, &[&[0]]).solve_linear(&[f.one()]).unwrap(), None);
        assert!(matches!(
            Mat::identity(f, 2).solve_linear(&[f.one()]),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_determinant_agree() {
        for field in [q(), Field::Prime(101)] {
            let m = Mat::from_i64_rows(field, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
            let inv = m.inverse().unwrap();
            assert!(m.mul(&inv).is_identity());
            assert_eq!(m.determinant(), field.from_i64(18));
            let singular = Mat::from_i64_rows(field, &[&[1, 2], &[2, 4]]);
            assert!(singular.inverse().is_none());
            assert_eq!(singular.determinant(), field.zero());
        }
    }
}
