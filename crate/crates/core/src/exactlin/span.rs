//! Incrementally grown row spaces.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, Scalar};
use super::matrix::{inv_mod, lazy_limit, Mat};

/// A subspace of `k^width` grown one vector at a time, remembering how each
/// member is written in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    field: Field,
    width: usize,
    // Echelon rows (pivot entry 1, zero at earlier pivots) and their
    // expressions in the inserted vectors.
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

pub enum Membership {
    /// Already in the span, with coordinates over the inserted vectors.
    Inside(Vec<Scalar>),
    /// Added as inserted vector number `n`.
    Added(usize),
}

impl SpanTracker {
    pub fn new(field: Field, width: usize) -> SpanTracker {
        SpanTracker { field, width, rows: Vec::new(), inserted: 0 }
    }

    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    pub fn is_full(&self) -> bool {
        self.inserted == self.width
    }

    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let f = self.field;
        let mut w = v.to_vec();
        let mut coeffs = vec![f.zero(); self.inserted];
        for (p, row, combo) in &self.rows {
            let c = w[*p];
            if f.is_zero(c) {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row).skip(*p) {
                *x = f.sub(*x, f.mul(c, r));
            }
            for (x, &r) in coeffs.iter_mut().zip(combo) {
                *x = f.add(*x, f.mul(c, r));
            }
        }
        (w, coeffs)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).0.iter().all(|&x| self.field.is_zero(x))
    }

    /// Coordinates of `v` over the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (w, coeffs) = self.reduce(v);
        w.iter().all(|&x| self.field.is_zero(x)).then_some(coeffs)
    }

    pub fn insert(&mut self, v: &[Scalar]) -> Membership {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        let (mut w, coeffs) = self.reduce(v);
        let Some(p) = w.iter().position(|&x| !f.is_zero(x)) else {
            return Membership::Inside(coeffs);
        };
        let inv = f.inv(w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        let n = self.inserted;
        self.inserted += 1;
        for (_, _, combo) in self.rows.iter_mut() {
            combo.push(f.zero());
        }
        let mut combo: Vec<Scalar> = coeffs.iter().map(|&c| f.neg(f.mul(c, inv))).collect();
        combo.push(inv);
        self.rows.push((p, w, combo));
        Membership::Added(n)
    }
}

/// Row space grown incrementally, kept in echelon form; stops accepting once full.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    width: usize,
    store: Store,
}

// Rows are stored from their pivot onward, pivot entry 1, zero at the
// pivots of earlier rows.
#[derive(Clone, Debug)]
enum Store {
    Prime { p: u64, limit: usize, rows: Vec<(usize, Vec<u64>)> },
    Exact(Vec<(usize, Vec<Scalar>)>),
}

impl RowEchelon {
    pub fn new(field: Field, width: usize) -> RowEchelon {
        let store = match field {
            Field::Prime(p) => Store::Prime { p, limit: lazy_limit(p), rows: Vec::new() },
            Field::Rationals => Store::Exact(Vec::new()),
        };
        RowEchelon { field, width, store }
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Prime { rows, .. } => rows.len(),
            Store::Exact(rows) => rows.len(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width);
        self.insert_at(0, v)
    }

    /// Adds the vector that is `seg` on columns `lo..lo + seg.len()` and zero
    /// elsewhere; returns whether the rank grew.
    pub fn insert_at(&mut self, lo: usize, seg: &[Scalar]) -> bool {
        assert!(lo + seg.len() <= self.width);
        if self.is_full() {
            return false;
        }
        let f = self.field;
        let width = self.width;
        match &mut self.store {
            Store::Prime { p, limit, rows } => {
                let p = *p;
                let mut w = vec![0u64; width];
                for (x, s) in w[lo..].iter_mut().zip(seg) {
                    *x = s.numer() as u64;
                }
                let mut pending = 0;
                for (piv, row) in rows.iter() {
                    let c = w[*piv] % p;
                    if c == 0 {
                        continue;
                    }
                    if pending == *limit {
                        w.iter_mut().for_each(|x| *x %= p);
                        pending = 0;
                    }
                    let m = p - c;
                    for (x, &r) in w[*piv..].iter_mut().zip(row) {
                        *x += m * r;
                    }
                    pending += 1;
                }
                w.iter_mut().for_each(|x| *x %= p);
                let Some(piv) = w.iter().position(|&x| x != 0) else {
                    return false;
                };
                let inv = inv_mod(w[piv], p);
                let row: Vec<u64> = w[piv..].iter().map(|&x| x * inv % p).collect();
                rows.push((piv, row));
                true
            }
            Store::Exact(rows) => {
                let mut w = vec![f.zero(); width];
                w[lo..lo + seg.len()].copy_from_slice(seg);
                for (piv, row) in rows.iter() {
                    let c = w[*piv];
                    if f.is_zero(c) {
                        continue;
                    }
                    for (x, &r) in w[*piv..].iter_mut().zip(row) {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
                let Some(piv) = w.iter().position(|&x| !f.is_zero(x)) else {
                    return false;
                };
                let inv = f.inv(w[piv]).unwrap();
                rows.push((piv, w[piv..].iter().map(|&x| f.mul(x, inv)).collect()));
                true
            }
        }
    }

    pub fn to_mat(&self) -> Mat {
        let f = self.field;
        let mut m = Mat::zeros(f, self.rank(), self.width);
        match &self.store {
            Store::Prime { rows, .. } => {
                for (i, (piv, row)) in rows.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        m.set(i, piv + j, f.from_i64(x as i64));
                    }
                }
            }
            Store::Exact(rows) => {
                for (i, (piv, row)) in rows.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        m.set(i, piv + j, x);
                    }
                }
            }
        }
        m
    }

    /// Basis of the vectors orthogonal to every row (the null space), one
    /// vector per free column, found by back substitution.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut is_pivot = vec![false; self.width];
        match &self.store {
            Store::Prime { rows, .. } => rows.iter().for_each(|(piv, _)| is_pivot[*piv] = true),
            Store::Exact(rows) => rows.iter().for_each(|(piv, _)| is_pivot[*piv] = true),
        }
        let free: Vec<usize> = (0..self.width).filter(|&c| !is_pivot[c]).collect();
        match &self.store {
            Store::Prime { p, rows, .. } => {
                let p = *p;
                free.iter()
                    .map(|&fc| {
                        let mut x = vec![0u64; self.width];
                        x[fc] = 1;
                        for (piv, row) in rows.iter().rev() {
                            let mut s: u64 = 0;
                            for (&r, &xv) in row[1..].iter().zip(&x[piv + 1..]) {
                                if xv != 0 {
                                    s = (s + r * xv) % p;
                                }
                            }
                            x[*piv] = (p - s) % p;
                        }
                        x.into_iter().map(|v| f.from_i64(v as i64)).collect()
                    })
                    .collect()
            }
            Store::Exact(rows) => free
                .iter()
                .map(|&fc| {
                    let mut x = vec![f.zero(); self.width];
                    x[fc] = f.one();
                    for (piv, row) in rows.iter().rev() {
                        let mut s = f.zero();
                        for (&r, &xv) in row[1..].iter().zip(&x[piv + 1..]) {
                            if !f.is_zero(xv) {
                                s = f.add(s, f.mul(r, xv));
                            }
                        }
                        x[*piv] = f.neg(s);
                    }
                    x
                })
                .collect(),
        }
    }
}
