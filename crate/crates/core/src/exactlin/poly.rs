//! Univariate polynomials over the ground field, just enough to find
//! eigenvalues of endomorphisms.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, Scalar};
use super::matrix::Mat;

/// Coefficients, constant term first.
pub type Poly = Vec<Scalar>;

fn trim(field: Field, p: &mut Poly) {
    while p.last().is_some_and(|&c| field.is_zero(c)) {
        p.pop();
    }
}

pub fn eval(field: Field, p: &[Scalar], x: Scalar) -> Scalar {
    p.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
}

/// Characteristic polynomial `det(t·I - m)`, via reduction to Hessenberg form.
pub fn charpoly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let f = m.field();
    let n = m.rows();
    let mut h = m.clone();
    // Similarity transform to upper Hessenberg form.
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&r| !f.is_zero(h.get(r, c))) else {
            continue;
        };
        if piv != c + 1 {
            h.swap_rows(piv, c + 1);
            for r in 0..n {
                let a = h.get(r, piv);
                let b = h.get(r, c + 1);
                h.set(r, piv, b);
                h.set(r, c + 1, a);
            }
        }
        let inv = f.inv(h.get(c + 1, c)).unwrap();
        for r in c + 2..n {
            let factor = f.mul(h.get(r, c), inv);
            if f.is_zero(factor) {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(r, j), f.mul(factor, h.get(c + 1, j)));
                h.set(r, j, v);
            }
            for i in 0..n {
                let v = f.add(h.get(i, c + 1), f.mul(factor, h.get(i, r)));
                h.set(i, c + 1, v);
            }
        }
    }
    // Recurrence on leading principal minors of t·I - H.
    let mut polys: Vec<Poly> = vec![vec![f.one()]];
    for k in 1..=n {
        let mut pk = vec![f.zero(); k + 1];
        let prev = &polys[k - 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = f.add(pk[i + 1], c);
            pk[i] = f.sub(pk[i], f.mul(h.get(k - 1, k - 1), c));
        }
        let mut prod = f.one();
        for i in 1..k {
            prod = f.mul(prod, h.get(k - i, k - i - 1));
            let coeff = f.mul(prod, h.get(k - i - 1, k - 1));
            if f.is_zero(coeff) {
                continue;
            }
            for (j, &c) in polys[k - i - 1].iter().enumerate() {
                pk[j] = f.sub(pk[j], f.mul(coeff, c));
            }
        }
        polys.push(pk);
    }
    let mut p = polys.pop().unwrap();
    trim(f, &mut p);
    p
}

/// Distinct roots lying in the ground field.
///
/// Prime fields are searched exhaustively; over the rationals the rational
/// root theorem is applied after clearing denominators.
pub fn roots_in_field(field: Field, p: &[Scalar]) -> Vec<Scalar> {
    let mut p = p.to_vec();
    trim(field, &mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    match field {
        Field::Prime(_) => field.elements().unwrap().filter(|&x| field.is_zero(eval(field, &p, x))).collect(),
        Field::Rationals => rational_roots(field, &p),
    }
}

fn rational_roots(field: Field, p: &[Scalar]) -> Vec<Scalar> {
    let mut roots = Vec::new();
    let lcm = p.iter().fold(1i128, |acc, c| {
        let d = c.denom();
        acc / gcd(acc, d) * d
    });
    let mut ints: Vec<i128> = p.iter().map(|c| c.numer() * (lcm / c.denom())).collect();
    let shift = ints.iter().position(|&c| c != 0).unwrap_or(0);
    if shift > 0 {
        roots.push(field.zero());
        ints.drain(..shift);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0];
    let an = *ints.last().unwrap();
    for q in divisors(an) {
        for pnum in divisors(a0) {
            for sign in [1i128, -1] {
                let Some(cand) = field.from_ratio((sign * pnum) as i64, q as i64) else { continue };
                let val = eval(field, p, cand);
                if field.is_zero(val) && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}
