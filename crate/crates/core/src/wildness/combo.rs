use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::{Field, Mat, Scalar};
use crate::quiver::{Path, Quiver};
use crate::rep::Representation;

/// A finite linear combination of parallel-or-not paths in a source quiver,
/// kept merged and sorted. Over the two-loop quiver these are the
/// noncommutative polynomials in `x` and `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathCombo {
    terms: Vec<(Path, Scalar)>,
}

/// Elements of `k<x,y>`: path combinations on the one-vertex, two-loop quiver.
pub type NCPoly = PathCombo;

impl PathCombo {
    pub fn zero() -> PathCombo {
        PathCombo { terms: Vec::new() }
    }

    pub fn path(field: Field, p: Path) -> PathCombo {
        PathCombo { terms: alloc::vec![(p, field.one())] }
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Scalar, Path)>) -> PathCombo {
        let mut out = PathCombo::zero();
        for (c, p) in terms {
            out.add_term(field, c, p);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (Scalar, &Path)> {
        self.terms.iter().map(|(p, c)| (*c, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: Field, c: Scalar, p: Path) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => {
                let v = field.add(self.terms[i].1, c);
                if field.is_zero(v) {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = v;
                }
            }
            Err(i) => self.terms.insert(i, (p, c)),
        }
    }

    pub fn add_scaled(&mut self, field: Field, c: Scalar, other: &PathCombo) {
        for (p, d) in &other.terms {
            self.add_term(field, field.mul(c, *d), p.clone());
        }
    }

    /// `self · other`: `other` acts first.
    pub fn mul(&self, field: Field, other: &PathCombo) -> PathCombo {
        let mut out = PathCombo::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = q.compose_before(p) {
                    out.add_term(field, field.mul(*c, *d), pq);
                }
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// Matrix of the combination acting on `m`, as a map `M(from) -> M(to)`.
    pub fn eval(&self, m: &Representation, from: usize, to: usize) -> Mat {
        let f = m.field();
        let mut acc = Mat::zeros(f, m.dims()[to], m.dims()[from]);
        for (p, c) in &self.terms {
            debug_assert!(p.source == from && p.target == to);
            acc.add_scaled(*c, &m.eval_path(p));
        }
        acc
    }

    pub fn display<'a>(&'a self, q: &'a Quiver, field: Field) -> ComboDisplay<'a> {
        ComboDisplay { combo: self, quiver: q, field }
    }
}

pub struct ComboDisplay<'a> {
    combo: &'a PathCombo,
    quiver: &'a Quiver,
    field: Field,
}

impl fmt::Display for ComboDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.combo.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == self.field.one() {
                write!(f, "{}", p.display(self.quiver))?;
            } else {
                write!(f, "{}*{}", self.field.display(*c), p.display(self.quiver))?;
            }
        }
        Ok(())
    }
}
