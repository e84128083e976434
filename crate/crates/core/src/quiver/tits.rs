use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Quiver;
use crate::error::QuiverError;
use crate::exactlin::{Field, Mat};

/// `q(d) = sum d_i^2 - sum_{a: s -> t} d_s d_t`.
pub fn tits_form(q: &Quiver, d: &[i64]) -> Result<i64, QuiverError> {
    if d.len() != q.vertex_count() {
        return Err(QuiverError::DimensionVectorLength { expected: q.vertex_count(), found: d.len() });
    }
    let squares: i64 = d.iter().map(|x| x * x).sum();
    let cross: i64 = q.arrows().iter().map(|a| d[a.source] * d[a.target]).sum();
    Ok(squares - cross)
}

/// The symmetric matrix `B` with `q(d) = d^T B d / 2`, over the rationals.
pub fn symmetrized_tits_matrix(q: &Quiver) -> Mat {
    let f = Field::Rationals;
    let n = q.vertex_count();
    let mut b = vec![vec![0i64; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in q.arrows() {
        b[a.source][a.target] -= 1;
        b[a.target][a.source] -= 1;
    }
    Mat::from_fn(f, n, n, |i, j| f.from_i64(b[i][j]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// Exact definiteness of a symmetric rational matrix by symmetric elimination.
pub fn definiteness(m: &Mat) -> Definiteness {
    assert!(m.is_square() && m.field() == Field::Rationals);
    let f = m.field();
    let n = m.rows();
    let mut a = m.clone();
    let mut degenerate = false;
    for k in 0..n {
        let p = a.get(k, k);
        if p.numer() < 0 {
            return Definiteness::Indefinite;
        }
        if f.is_zero(p) {
            // A positive semidefinite matrix with a zero diagonal entry has a zero row.
            if (k + 1..n).any(|j| !f.is_zero(a.get(k, j))) {
                return Definiteness::Indefinite;
            }
            degenerate = true;
            continue;
        }
        for i in k + 1..n {
            let factor = f.div(a.get(i, k), p);
            if f.is_zero(factor) {
                continue;
            }
            for j in k..n {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    if degenerate {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::PositiveDefinite
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepType {
    Finite,
    Tame,
    Wild,
}

impl core::fmt::Display for RepType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            RepType::Finite => "finite",
            RepType::Tame => "tame",
            RepType::Wild => "wild",
        })
    }
}

/// Representation type of the path algebra of a connected, loop-free quiver,
/// read off from the Tits form.
pub fn classify_hereditary(q: &Quiver) -> Result<RepType, QuiverError> {
    if q.vertex_count() == 0 || !q.is_connected() {
        return Err(QuiverError::NotConnected);
    }
    if q.has_loops() {
        return Err(QuiverError::HasLoops);
    }
    Ok(match definiteness(&symmetrized_tits_matrix(q)) {
        Definiteness::PositiveDefinite => RepType::Finite,
        Definiteness::PositiveSemidefinite => RepType::Tame,
        Definiteness::Indefinite => RepType::Wild,
    })
}

/// Wild, while every component left after deleting any one vertex is finite or tame.
pub fn is_minimal_wild_hereditary(q: &Quiver) -> Result<bool, QuiverError> {
    if classify_hereditary(q)? != RepType::Wild {
        return Ok(false);
    }
    for v in 0..q.vertex_count() {
        let keep: Vec<usize> = (0..q.vertex_count()).filter(|&u| u != v).collect();
        for comp in q.full_subquiver(&keep).components() {
            if classify_hereditary(&comp)? == RepType::Wild {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Orientation-free multigraph: edge multiplicities keyed by `(min, max)`
/// vertex index, loops as `(v, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnderlyingDiagram {
    pub nodes: usize,
    pub edges: BTreeMap<(usize, usize), usize>,
}

pub fn underlying_diagram(q: &Quiver) -> UnderlyingDiagram {
    let mut edges = BTreeMap::new();
    for a in q.arrows() {
        let key = (a.source.min(a.target), a.source.max(a.target));
        *edges.entry(key).or_insert(0) += 1;
    }
    UnderlyingDiagram { nodes: q.vertex_count(), edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::named;

    #[test]
    fn tits_form_examples() {
        assert_eq!(tits_form(&named::kronecker(3), &[0, 0]).unwrap(), 0);
        assert_eq!(tits_form(&named::kronecker(3), &[1, 1]).unwrap(), -1);
        assert_eq!(tits_form(&named::kronecker(2), &[1, 1]).unwrap(), 0);
        assert!(tits_form(&named::kronecker(2), &[1]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_hereditary(&named::a2()).unwrap(), RepType::Finite);
        assert_eq!(classify_hereditary(&named::kronecker(2)).unwrap(), RepType::Tame);
        assert_eq!(classify_hereditary(&named::kronecker(3)).unwrap(), RepType::Wild);
        assert_eq!(classify_hereditary(&named::two_loops()), Err(QuiverError::HasLoops));
        let two = Quiver::from_names(&["1", "2"], &[]).unwrap();
        assert_eq!(classify_hereditary(&two), Err(QuiverError::NotConnected));
    }

    #[test]
    fn extended_dynkin_are_tame() {
        // D4~ (four arms on a centre) and A3~ (oriented 4-cycle without loops is cyclic; use a zigzag).
        let d4 = Quiver::from_names(
            &["c", "1", "2", "3", "4"],
            &[("a", "1", "c"), ("b", "2", "c"), ("g", "3", "c"), ("d", "4", "c")],
        )
        .unwrap();
        assert_eq!(classify_hereditary(&d4).unwrap(), RepType::Tame);
        let a3 = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "3", "2"), ("c", "3", "4"), ("d", "1", "4")],
        )
        .unwrap();
        assert_eq!(classify_hereditary(&a3).unwrap(), RepType::Tame);
        let e6 = Quiver::from_names(
            &["1", "2", "3", "4", "5", "6"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "5"), ("e", "3", "6")],
        )
        .unwrap();
        assert_eq!(classify_hereditary(&e6).unwrap(), RepType::Finite);
    }

    #[test]
    fn minimal_wild_examples() {
        assert!(is_minimal_wild_hereditary(&named::kronecker(3)).unwrap());
        assert!(!is_minimal_wild_hereditary(&named::kronecker(2)).unwrap());
        let pendant = Quiver::from_names(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "1", "2"), ("gamma", "1", "2"), ("p", "2", "3")],
        )
        .unwrap();
        assert_eq!(classify_hereditary(&pendant).unwrap(), RepType::Wild);
        assert!(!is_minimal_wild_hereditary(&pendant).unwrap());
    }

    #[test]
    fn diagrams() {
        let d = underlying_diagram(&named::kronecker(3));
        assert_eq!(d.edges.get(&(0, 1)), Some(&3));
        let l = underlying_diagram(&Quiver::from_names(&["o"], &[("x", "o", "o")]).unwrap());
        assert_eq!(l.edges.get(&(0, 0)), Some(&1));
        assert_eq!(underlying_diagram(&named::a2()).edges.len(), 1);
    }
}
