//! Finite-dimensional representations of bound quivers.

mod decompose;
mod hom;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use decompose::{
    are_isomorphic, decompose, in_sincere_subcategory, is_indecomposable, Decomposition, IndecVerdict, IsoVerdict,
    NonIsoReason, Verdict, DEFAULT_ISO_TRIALS,
};
pub use hom::{hom_space, is_homomorphism, HomSpace};

use crate::error::RepError;
use crate::exactlin::{Field, Mat, Scalar, SeededRng};
use crate::quiver::{BoundQuiver, Path, Relation};

/// A representation: one space `k^{d_i}` per vertex and one matrix
/// (`d_target × d_source`) per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    bq: Arc<BoundQuiver>,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl Representation {
    /// Checks shapes, the field, and that every relation vanishes.
    pub fn new(bq: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Representation, RepError> {
        let m = Representation::with_shapes(bq, dims, maps)?;
        if let Some(i) = m.check_relations().iter().position(|&zero| !zero) {
            return Err(RepError::RelationViolated(i));
        }
        Ok(m)
    }

    /// Checks shapes and the field only; relations may fail.
    pub fn with_shapes(bq: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Representation, RepError> {
        let q = bq.quiver();
        if dims.len() != q.vertex_count() {
            return Err(RepError::DimensionVectorLength { expected: q.vertex_count(), found: dims.len() });
        }
        if maps.len() != q.arrow_count() {
            return Err(RepError::ArrowCount { expected: q.arrow_count(), found: maps.len() });
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.field() != bq.field() {
                return Err(RepError::FieldMismatch);
            }
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(RepError::Shape { arrow: a.name.clone() });
            }
        }
        Ok(Representation { bq, dims, maps })
    }

    pub fn zero(bq: Arc<BoundQuiver>) -> Representation {
        let dims = vec![0; bq.quiver().vertex_count()];
        Representation::constant_zero(bq, dims)
    }

    /// All arrows zero, with the given dimension vector.
    pub fn constant_zero(bq: Arc<BoundQuiver>, dims: Vec<usize>) -> Representation {
        let f = bq.field();
        let maps = bq.quiver().arrows().iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();
        Representation { bq, dims, maps }
    }

    pub fn simple(bq: Arc<BoundQuiver>, v: usize) -> Representation {
        let mut dims = vec![0; bq.quiver().vertex_count()];
        dims[v] = 1;
        Representation::constant_zero(bq, dims)
    }

    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.bq
    }

    pub fn field(&self) -> Field {
        self.bq.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Offset of vertex `v` inside the stacked space `⊕ M_v`.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn eval_path(&self, p: &Path) -> Mat {
        let mut acc = Mat::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    pub fn eval_relation(&self, r: &Relation) -> Mat {
        let mut acc = Mat::zeros(self.field(), self.dims[r.target()], self.dims[r.source()]);
        for (c, p) in r.terms() {
            acc.add_scaled(*c, &self.eval_path(p));
        }
        acc
    }

    /// One flag per relation: whether it evaluates to the zero matrix.
    pub fn check_relations(&self) -> Vec<bool> {
        self.bq.relations().iter().map(|r| self.eval_relation(r).is_zero()).collect()
    }

    /// Vertices with a nonzero space.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn is_sincere(&self) -> bool {
        self.dims.iter().all(|&d| d > 0)
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation, RepError> {
        let first = parts.first().ok_or(RepError::EmptySum)?;
        if parts.iter().any(|p| p.bq != first.bq) {
            return Err(RepError::QuiverMismatch);
        }
        let f = first.field();
        let n = first.dims.len();
        let dims = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..first.maps.len())
            .map(|a| Mat::block_diag(f, &parts.iter().map(|p| p.maps[a].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Representation { bq: first.bq.clone(), dims, maps })
    }

    /// Change basis: `P_t^{-1} M(a) P_s` for invertible `P_v`.
    pub fn transport(&self, p: &[Mat]) -> Option<Representation> {
        let inv: Option<Vec<Mat>> = p.iter().map(|m| m.inverse()).collect();
        let inv = inv?;
        let maps = self
            .bq
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| inv[a.target].mul(m).mul(&p[a.source]))
            .collect();
        Some(Representation { bq: self.bq.clone(), dims: self.dims.clone(), maps })
    }

    /// The subrepresentation on the column spaces of `bases[v]`, which must
    /// be invariant under every arrow.
    pub fn restrict(&self, bases: &[Mat]) -> Result<Representation, RepError> {
        let f = self.field();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in self.bq.quiver().arrows().iter().zip(&self.maps) {
            let image = m.mul(&bases[a.source]);
            let mut coords = Mat::zeros(f, dims[a.target], dims[a.source]);
            for j in 0..image.cols() {
                let sol = bases[a.target]
                    .solve_linear(&image.col(j))
                    .map_err(|_| RepError::NotInvariant { arrow: a.name.clone() })?
                    .ok_or_else(|| RepError::NotInvariant { arrow: a.name.clone() })?;
                for (i, x) in sol.particular.iter().enumerate() {
                    coords.set(i, j, *x);
                }
            }
            maps.push(coords);
        }
        Ok(Representation { bq: self.bq.clone(), dims, maps })
    }

    /// The quotient by an invariant subspace (columns of `sub[v]`), with the
    /// complement basis chosen from standard vectors.
    pub fn quotient(&self, sub: &[Mat]) -> Result<(Representation, Vec<Mat>), RepError> {
        let f = self.field();
        let mut complements = Vec::new();
        let mut projections = Vec::new();
        for (v, s) in sub.iter().enumerate() {
            let n = self.dims[v];
            let mut cols: Vec<Vec<Scalar>> = (0..s.cols()).map(|j| s.col(j)).collect();
            let base = cols.len();
            let mut chosen = Vec::new();
            for i in 0..n {
                let mut e = vec![f.zero(); n];
                e[i] = f.one();
                cols.push(e.clone());
                if Mat::from_columns(f, n, &cols).rank() == cols.len() {
                    chosen.push(e);
                } else {
                    cols.pop();
                }
            }
            let full = Mat::from_columns(f, n, &cols);
            let inv = full.inverse().ok_or(RepError::NotInvariant { arrow: alloc::string::String::new() })?;
            // Coordinates along the complement, ignoring the subspace part.
            projections.push(inv.block(base, 0, n - base, n));
            complements.push(Mat::from_columns(f, n, &chosen));
        }
        let dims: Vec<usize> = complements.iter().map(|c| c.cols()).collect();
        let maps = self
            .bq
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| projections[a.target].mul(m).mul(&complements[a.source]))
            .collect();
        Ok((Representation { bq: self.bq.clone(), dims, maps }, projections))
    }

    /// Uniformly random matrices on a hereditary bound quiver.
    pub fn random_hereditary(bq: Arc<BoundQuiver>, dims: Vec<usize>, rng: &mut SeededRng) -> Representation {
        let f = bq.field();
        let maps = bq
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::from_fn(f, dims[a.target], dims[a.source], |_, _| f.random(rng)))
            .collect();
        Representation { bq, dims, maps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{named, Quiver};

    fn f() -> Field {
        Field::Prime(101)
    }

    fn dual_numbers() -> Arc<BoundQuiver> {
        let q = Quiver::from_names(&["o"], &[("x", "o", "o")]).unwrap();
        let r = Relation::from_words(&q, f(), &[(1, "x*x")]).unwrap();
        Arc::new(BoundQuiver::new("dual", f(), q, vec![r], Some(2)).unwrap())
    }

    #[test]
    fn relation_residuals() {
        let bq = dual_numbers();
        assert_eq!(Representation::zero(bq.clone()).check_relations(), vec![true]);
        let j = Mat::from_i64_rows(f(), &[&[0, 1], &[0, 0]]);
        let m = Representation::new(bq.clone(), vec![2], vec![j]).unwrap();
        assert_eq!(m.check_relations(), vec![true]);
        let bad = Representation::with_shapes(bq.clone(), vec![2], vec![Mat::identity(f(), 2)]).unwrap();
        assert_eq!(bad.check_relations(), vec![false]);
        assert_eq!(Representation::new(bq, vec![2], vec![Mat::identity(f(), 2)]), Err(RepError::RelationViolated(0)));
    }

    #[test]
    fn shape_errors() {
        let bq = Arc::new(BoundQuiver::hereditary("A2", f(), named::a2()));
        let err = Representation::new(bq, vec![1, 2], vec![Mat::zeros(f(), 1, 1)]).unwrap_err();
        assert!(matches!(err, RepError::Shape { .. }));
    }

    #[test]
    fn support_and_sincerity() {
        let bq = Arc::new(BoundQuiver::hereditary("A2", f(), named::a2()));
        assert!(Representation::zero(bq.clone()).support().is_empty());
        assert_eq!(Representation::simple(bq.clone(), 1).support(), vec![1]);
        let m = Representation::new(bq, vec![1, 1], vec![Mat::identity(f(), 1)]).unwrap();
        assert!(m.is_sincere());
        assert_eq!(m.support(), vec![0, 1]);
    }

    #[test]
    fn quotient_and_restrict() {
        let bq = Arc::new(BoundQuiver::hereditary("A2", f(), named::a2()));
        let m = Representation::new(bq, vec![1, 1], vec![Mat::identity(f(), 1)]).unwrap();
        // The simple at the sink is a subrepresentation.
        let sub = vec![Mat::zeros(f(), 1, 0), Mat::identity(f(), 1)];
        let s = m.restrict(&sub).unwrap();
        assert_eq!(s.dims(), &[0, 1]);
        let (qt, _) = m.quotient(&sub).unwrap();
        assert_eq!(qt.dims(), &[1, 0]);
        let bad = vec![Mat::identity(f(), 1), Mat::zeros(f(), 1, 0)];
        assert!(m.restrict(&bad).is_err());
    }
}
