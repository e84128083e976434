//! Galois coverings given by `Z^m` arrow gradings, their finite windows, and
//! the pushdown functor from window modules to base modules.

mod criterion;
mod pushdown;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use criterion::{covering_criterion, covering_criterion_with, search_boxes, CoveringOutcome, WindowWitnessProvider};
pub use pushdown::{pushdown, pushdown_bimodule, verify_pushdown, PushdownReport};

use crate::error::CoveringError;
use crate::quiver::{factor_quiver, Arrow, BoundQuiver, Path, Quiver, Relation};

/// A bound quiver with a `Z^m`-grading of its arrows under which every
/// relation is homogeneous. The universal-style cover has vertices
/// `(v, g)` and arrows `(a, g): (s, g) -> (t, g + w(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSpec {
    base: Arc<BoundQuiver>,
    rank: usize,
    weights: Vec<Vec<i64>>,
}

impl CoveringSpec {
    pub fn new(base: Arc<BoundQuiver>, rank: usize, weights: Vec<Vec<i64>>) -> Result<CoveringSpec, CoveringError> {
        if rank == 0 {
            return Err(CoveringError::ZeroRank);
        }
        let q = base.quiver();
        if weights.len() != q.arrow_count() {
            return Err(CoveringError::WeightCount(weights.len(), q.arrow_count()));
        }
        for (a, w) in base.quiver().arrows().iter().zip(&weights) {
            if w.len() != rank {
                return Err(CoveringError::WeightLength { arrow: a.name.clone(), expected: rank, found: w.len() });
            }
        }
        let spec = CoveringSpec { base: base.clone(), rank, weights };
        for rel in spec.base.relations() {
            let mut degrees = rel.terms().iter().map(|(_, p)| spec.degree(p));
            let first = degrees.next();
            if degrees.any(|d| Some(d) != first) {
                return Err(CoveringError::Inhomogeneous(rel.display(base.quiver(), base.field()).to_string()));
            }
        }
        Ok(spec)
    }

    /// Every arrow of weight `e_1` in a rank-1 grading.
    pub fn unit_weights(base: Arc<BoundQuiver>) -> Result<CoveringSpec, CoveringError> {
        let weights = alloc::vec![alloc::vec![1]; base.quiver().arrow_count()];
        CoveringSpec::new(base, 1, weights)
    }

    pub fn base(&self) -> &Arc<BoundQuiver> {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Total weight of a path.
    pub fn degree(&self, p: &Path) -> Vec<i64> {
        let mut d = alloc::vec![0; self.rank];
        for &a in &p.arrows {
            for (x, w) in d.iter_mut().zip(&self.weights[a]) {
                *x += w;
            }
        }
        d
    }
}

/// Closed integer intervals `[lo_i, hi_i]`, one per grading coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingBox {
    pub intervals: Vec<(i64, i64)>,
}

impl GradingBox {
    pub fn new(intervals: Vec<(i64, i64)>) -> GradingBox {
        GradingBox { intervals }
    }

    /// `[0, h_1] × ... × [0, h_m]`.
    pub fn anchored(heights: &[i64]) -> GradingBox {
        GradingBox { intervals: heights.iter().map(|&h| (0, h)).collect() }
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        g.len() == self.intervals.len() && g.iter().zip(&self.intervals).all(|(x, &(lo, hi))| lo <= *x && *x <= hi)
    }

    pub fn volume(&self) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| (hi - lo + 1).max(0) as u64).product()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = alloc::vec![Vec::new()];
        for &(lo, hi) in &self.intervals {
            out = out.into_iter().flat_map(|p| (lo..=hi).map(move |x| {
                let mut q = p.clone();
                q.push(x);
                q
            })).collect();
        }
        out
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.intervals.iter().map(|(lo, hi)| format!("[{lo},{hi}]")).collect();
        parts.join("x")
    }
}

fn point_label(g: &[i64]) -> String {
    let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

/// The full subquiver of the cover on `base vertices × box`, as a bound
/// quiver: relations are lifted at every base point and every term leaving
/// the box is replaced by zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub covering: CoveringSpec,
    pub grading_box: GradingBox,
    pub bound_quiver: Arc<BoundQuiver>,
    /// Base vertex under each window vertex.
    pub vertex_projection: Vec<usize>,
    /// Base arrow under each window arrow.
    pub arrow_projection: Vec<usize>,
    /// Grading point of each window vertex.
    pub points: Vec<Vec<i64>>,
}

impl Window {
    pub fn vertex_count(&self) -> usize {
        self.vertex_projection.len()
    }

    /// The factor quiver on the given window vertices and arrows, which is
    /// again a window of the same cover (with a smaller vertex set).
    pub fn restrict(&self, keep_vertices: &[usize], keep_arrows: &[usize]) -> Result<Window, CoveringError> {
        let q = self.bound_quiver.quiver();
        let vs: Vec<&str> = keep_vertices.iter().map(|&v| q.vertices()[v].as_str()).collect();
        let arrs: Vec<&str> = keep_arrows.iter().map(|&a| q.arrows()[a].name.as_str()).collect();
        let bq = factor_quiver(&self.bound_quiver, &vs, &arrs)?;
        let mut kv = keep_vertices.to_vec();
        kv.sort_unstable();
        let mut ka = keep_arrows.to_vec();
        ka.sort_unstable();
        Ok(Window {
            covering: self.covering.clone(),
            grading_box: self.grading_box.clone(),
            bound_quiver: Arc::new(bq),
            vertex_projection: kv.iter().map(|&v| self.vertex_projection[v]).collect(),
            arrow_projection: ka.iter().map(|&a| self.arrow_projection[a]).collect(),
            points: kv.iter().map(|&v| self.points[v].clone()).collect(),
        })
    }
}

pub fn build_window(cov: &CoveringSpec, grading_box: &GradingBox) -> Result<Window, CoveringError> {
    if grading_box.intervals.len() != cov.rank || grading_box.volume() == 0 {
        return Err(CoveringError::BadBox);
    }
    let base = cov.base.quiver();
    let field = cov.base.field();
    let pts = grading_box.points();
    let mut index = alloc::collections::BTreeMap::new();
    let mut vertices = Vec::new();
    let mut vertex_projection = Vec::new();
    let mut points = Vec::new();
    for g in &pts {
        for (v, name) in base.vertices().iter().enumerate() {
            index.insert((v, g.clone()), vertices.len());
            vertices.push(format!("{name}@{}", point_label(g)));
            vertex_projection.push(v);
            points.push(g.clone());
        }
    }
    let shift = |g: &[i64], a: usize| -> Vec<i64> { g.iter().zip(&cov.weights[a]).map(|(x, w)| x + w).collect() };
    let mut arrows = Vec::new();
    let mut arrow_projection = Vec::new();
    let mut arrow_index = alloc::collections::BTreeMap::new();
    for g in &pts {
        for (ai, a) in base.arrows().iter().enumerate() {
            let h = shift(g, ai);
            if let Some(&t) = index.get(&(a.target, h)) {
                let s = index[&(a.source, g.clone())];
                arrow_index.insert((ai, g.clone()), arrows.len());
                arrows.push(Arrow { name: format!("{}@{}", a.name, point_label(g)), source: s, target: t });
                arrow_projection.push(ai);
            }
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    for rel in cov.base.relations() {
        for g in &pts {
            if !index.contains_key(&(rel.source(), g.clone())) {
                continue;
            }
            let mut terms = Vec::new();
            'term: for (c, p) in rel.terms() {
                let mut at = g.clone();
                let mut lifted = Vec::new();
                for &a in &p.arrows {
                    match arrow_index.get(&(a, at.clone())) {
                        Some(&la) => lifted.push(la),
                        None => continue 'term,
                    }
                    at = shift(&at, a);
                }
                let source = index[&(p.source, g.clone())];
                let target = index[&(p.target, at)];
                terms.push((*c, Path { source, target, arrows: lifted }));
            }
            if !terms.is_empty() {
                relations.push(Relation::new(field, terms)?);
            }
        }
    }
    let name = format!("{}~{}", cov.base.name(), grading_box.describe());
    let bq = BoundQuiver::new(name, field, quiver, relations, Some(cov.base.nilbound()))?;
    Ok(Window {
        covering: cov.clone(),
        grading_box: grading_box.clone(),
        bound_quiver: Arc::new(bq),
        vertex_projection,
        arrow_projection,
        points,
    })
}
