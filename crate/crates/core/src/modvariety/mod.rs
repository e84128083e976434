//! Representation varieties `rep(A, d)` inside `mod(A, n)`: tangent and orbit
//! dimensions at sampled points, and number-of-parameters estimates.
//!
//! Everything here is a probe. Sampled points bound the number of
//! parameters from one side only and nothing is proved.

mod sample;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use sample::{sample_point, DEFAULT_SAMPLE_BUDGET};

use crate::exactlin::{derive_seed, rng_from_seed, Mat, Scalar};
use crate::quiver::{BoundQuiver, Path};
use crate::rep::{hom_space, Representation};

/// Number of arrow coordinates `Σ_{a: s -> t} d_s d_t`.
pub fn coordinate_count(bq: &BoundQuiver, dims: &[usize]) -> usize {
    bq.quiver().arrows().iter().map(|a| dims[a.source] * dims[a.target]).sum()
}

/// Dimension of the kernel of the Jacobian of the relation map at `p`.
pub fn tangent_dimension(p: &Representation) -> usize {
    let bq = p.bound_quiver();
    let f = p.field();
    let q = bq.quiver();
    let dims = p.dims();
    let mut offsets = Vec::with_capacity(q.arrow_count());
    let mut unknowns = 0;
    for a in q.arrows() {
        offsets.push(unknowns);
        unknowns += dims[a.source] * dims[a.target];
    }
    if bq.relations().is_empty() {
        return unknowns;
    }
    let mut rows: Vec<Scalar> = Vec::new();
    let mut nrows = 0;
    for rel in bq.relations() {
        let (m, n) = (dims[rel.target()], dims[rel.source()]);
        let mut block = vec![f.zero(); m * n * unknowns];
        for (c, path) in rel.terms() {
            for (k, &a) in path.arrows.iter().enumerate() {
                let arrow = &q.arrows()[a];
                let before = Path { source: path.source, target: arrow.source, arrows: path.arrows[..k].to_vec() };
                let after = Path { source: arrow.target, target: path.target, arrows: path.arrows[k + 1..].to_vec() };
                let (r, l) = (p.eval_path(&before), p.eval_path(&after));
                let ds = dims[arrow.source];
                for kk in 0..dims[arrow.target] {
                    for ll in 0..ds {
                        let u = offsets[a] + kk * ds + ll;
                        for i in 0..m {
                            let lik = l.get(i, kk);
                            if f.is_zero(lik) {
                                continue;
                            }
                            let cl = f.mul(*c, lik);
                            for j in 0..n {
                                let idx = (i * n + j) * unknowns + u;
                                block[idx] = f.add(block[idx], f.mul(cl, r.get(ll, j)));
                            }
                        }
                    }
                }
            }
        }
        nrows += m * n;
        rows.extend(block);
    }
    let jac = Mat::from_data(f, nrows, unknowns, rows).expect("jacobian shape");
    unknowns - jac.rank()
}


/// Orbit dimension under `GL_n`, `n = |d|`: `n² - dim End(M)`.
pub fn orbit_dimension(p: &Representation) -> usize {
    let n = p.total_dim();
    n * n - end_dimension(p)
}

/// Orbit dimension under `GL_d = Π GL_{d_i}`: `Σ d_i² - dim End(M)`.
pub fn orbit_dimension_in_stratum(p: &Representation) -> usize {
    p.dims().iter().map(|d| d * d).sum::<usize>() - end_dimension(p)
}

fn end_dimension(p: &Representation) -> usize {
    hom_space(p, p).expect("same quiver").dim()
}

/// Whether local dimensions are exact (hereditary algebras, where
/// `rep(A, d)` is an affine space) or tangent-space upper bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalBound {
    Exact,
    UpperBound,
}

impl LocalBound {
    pub fn as_str(&self) -> &'static str {
        match self {
            LocalBound::Exact => "exact",
            LocalBound::UpperBound => "upper-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointRecord {
    pub tangent: usize,
    pub end_dim: usize,
    pub orbit_in_stratum: usize,
    /// Local dimension minus `GL_d`-orbit dimension.
    pub estimate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVectorRecord {
    pub dims: Vec<usize>,
    pub points: Vec<PointRecord>,
    /// Samples for which no relation-satisfying point was found.
    pub starved: usize,
    /// Maximum over `points`, if any.
    pub estimate: Option<usize>,
}

/// Number-of-parameters probe for one `n`. Heuristic by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StratumReport {
    pub n: usize,
    pub seed: u64,
    pub samples_per_d: usize,
    pub basis: LocalBound,
    pub records: Vec<DimVectorRecord>,
    pub aggregate: Option<usize>,
}

impl StratumReport {
    pub fn starved(&self) -> bool {
        self.records.iter().any(|r| r.starved > 0)
    }
}

/// All dimension vectors with `vertices` entries summing to `n`, in
/// lexicographically decreasing order.
pub fn dimension_vectors(vertices: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=n).rev() {
            cur.push(first);
            go(k - 1, n - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vertices > 0 {
        go(vertices, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Seed for the samples at dimension vector `d`; independent of `n` and of
/// the number of samples, so nested runs share their common prefix.
pub fn seed_for_dims(seed: u64, dims: &[usize]) -> u64 {
    dims.iter().fold(derive_seed(seed, dims.len() as u64), |acc, &d| derive_seed(acc, d as u64 + 1))
}

/// Sample `samples_per_d` points for every `d` with `|d| = n` and record
/// `local dim - (Σ d_i² - dim End)` at each. Local dimension is the exact
/// coordinate count for hereditary algebras and the tangent dimension
/// otherwise.
pub fn parameter_estimate(bq: &Arc<BoundQuiver>, n: usize, samples_per_d: usize, seed: u64) -> StratumReport {
    let basis = if bq.is_hereditary() { LocalBound::Exact } else { LocalBound::UpperBound };
    let mut records = Vec::new();
    for dims in dimension_vectors(bq.quiver().vertex_count(), n) {
        let base = seed_for_dims(seed, &dims);
        let mut rec = DimVectorRecord { dims: dims.clone(), points: Vec::new(), starved: 0, estimate: None };
        for s in 0..samples_per_d as u64 {
            let mut rng = rng_from_seed(derive_seed(base, s));
            let Some(p) = sample_point(bq, &dims, &mut rng, DEFAULT_SAMPLE_BUDGET) else {
                rec.starved += 1;
                continue;
            };
            let tangent = match basis {
                LocalBound::Exact => coordinate_count(bq, &dims),
                LocalBound::UpperBound => tangent_dimension(&p),
            };
            let end_dim = end_dimension(&p);
            let orbit_in_stratum = dims.iter().map(|d| d * d).sum::<usize>() - end_dim;
            rec.points.push(PointRecord { tangent, end_dim, orbit_in_stratum, estimate: tangent - orbit_in_stratum });
        }
        rec.estimate = rec.points.iter().map(|p| p.estimate).max();
        records.push(rec);
    }
    let aggregate = records.iter().filter_map(|r| r.estimate).max();
    StratumReport { n, seed, samples_per_d, basis, records, aggregate }
}

/// How an estimate compares with the threshold `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamVerdict {
    AtMostN,
    ExceedsN,
    /// An upper bound above `n`, or no points at all: nothing follows.
    Undetermined,
}

impl ParamVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParamVerdict::AtMostN => "<=n",
            ParamVerdict::ExceedsN => ">n",
            ParamVerdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProbeLine {
    pub report: StratumReport,
    pub verdict: ParamVerdict,
}

pub fn verdict_for(report: &StratumReport) -> ParamVerdict {
    match (report.aggregate, report.basis) {
        (None, _) => ParamVerdict::Undetermined,
        (Some(e), _) if e <= report.n => ParamVerdict::AtMostN,
        (Some(_), LocalBound::Exact) => ParamVerdict::ExceedsN,
        (Some(_), LocalBound::UpperBound) => ParamVerdict::Undetermined,
    }
}

/// `parameter_estimate` for `n = 1..=n_max` with a verdict per `n`.
pub fn stratum_probe(bq: &Arc<BoundQuiver>, n_max: usize, samples_per_d: usize, seed: u64) -> Vec<ProbeLine> {
    (1..=n_max)
        .map(|n| {
            let report = parameter_estimate(bq, n, samples_per_d, seed);
            let verdict = verdict_for(&report);
            ProbeLine { report, verdict }
        })
        .collect()
}

#[cfg(test)]
mod tests;
