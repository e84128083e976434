use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Field, Mat, Membership, Scalar, SpanTracker};
use crate::quiver::{BoundQuiver, Path, Quiver};
use crate::rep::Representation;

/// Every path of an acyclic quiver, grouped by endpoints.
#[derive(Clone, Debug)]
pub(crate) struct PathBasis {
    /// `between[v][w]`: paths `v -> w`, shortest first.
    between: Vec<Vec<Vec<Path>>>,
    index: BTreeMap<Path, usize>,
}

impl PathBasis {
    pub(crate) fn new(q: &Quiver) -> PathBasis {
        let n = q.vertex_count();
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut index = BTreeMap::new();
        for v in 0..n {
            for p in q.paths_from(v, n) {
                let slot = &mut between[v][p.target];
                index.insert(p.clone(), slot.len());
                slot.push(p);
            }
        }
        PathBasis { between, index }
    }

    pub(crate) fn paths(&self, v: usize, w: usize) -> &[Path] {
        &self.between[v][w]
    }

    pub(crate) fn position(&self, p: &Path) -> usize {
        self.index[p]
    }
}

/// The indecomposable projective `P_v`, with basis the paths starting at `v`.
pub fn projective(bq: &Arc<BoundQuiver>, v: usize) -> Representation {
    projective_with(bq, &PathBasis::new(bq.quiver()), v)
}

pub(crate) fn projective_with(bq: &Arc<BoundQuiver>, pb: &PathBasis, v: usize) -> Representation {
    let f = bq.field();
    let q = bq.quiver();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|w| pb.paths(v, w).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
            for (j, p) in pb.paths(v, a.source).iter().enumerate() {
                let longer = p.then(q, ai).expect("composable");
                m.set(pb.position(&longer), j, f.one());
            }
            m
        })
        .collect();
    Representation::new(bq.clone(), dims, maps).expect("projectives of a path algebra")
}

/// A minimal projective presentation `⊕ P_{relations[k]} -> ⊕ P_{generators[g]} -> M -> 0`
/// over a path algebra. The generator of the `k`-th relation summand maps to
/// `Σ_g maps[k][g]`, where `maps[k][g]` combines paths `generators[g] -> relations[k]`.
/// Over a hereditary algebra the first map is injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub generator_vectors: Vec<Vec<Scalar>>,
    pub relations: Vec<usize>,
    pub maps: Vec<Vec<Vec<(Scalar, Path)>>>,
}

/// Coordinates of `(⊕_g P_{v_g})_w`: pairs `(g, path v_g -> w)`.
fn cover_coords<'a>(pb: &'a PathBasis, gens: &[usize], w: usize) -> Vec<(usize, &'a Path)> {
    gens.iter().enumerate().flat_map(|(g, &v)| pb.paths(v, w).iter().map(move |p| (g, p))).collect()
}

fn complement(f: Field, width: usize, spanning: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut t = SpanTracker::new(f, width);
    for v in spanning {
        t.insert(v);
    }
    candidates.iter().filter(|c| matches!(t.insert(c), Membership::Added(_))).cloned().collect()
}

fn unit(f: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

/// Minimal projective presentation of a representation of an acyclic quiver
/// without relations.
pub fn presentation(m: &Representation) -> Presentation {
    let bq = m.bound_quiver();
    let f = m.field();
    let q = bq.quiver();
    let n = q.vertex_count();
    let pb = PathBasis::new(q);

    // Top of M: standard vectors completing the radical at each vertex.
    let mut generators = Vec::new();
    let mut generator_vectors = Vec::new();
    for v in 0..n {
        let d = m.dims()[v];
        let mut rad = Vec::new();
        for (ai, _) in q.arrows_into(v) {
            rad.extend(m.map(ai).column_space());
        }
        let units: Vec<Vec<Scalar>> = (0..d).map(|i| unit(f, d, i)).collect();
        for x in complement(f, d, &rad, &units) {
            generators.push(v);
            generator_vectors.push(x);
        }
    }

    // Kernel of the cover, vertex by vertex, in cover coordinates.
    let kernels: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|w| {
            let coords = cover_coords(&pb, &generators, w);
            let cols: Vec<Vec<Scalar>> =
                coords.iter().map(|&(g, p)| m.eval_path(p).mul_vec(&generator_vectors[g])).collect();
            if cols.is_empty() {
                return Vec::new();
            }
            Mat::from_columns(f, m.dims()[w], &cols).kernel_basis()
        })
        .collect();

    // Top of the kernel.
    let mut relations = Vec::new();
    let mut maps = Vec::new();
    for s in 0..n {
        let coords = cover_coords(&pb, &generators, s);
        let pos: BTreeMap<(usize, &Path), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rad = Vec::new();
        for (ai, a) in q.arrows_into(s) {
            let from = cover_coords(&pb, &generators, a.source);
            for k in &kernels[a.source] {
                let mut img = vec![f.zero(); coords.len()];
                for (&(g, p), &x) in from.iter().zip(k) {
                    if !f.is_zero(x) {
                        let longer = p.then(q, ai).expect("composable");
                        img[pos[&(g, &longer)]] = x;
                    }
                }
                rad.push(img);
            }
        }
        for k in complement(f, coords.len(), &rad, &kernels[s]) {
            let mut row = vec![Vec::new(); generators.len()];
            for (&(g, p), x) in coords.iter().zip(&k) {
                if !f.is_zero(*x) {
                    row[g].push((*x, p.clone()));
                }
            }
            relations.push(s);
            maps.push(row);
        }
    }
    Presentation { generators, generator_vectors, relations, maps }
}

/// Cokernel of `⊕_g P_{domain[g]} -> ⊕_k P_{codomain[k]}` where the `g`-th
/// generator goes to `Σ_k comps[k][g]`, a combination of paths `codomain[k] -> domain[g]`.
pub(crate) fn cokernel_of_projectives(
    bq: &Arc<BoundQuiver>,
    codomain: &[usize],
    domain: &[usize],
    comps: &[Vec<Vec<(Scalar, Path)>>],
) -> Representation {
    let f = bq.field();
    let q = bq.quiver();
    if codomain.is_empty() {
        return Representation::zero(bq.clone());
    }
    let pb = PathBasis::new(q);
    let parts: Vec<Representation> = codomain.iter().map(|&v| projective_with(bq, &pb, v)).collect();
    let refs: Vec<&Representation> = parts.iter().collect();
    let x = Representation::direct_sum(&refs).expect("same quiver");
    let sub: Vec<Mat> = (0..q.vertex_count())
        .map(|w| {
            let coords = cover_coords(&pb, codomain, w);
            let pos: BTreeMap<(usize, &Path), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut cols = Vec::new();
            for (g, &dv) in domain.iter().enumerate() {
                for r in pb.paths(dv, w) {
                    let mut v = vec![f.zero(); coords.len()];
                    for (k, row) in comps.iter().enumerate() {
                        for (c, qp) in &row[g] {
                            let long = qp.compose_before(r).expect("composable");
                            let i = pos[&(k, &long)];
                            v[i] = f.add(v[i], *c);
                        }
                    }
                    cols.push(v);
                }
            }
            let basis = if cols.is_empty() { Vec::new() } else { Mat::from_columns(f, coords.len(), &cols).column_space() };
            Mat::from_columns(f, coords.len(), &basis)
        })
        .collect();
    x.quotient(&sub).expect("image of a module map is a submodule").0
}

fn reversed(p: &Path) -> Path {
    let mut arrows = p.arrows.clone();
    arrows.reverse();
    Path { source: p.target, target: p.source, arrows }
}

/// `Tr D M`: dualize to the opposite quiver, take a minimal presentation
/// there, and dualize the presentation back. For an indecomposable
/// non-injective `M` over a path algebra this is `τ⁻M`; for an injective
/// one it is zero.
pub fn transpose_dual(m: &Representation) -> Representation {
    let bq = m.bound_quiver();
    let f = m.field();
    let op = Arc::new(BoundQuiver::hereditary(format!("{}^op", bq.name()), f, bq.quiver().opposite()));
    let dual = Representation::new(op, m.dims().to_vec(), m.maps().iter().map(Mat::transpose).collect()).expect("dual module");
    let pres = presentation(&dual);
    let comps: Vec<Vec<Vec<(Scalar, Path)>>> = pres
        .maps
        .iter()
        .map(|row| row.iter().map(|combo| combo.iter().map(|(c, p)| (*c, reversed(p))).collect()).collect())
        .collect();
    cokernel_of_projectives(bq, &pres.relations, &pres.generators, &comps)
}
