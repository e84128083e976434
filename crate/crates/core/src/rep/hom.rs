use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::Representation;
use crate::error::RepError;
use crate::exactlin::{Mat, Membership, RowEchelon, Scalar, SpanTracker};

/// A basis of `Hom(M, N)`; each element is one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub basis: Vec<Vec<Mat>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Mat> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out: Vec<Mat> = Vec::new();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if out.is_empty() {
                out = b.iter().map(|m| m.scale(*c)).collect();
            } else {
                for (o, m) in out.iter_mut().zip(b) {
                    o.add_scaled(*c, m);
                }
            }
        }
        out
    }
}

/// Whether `f` (one matrix per vertex) intertwines `m` and `n`.
pub fn is_homomorphism(m: &Representation, n: &Representation, f: &[Mat]) -> bool {
    m.bound_quiver()
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .all(|(i, a)| f[a.target].mul(m.map(i)) == n.map(i).mul(&f[a.source]))
}

struct Band {
    lo: usize,
    m: Mat,
}

enum Origin {
    Generator(usize),
    Arrow { arrow: usize, from: usize },
}

/// `Hom(M, N)` by spinning: `M` is generated from a few vectors, a morphism
/// is fixed by their images, and the arrow actions on a spanning basis give
/// the linear conditions on those images.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace, RepError> {
    let bq = m.bound_quiver();
    if !alloc::sync::Arc::ptr_eq(bq, n.bound_quiver()) && **bq != **n.bound_quiver() {
        return Err(RepError::QuiverMismatch);
    }
    let f = m.field();
    let q = bq.quiver();
    let nv = q.vertex_count();
    let order = q.topological_order().unwrap_or_else(|| (0..nv).collect());

    let mut trackers: Vec<SpanTracker> = (0..nv).map(|v| SpanTracker::new(f, m.dims()[v])).collect();
    let mut vecs: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
    let mut origins: Vec<Vec<Origin>> = (0..nv).map(|_| Vec::new()).collect();
    let mut sequence: Vec<(usize, usize)> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    let mut pending: Vec<(usize, usize, usize, Vec<Scalar>)> = Vec::new();

    for &v in &order {
        for i in 0..m.dims()[v] {
            let mut e = vec![f.zero(); m.dims()[v]];
            e[i] = f.one();
            let Membership::Added(k) = trackers[v].insert(&e) else { continue };
            vecs[v].push(e);
            origins[v].push(Origin::Generator(gens.len()));
            gens.push(v);
            sequence.push((v, k));
            let mut queue = VecDeque::from([(v, k)]);
            while let Some((s, k)) = queue.pop_front() {
                for (ai, a) in q.arrows_from(s) {
                    let w = m.map(ai).mul_vec(&vecs[s][k]);
                    match trackers[a.target].insert(&w) {
                        Membership::Added(k2) => {
                            vecs[a.target].push(w);
                            origins[a.target].push(Origin::Arrow { arrow: ai, from: k });
                            sequence.push((a.target, k2));
                            queue.push_back((a.target, k2));
                        }
                        Membership::Inside(coords) => pending.push((s, k, ai, coords)),
                    }
                }
            }
        }
    }

    let mut offsets = Vec::with_capacity(gens.len());
    let mut width = 0;
    for &g in &gens {
        offsets.push(width);
        width += n.dims()[g];
    }

    // Symbolic images: the image of basis vector k at v is `sym[v][k] * u`,
    // where only the columns `lo..lo + cols` of the band can be nonzero.
    let mut sym: Vec<Vec<Band>> = (0..nv).map(|_| Vec::new()).collect();
    for &(v, k) in &sequence {
        let s = match origins[v][k] {
            Origin::Generator(g) => Band { lo: offsets[g], m: Mat::identity(f, n.dims()[v]) },
            Origin::Arrow { arrow, from } => {
                let src = &sym[q.arrows()[arrow].source][from];
                Band { lo: src.lo, m: n.map(arrow).mul(&src.m) }
            }
        };
        debug_assert_eq!(sym[v].len(), k);
        sym[v].push(s);
    }

    let mut eqs = RowEchelon::new(f, width);
    for (s, k, ai, coords) in &pending {
        if eqs.is_full() {
            break;
        }
        let t = q.arrows()[*ai].target;
        let head = Band { lo: sym[*s][*k].lo, m: n.map(*ai).mul(&sym[*s][*k].m) };
        let terms: Vec<(Scalar, &Band)> = core::iter::once((f.one(), &head))
            .chain(coords.iter().zip(&sym[t]).filter(|(c, _)| !f.is_zero(**c)).map(|(c, b)| (f.neg(*c), b)))
            .collect();
        let lo = terms.iter().map(|(_, b)| b.lo).min().unwrap_or(0);
        let hi = terms.iter().map(|(_, b)| b.lo + b.m.cols()).max().unwrap_or(0);
        let mut lhs = Mat::zeros(f, n.dims()[t], hi - lo);
        for (c, b) in terms {
            lhs.add_scaled_block(0, b.lo - lo, c, &b.m);
        }
        for r in 0..lhs.rows() {
            eqs.insert_at(lo, lhs.row(r));
        }
    }
    let kernel = if eqs.is_full() { Vec::new() } else { eqs.kernel_basis() };

    let inverses: Vec<Mat> = (0..nv)
        .map(|v| Mat::from_columns(f, m.dims()[v], &vecs[v]).inverse().expect("spun vectors span each vertex"))
        .collect();
    let basis = kernel
        .iter()
        .map(|u| {
            (0..nv)
                .map(|v| {
                    let cols: Vec<Vec<Scalar>> = sym[v].iter().map(|b| b.m.mul_vec(&u[b.lo..b.lo + b.m.cols()])).collect();
                    Mat::from_columns(f, n.dims()[v], &cols).mul(&inverses[v])
                })
                .collect()
        })
        .collect();
    Ok(HomSpace { source_dims: m.dims().to_vec(), target_dims: n.dims().to_vec(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rng_from_seed, Field};
    use crate::quiver::{named, BoundQuiver};
    use alloc::sync::Arc;

    fn f() -> Field {
        Field::Prime(101)
    }

    fn kronecker_point(bq: &Arc<BoundQuiver>, lambda: i64) -> Representation {
        let maps = vec![Mat::identity(f(), 1), Mat::from_i64_rows(f(), &[&[lambda]])];
        Representation::new(bq.clone(), vec![1, 1], maps).unwrap()
    }

    /// Oracle: kernel of the full commutation system in all matrix entries.
    pub(crate) fn naive_hom_dim(m: &Representation, n: &Representation) -> usize {
        let q = m.bound_quiver().quiver().clone();
        let nv = q.vertex_count();
        let mut offs = Vec::new();
        let mut total = 0;
        for v in 0..nv {
            offs.push(total);
            total += n.dims()[v] * m.dims()[v];
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            for i in 0..n.dims()[t] {
                for j in 0..m.dims()[s] {
                    // (f_t M_a - N_a f_s)[i][j] = 0
                    let mut row = vec![f().zero(); total];
                    for k in 0..m.dims()[t] {
                        let idx = offs[t] + i * m.dims()[t] + k;
                        row[idx] = f().add(row[idx], m.map(ai).get(k, j));
                    }
                    for k in 0..n.dims()[s] {
                        let idx = offs[s] + k * m.dims()[s] + j;
                        row[idx] = f().sub(row[idx], n.map(ai).get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return total;
        }
        let mat = Mat::from_fn(f(), rows.len(), total, |i, j| rows[i][j]);
        total - mat.rank()
    }

    #[test]
    fn simples() {
        let bq = Arc::new(BoundQuiver::hereditary("A2", f(), named::a2()));
        let s1 = Representation::simple(bq.clone(), 0);
        let s2 = Representation::simple(bq, 1);
        assert_eq!(hom_space(&s1, &s1).unwrap().dim(), 1);
        assert_eq!(hom_space(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_space(&s2, &s1).unwrap().dim(), 0);
    }

    #[test]
    fn kronecker_family() {
        let bq = Arc::new(BoundQuiver::hereditary("K2", f(), named::kronecker(2)));
        let a = kronecker_point(&bq, 3);
        let b = kronecker_point(&bq, 5);
        assert_eq!(hom_space(&a, &a).unwrap().dim(), 1);
        assert_eq!(hom_space(&a, &b).unwrap().dim(), 0);
    }

    #[test]
    fn mismatched_quivers() {
        let a = Representation::zero(Arc::new(BoundQuiver::hereditary("A2", f(), named::a2())));
        let b = Representation::zero(Arc::new(BoundQuiver::hereditary("K2", f(), named::kronecker(2))));
        assert_eq!(hom_space(&a, &b), Err(RepError::QuiverMismatch));
    }

    #[test]
    fn agrees_with_naive_system() {
        let bq = Arc::new(BoundQuiver::hereditary("K3", f(), named::kronecker(3)));
        let cyc = Arc::new(BoundQuiver::hereditary("loops", f(), named::two_loops()));
        let mut rng = rng_from_seed(11);
        for trial in 0..12 {
            let (d1, d2) = (vec![trial % 3, 1 + trial % 2], vec![1 + trial % 2, trial % 3]);
            let m = Representation::random_hereditary(bq.clone(), d1.clone(), &mut rng);
            let mut n = Representation::random_hereditary(bq.clone(), d2, &mut rng);
            if trial % 4 == 0 {
                n = Representation::direct_sum(&[&m, &n]).unwrap();
            }
            let h = hom_space(&m, &n).unwrap();
            assert_eq!(h.dim(), naive_hom_dim(&m, &n));
            assert!(h.basis.iter().all(|g| is_homomorphism(&m, &n, g)));

            let x = Representation::random_hereditary(cyc.clone(), vec![1 + trial % 3], &mut rng);
            let y = Representation::direct_sum(&[&x, &x]).unwrap();
            let h = hom_space(&x, &y).unwrap();
            assert_eq!(h.dim(), naive_hom_dim(&x, &y));
            assert!(h.basis.iter().all(|g| is_homomorphism(&x, &y, g)));
        }
    }
}
