use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{uniform_below, Field, Mat, SeededRng};
use crate::quiver::{BoundQuiver, Path};
use crate::rep::Representation;

/// Default number of attempts before a sampler gives up.
pub const DEFAULT_SAMPLE_BUDGET: usize = 64;

fn eval(maps: &[Mat], dims: &[usize], f: Field, p: &Path) -> Mat {
    let mut acc = Mat::identity(f, dims[p.source]);
    for &a in &p.arrows {
        acc = maps[a].mul(&acc);
    }
    acc
}

fn random_invertible(f: Field, n: usize, rng: &mut SeededRng) -> Mat {
    loop {
        let m = Mat::from_fn(f, n, n, |_, _| f.random(rng));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// One attempt. Basis vectors are spread evenly over `levels` levels in a
/// random order and arrows may only raise the level by one; within that
/// shape an arrow solves every relation that is linear in it once all its
/// other arrows are known. Relations left over are checked by the caller.
fn attempt(bq: &BoundQuiver, dims: &[usize], levels: usize, rng: &mut SeededRng) -> Option<Vec<Mat>> {
    let f = bq.field();
    let q = bq.quiver();
    let mut order: Vec<(usize, usize)> = dims.iter().enumerate().flat_map(|(v, &d)| (0..d).map(move |i| (v, i))).collect();
    for i in (1..order.len()).rev() {
        let j = uniform_below(rng, i as u64 + 1) as usize;
        order.swap(i, j);
    }
    let mut level: Vec<Vec<usize>> = dims.iter().map(|&d| vec![0; d]).collect();
    for (pos, &(v, i)) in order.iter().enumerate() {
        level[v][i] = pos % levels;
    }
    let mut maps: Vec<Mat> = q.arrows().iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();

    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let free: Vec<(usize, usize)> = (0..dims[t])
            .flat_map(|i| (0..dims[s]).map(move |j| (i, j)))
            .filter(|&(i, j)| level[t][i] == level[s][j] + 1)
            .collect();
        let mut rows: Vec<Vec<crate::exactlin::Scalar>> = Vec::new();
        let mut rhs = Vec::new();
        for rel in bq.relations() {
            let ready = rel.terms().iter().all(|(_, p)| p.arrows.iter().all(|&b| b <= ai));
            let touches = rel.terms().iter().any(|(_, p)| p.arrows.contains(&ai));
            let linear = rel.terms().iter().all(|(_, p)| p.arrows.iter().filter(|&&b| b == ai).count() <= 1);
            if !(ready && touches && linear) {
                continue;
            }
            let (m, n) = (dims[rel.target()], dims[rel.source()]);
            let mut coeff = vec![vec![f.zero(); free.len()]; m * n];
            let mut constant = Mat::zeros(f, m, n);
            for (c, p) in rel.terms() {
                match p.arrows.iter().position(|&b| b == ai) {
                    None => constant.add_scaled(*c, &eval(&maps, dims, f, p)),
                    Some(k) => {
                        let before = Path { source: p.source, target: s, arrows: p.arrows[..k].to_vec() };
                        let after = Path { source: t, target: p.target, arrows: p.arrows[k + 1..].to_vec() };
                        let (r, l) = (eval(&maps, dims, f, &before), eval(&maps, dims, f, &after));
                        for (u, &(kk, ll)) in free.iter().enumerate() {
                            for i in 0..m {
                                let lik = l.get(i, kk);
                                if f.is_zero(lik) {
                                    continue;
                                }
                                for j in 0..n {
                                    let x = f.mul(*c, f.mul(lik, r.get(ll, j)));
                                    coeff[i * n + j][u] = f.add(coeff[i * n + j][u], x);
                                }
                            }
                        }
                    }
                }
            }
            for i in 0..m {
                for j in 0..n {
                    rows.push(core::mem::take(&mut coeff[i * n + j]));
                    rhs.push(f.neg(constant.get(i, j)));
                }
            }
        }
        let values: Vec<crate::exactlin::Scalar> = if rows.is_empty() {
            free.iter().map(|_| f.random_nonzero(rng)).collect()
        } else {
            let data: Vec<_> = rows.into_iter().flatten().collect();
            let sys = Mat::from_data(f, rhs.len(), free.len(), data).ok()?;
            let sol = sys.solve_linear(&rhs).ok()??;
            let mut v = sol.particular;
            for k in &sol.kernel {
                let c = f.random(rng);
                for (x, y) in v.iter_mut().zip(k) {
                    *x = f.add(*x, f.mul(c, *y));
                }
            }
            v
        };
        for (&(i, j), x) in free.iter().zip(values) {
            maps[ai].set(i, j, x);
        }
    }
    Some(maps)
}

/// A random point of the representation variety of `bq` with dimension
/// vector `dims`, or `None` when `budget` attempts all fail.
///
/// Hereditary algebras are sampled uniformly. With relations the points are
/// graded, starting from as many levels as the nilpotency bound allows and
/// dropping one level per failed attempt, and then moved by a random base
/// change. This favours points of large rank; it is not uniform.
pub fn sample_point(bq: &Arc<BoundQuiver>, dims: &[usize], rng: &mut SeededRng, budget: usize) -> Option<Representation> {
    if bq.is_hereditary() {
        return Some(Representation::random_hereditary(bq.clone(), dims.to_vec(), rng));
    }
    let f = bq.field();
    let top = bq.nilbound().min(dims.iter().sum::<usize>()).max(1);
    for k in 0..budget {
        let Some(maps) = attempt(bq, dims, top - k % top, rng) else { continue };
        let Ok(m) = Representation::new(bq.clone(), dims.to_vec(), maps) else { continue };
        let base: Vec<Mat> = dims.iter().map(|&d| random_invertible(f, d, rng)).collect();
        return m.transport(&base);
    }
    None
}
