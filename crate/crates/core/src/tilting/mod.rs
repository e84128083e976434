//! Preprojective combinatorics over path algebras of acyclic quivers:
//! Cartan and Coxeter matrices, `τ⁻` by transpose-of-dual, tilting modules
//! built from preprojectives and their endomorphism algebras.
//!
//! Dimension vectors are row vectors: `dim τ⁻M = dim M · Φ⁻¹`.

mod endalg;
mod present;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use endalg::{endomorphism_algebra, EndPresentation};
pub use present::{presentation, projective, transpose_dual, Presentation};

use crate::error::TiltingError;
use crate::exactlin::{Field, Mat};
use crate::quiver::{BoundQuiver, Quiver};
use crate::rep::{are_isomorphic, hom_space, IsoVerdict, Representation, DEFAULT_ISO_TRIALS};

/// Integer Cartan and Coxeter data of an acyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanData {
    /// `cartan[j][i]` = number of paths `i -> j`; column `i` is `dim P_i`.
    pub cartan: Vec<Vec<i64>>,
    /// `Φ = -C^{-T} C`, acting on row vectors: `dim τM = dim M · Φ` for
    /// non-projective indecomposable `M`.
    pub coxeter: Vec<Vec<i64>>,
    pub coxeter_inverse: Vec<Vec<i64>>,
}

fn to_int(m: &Mat) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let x = m.get(i, j);
                    debug_assert_eq!(x.denom(), 1);
                    x.numer() as i64
                })
                .collect()
        })
        .collect()
}

fn from_int(rows: &[Vec<i64>]) -> Mat {
    let f = Field::Rationals;
    let n = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    Mat::from_fn(f, n, c, |i, j| f.from_i64(rows[i][j]))
}

fn row_times(d: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m.first().map_or(0, Vec::len)).map(|j| d.iter().zip(m).map(|(x, row)| x * row[j]).sum()).collect()
}

impl CartanData {
    /// `d · Φ`.
    pub fn tau(&self, d: &[i64]) -> Vec<i64> {
        row_times(d, &self.coxeter)
    }

    /// `d · Φ⁻¹`.
    pub fn tau_inverse(&self, d: &[i64]) -> Vec<i64> {
        row_times(d, &self.coxeter_inverse)
    }
}

pub fn cartan_coxeter(q: &Quiver) -> Result<CartanData, TiltingError> {
    if !q.is_acyclic() {
        return Err(TiltingError::Cyclic);
    }
    let n = q.vertex_count();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for p in q.paths_from(i, n) {
            cartan[p.target][i] += 1;
        }
    }
    let c = from_int(&cartan);
    let ct_inv = c.transpose().inverse().expect("unitriangular up to order");
    let phi = ct_inv.mul(&c).scale(Field::Rationals.from_i64(-1));
    let phi_inv = phi.inverse().expect("determinant ±1");
    Ok(CartanData { cartan, coxeter: to_int(&phi), coxeter_inverse: to_int(&phi_inv) })
}

/// `⟨d, e⟩ = Σ d_i e_i - Σ_{a: s -> t} d_s e_t`.
pub fn euler_form(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(x, y)| x * y).sum();
    diag - q.arrows().iter().map(|a| d[a.source] * e[a.target]).sum::<i64>()
}

fn require_path_algebra(bq: &BoundQuiver) -> Result<(), TiltingError> {
    if !bq.is_hereditary() {
        return Err(TiltingError::NotHereditary);
    }
    if !bq.quiver().is_acyclic() {
        return Err(TiltingError::Cyclic);
    }
    Ok(())
}

/// `τ⁻M` for an indecomposable non-injective module over a path algebra.
pub fn ar_translate_inverse(m: &Representation) -> Result<Representation, TiltingError> {
    require_path_algebra(m.bound_quiver())?;
    let out = transpose_dual(m);
    if out.is_zero() {
        return Err(TiltingError::Injective);
    }
    Ok(out)
}

pub fn dim_vector(m: &Representation) -> Vec<i64> {
    m.dims().iter().map(|&d| d as i64).collect()
}

/// `τ^{-shift} P_vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preprojective {
    pub vertex: usize,
    pub shift: usize,
    pub module: Representation,
    pub sincere: bool,
}

impl Preprojective {
    pub fn is_projective(&self) -> bool {
        self.shift == 0
    }

    pub fn label(&self) -> alloc::string::String {
        if self.shift == 0 {
            format!("P{}", self.vertex)
        } else {
            format!("t-{}P{}", self.shift, self.vertex)
        }
    }
}

/// `τ^{-j} P_i` for every vertex `i` and `0 <= j <= depth`, ordered by `j`
/// then `i`. A τ-orbit stops early when it reaches an injective.
pub fn enumerate_preprojectives(bq: &Arc<BoundQuiver>, depth: usize) -> Result<Vec<Preprojective>, TiltingError> {
    require_path_algebra(bq)?;
    let n = bq.quiver().vertex_count();
    let mut current: Vec<Option<Representation>> = (0..n).map(|v| Some(projective(bq, v))).collect();
    let mut out = Vec::new();
    for shift in 0..=depth {
        for (vertex, slot) in current.iter().enumerate() {
            if let Some(m) = slot {
                out.push(Preprojective { vertex, shift, module: m.clone(), sincere: m.is_sincere() });
            }
        }
        if shift == depth {
            break;
        }
        for slot in current.iter_mut() {
            *slot = match slot.take() {
                Some(m) => match ar_translate_inverse(&m) {
                    Ok(next) => Some(next),
                    Err(TiltingError::Injective) => None,
                    Err(e) => return Err(e),
                },
                None => None,
            };
        }
    }
    Ok(out)
}

/// A candidate tilting module: a list of indecomposable preprojective summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingCandidate {
    pub summands: Vec<Preprojective>,
}

impl TiltingCandidate {
    pub fn labels(&self) -> Vec<alloc::string::String> {
        self.summands.iter().map(Preprojective::label).collect()
    }
}

/// `dim Ext¹(M, N) = dim Hom(M, N) - ⟨dim M, dim N⟩` over a path algebra.
pub fn ext1_dimension(m: &Representation, n: &Representation) -> Result<usize, TiltingError> {
    let hom = hom_space(m, n)?.dim() as i64;
    let e = hom - euler_form(m.bound_quiver().quiver(), &dim_vector(m), &dim_vector(n));
    Ok(e as usize)
}

/// Why a candidate is not tilting, or `None` if it is.
pub fn tilting_defect(t: &TiltingCandidate) -> Result<Option<alloc::string::String>, TiltingError> {
    let Some(first) = t.summands.first() else {
        return Ok(Some("no summands".into()));
    };
    let n = first.module.bound_quiver().quiver().vertex_count();
    if t.summands.len() != n {
        return Ok(Some(format!("{} summands for {n} vertices", t.summands.len())));
    }
    for (i, a) in t.summands.iter().enumerate() {
        for (j, b) in t.summands.iter().enumerate() {
            if i < j {
                let v = are_isomorphic(&a.module, &b.module, DEFAULT_ISO_TRIALS, (i * n + j) as u64)?;
                if !matches!(v, IsoVerdict::No(_)) {
                    return Ok(Some(format!("summands {} and {} are not known to be distinct", a.label(), b.label())));
                }
            }
            let e = ext1_dimension(&a.module, &b.module)?;
            if e != 0 {
                return Ok(Some(format!("dim Ext1({}, {}) = {e}", a.label(), b.label())));
            }
        }
    }
    Ok(None)
}

pub fn is_tilting(t: &TiltingCandidate) -> Result<bool, TiltingError> {
    Ok(tilting_defect(t)?.is_none())
}

/// A tilting candidate found by [`search_concealed`] with its endomorphism algebra.
#[derive(Clone, Debug)]
pub struct ConcealedCandidate {
    pub tilting: TiltingCandidate,
    pub endomorphisms: EndPresentation,
    /// Number of non-sincere summands.
    pub non_sincere: usize,
    pub depth: usize,
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Tilting modules among sums of preprojectives `τ^{-j} P_i` with
/// `j <= depth` and at least one projective summand, each with its
/// endomorphism algebra. Bounded by `depth`; not a classification. Meant
/// for minimal wild hereditary quivers, but any path algebra is accepted.
pub fn search_concealed(bq: &Arc<BoundQuiver>, depth: usize) -> Result<Vec<ConcealedCandidate>, TiltingError> {
    let pre = enumerate_preprojectives(bq, depth)?;
    let n = bq.quiver().vertex_count();
    let mut out = Vec::new();
    for subset in choose(pre.len(), n) {
        let summands: Vec<Preprojective> = subset.iter().map(|&i| pre[i].clone()).collect();
        if !summands.iter().any(Preprojective::is_projective) {
            continue;
        }
        let tilting = TiltingCandidate { summands };
        if !is_tilting(&tilting)? {
            continue;
        }
        let endomorphisms = endomorphism_algebra(&tilting)?;
        let non_sincere = tilting.summands.iter().filter(|s| !s.sincere).count();
        out.push(ConcealedCandidate { tilting, endomorphisms, non_sincere, depth });
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
