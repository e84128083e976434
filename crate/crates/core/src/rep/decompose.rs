use alloc::vec::Vec;

use super::{hom_space, HomSpace, Representation};
use crate::error::RepError;
use crate::exactlin::poly::{charpoly, roots_in_field};
use crate::exactlin::{derive_seed, find_invertible_in_span, rng_from_seed, Mat, Scalar};

/// Default number of random combinations tried when looking for an isomorphism.
pub const DEFAULT_ISO_TRIALS: usize = 32;

/// Random endomorphisms examined when hunting for an idempotent.
const IDEMPOTENT_TRIALS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndecVerdict {
    Yes,
    /// Decomposable; carries a nontrivial idempotent endomorphism (absent
    /// only for the zero module).
    No(Option<Vec<Mat>>),
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonIsoReason {
    DimensionVectors,
    HomDimensions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Yes(Vec<Mat>),
    No(NonIsoReason),
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

fn stacked(parts: &[Mat]) -> Mat {
    let f = parts.first().map(|m| m.field()).unwrap_or_default();
    Mat::block_diag(f, parts)
}

/// Nontrivial idempotent from the Fitting decomposition of `a - λ`, if some
/// eigenvalue `λ` of `a` lies in the field and splits `M`.
fn fitting_idempotent(m: &Representation, a: &[Mat]) -> Option<Vec<Mat>> {
    let f = m.field();
    let n = m.total_dim() as u64;
    for lambda in roots_in_field(f, &charpoly(&stacked(a))) {
        let mut ranks = (0, 0);
        let powers: Vec<Mat> = a
            .iter()
            .map(|av| {
                let psi = av.sub(&Mat::identity(f, av.rows()).scale(lambda)).pow(n);
                ranks.0 += psi.rank();
                ranks.1 += av.rows();
                psi
            })
            .collect();
        if ranks.0 == 0 || ranks.0 == ranks.1 {
            continue;
        }
        // Projection onto the image along the kernel.
        let idem = powers
            .iter()
            .map(|p| {
                let d = p.rows();
                let image = p.column_space();
                let kernel = p.kernel_basis();
                let k = image.len();
                let mut cols = image;
                cols.extend(kernel);
                let basis = Mat::from_columns(f, d, &cols);
                let mut diag = Mat::zeros(f, d, d);
                for i in 0..k {
                    diag.set(i, i, f.one());
                }
                basis.mul(&diag).mul(&basis.inverse().expect("Fitting decomposition"))
            })
            .collect();
        return Some(idem);
    }
    None
}

fn find_idempotent(m: &Representation, end: &HomSpace, seed: u64) -> Option<Vec<Mat>> {
    let f = m.field();
    for b in &end.basis {
        if let Some(e) = fitting_idempotent(m, b) {
            return Some(e);
        }
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..IDEMPOTENT_TRIALS {
        let coeffs: Vec<Scalar> = end.basis.iter().map(|_| f.random(&mut rng)).collect();
        if let Some(e) = fitting_idempotent(m, &end.combine(&coeffs)) {
            return Some(e);
        }
    }
    None
}

/// Rank of the trace form `(a, b) -> tr(ab)` on `End(M)`; equals
/// `dim End(M)/rad` when the characteristic is 0 or exceeds `dim M`.
fn trace_form_rank(end: &HomSpace) -> usize {
    let d = end.dim();
    let Some(first) = end.basis.first() else { return 0 };
    let f = first[0].field();
    let g = Mat::from_fn(f, d, d, |i, j| {
        end.basis[i].iter().zip(&end.basis[j]).fold(f.zero(), |acc, (x, y)| f.add(acc, x.mul(y).trace()))
    });
    g.rank()
}

fn radical_is_exact(m: &Representation) -> bool {
    let c = m.field().characteristic();
    c == 0 || c > m.total_dim() as u64
}

/// Indecomposability from `End(M)`.
///
/// `Yes` is certified by `dim End(M)/rad = 1` (radical from the trace form,
/// which is exact in characteristic 0 or above `dim M`); `No` carries an
/// idempotent found by Fitting splitting of seeded random endomorphisms.
pub fn is_indecomposable(m: &Representation, seed: u64) -> IndecVerdict {
    if m.is_zero() {
        return IndecVerdict::No(None);
    }
    let end = hom_space(m, m).expect("same quiver");
    if end.dim() == 1 {
        return IndecVerdict::Yes;
    }
    if radical_is_exact(m) && trace_form_rank(&end) == 1 {
        return IndecVerdict::Yes;
    }
    match find_idempotent(m, &end, seed) {
        Some(e) => IndecVerdict::No(Some(e)),
        None => IndecVerdict::Inconclusive,
    }
}

/// Isomorphism test. Negative answers come only from exact dimension counts;
/// positive ones carry an invertible intertwiner.
pub fn are_isomorphic(m: &Representation, n: &Representation, trials: usize, seed: u64) -> Result<IsoVerdict, RepError> {
    let hmn = hom_space(m, n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::No(NonIsoReason::DimensionVectors));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Yes(m.dims().iter().map(|_| Mat::zeros(m.field(), 0, 0)).collect()));
    }
    let hnm = hom_space(n, m)?;
    if hmn.dim() != hnm.dim() || hmn.dim() == 0 {
        return Ok(IsoVerdict::No(NonIsoReason::HomDimensions));
    }
    let end = hom_space(m, m)?;
    if end.dim() != hmn.dim() {
        return Ok(IsoVerdict::No(NonIsoReason::HomDimensions));
    }
    let span: Vec<Mat> = hmn.basis.iter().map(|b| stacked(b)).collect();
    Ok(match find_invertible_in_span(&span, trials, seed) {
        Some(w) => IsoVerdict::Yes(hmn.combine(&w.coefficients)),
        None => IsoVerdict::Inconclusive,
    })
}

/// Krull–Schmidt decomposition with multiplicities.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<(Representation, usize)>,
    /// Every summand certified indecomposable and every grouping decision definite.
    pub complete: bool,
    /// The summands, with multiplicity, were checked to reassemble the input
    /// by an explicit change of basis.
    pub verified: bool,
}

struct Leaf {
    rep: Representation,
    embedding: Vec<Mat>,
    certified: bool,
}

fn split(m: &Representation, seed: u64, counter: &mut u64, out: &mut Vec<Leaf>) {
    let f = m.field();
    *counter += 1;
    let embedding = m.dims().iter().map(|&d| Mat::identity(f, d)).collect();
    match is_indecomposable(m, derive_seed(seed, *counter)) {
        IndecVerdict::Yes => out.push(Leaf { rep: m.clone(), embedding, certified: true }),
        IndecVerdict::Inconclusive => out.push(Leaf { rep: m.clone(), embedding, certified: false }),
        IndecVerdict::No(None) => {}
        IndecVerdict::No(Some(e)) => {
            for part in [e.clone(), e.iter().map(|x| Mat::identity(f, x.rows()).sub(x)).collect::<Vec<_>>()] {
                let bases: Vec<Mat> =
                    part.iter().map(|p| Mat::from_columns(f, p.rows(), &p.column_space())).collect();
                let sub = m.restrict(&bases).expect("image of an idempotent endomorphism is a summand");
                let start = out.len();
                split(&sub, seed, counter, out);
                for leaf in &mut out[start..] {
                    leaf.embedding = bases.iter().zip(&leaf.embedding).map(|(b, e)| b.mul(e)).collect();
                }
            }
        }
    }
}

/// Split `M` into indecomposables by idempotents, group isomorphic pieces,
/// and check the reassembly exactly.
pub fn decompose(m: &Representation, seed: u64) -> Decomposition {
    let f = m.field();
    let mut leaves = Vec::new();
    let mut counter = 0;
    split(m, seed, &mut counter, &mut leaves);

    let verified = {
        let nv = m.dims().len();
        let p: Vec<Mat> = (0..nv)
            .map(|v| {
                leaves.iter().fold(Mat::zeros(f, m.dims()[v], 0), |acc, l| acc.hstack(&l.embedding[v]))
            })
            .collect();
        let parts: Vec<&Representation> = leaves.iter().map(|l| &l.rep).collect();
        match (m.transport(&p), Representation::direct_sum(&parts)) {
            (Some(t), Ok(sum)) => t == sum,
            (Some(_), Err(_)) => m.is_zero(),
            (None, _) => false,
        }
    };

    let mut complete = leaves.iter().all(|l| l.certified);
    let mut summands: Vec<(Representation, usize)> = Vec::new();
    for leaf in leaves {
        let mut placed = false;
        for (rep, mult) in summands.iter_mut() {
            counter += 1;
            match are_isomorphic(rep, &leaf.rep, DEFAULT_ISO_TRIALS, derive_seed(seed, counter)) {
                Ok(IsoVerdict::Yes(_)) => {
                    *mult += 1;
                    placed = true;
                    break;
                }
                Ok(IsoVerdict::No(_)) => {}
                Ok(IsoVerdict::Inconclusive) | Err(_) => complete = false,
            }
        }
        if !placed {
            summands.push((leaf.rep, 1));
        }
    }
    Decomposition { summands, complete, verified }
}

/// Whether every indecomposable summand of `M` is sincere.
///
/// `No` is exact as soon as some piece misses a vertex; `Yes` needs every
/// piece certified indecomposable.
pub fn in_sincere_subcategory(m: &Representation, seed: u64) -> Verdict {
    let d = decompose(m, seed);
    if d.summands.iter().any(|(s, _)| !s.is_sincere()) {
        return Verdict::No;
    }
    if d.summands.is_empty() || (d.complete && d.verified) {
        Verdict::Yes
    } else {
        Verdict::Inconclusive
    }
}
