use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::TiltingCandidate;
use crate::error::TiltingError;
use crate::exactlin::{poly, Field, Mat, Membership, Scalar, SpanTracker};
use crate::quiver::{build_algebra_table, AlgebraTable, Arrow, BoundQuiver, Path, Quiver, Relation};
use crate::rep::{hom_space, Representation};

/// A basic bound-quiver presentation of `End(T)`.
///
/// Vertex `i` stands for the summand `T_i`. An arrow `j -> i` is a radical
/// morphism `T_i -> T_j`, so a path `a_m ... a_1` from `u` to `w` evaluates
/// to `φ_{a_1} ∘ ... ∘ φ_{a_m}: T_w -> T_u`. With this convention `End(H)`
/// has the quiver of `H`.
#[derive(Clone, Debug)]
pub struct EndPresentation {
    pub bound_quiver: BoundQuiver,
    pub table: AlgebraTable,
    /// `hom_dims[i][j] = dim Hom(T_i, T_j)`.
    pub hom_dims: Vec<Vec<usize>>,
    pub dimension: usize,
    /// Least `N` with `rad^N End(T) = 0`.
    pub nilpotency: usize,
}

type Morphism = Vec<Mat>;

fn flatten(m: &Morphism) -> Vec<Scalar> {
    m.iter().flat_map(|b| b.data().iter().copied()).collect()
}

fn compose(g: &Morphism, f: &Morphism) -> Morphism {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

fn identity(f: Field, m: &Representation) -> Morphism {
    m.dims().iter().map(|&d| Mat::identity(f, d)).collect()
}

/// Radical of the local ring `End(M)`: `φ - λ(φ)·1` over a basis, where
/// `λ(φ)` is the only eigenvalue of `φ`.
fn local_radical(f: Field, m: &Representation, basis: &[Morphism], which: usize) -> Result<Vec<Morphism>, TiltingError> {
    let id = identity(f, m);
    let width = flatten(&id).len();
    let mut span = SpanTracker::new(f, width);
    let mut out = Vec::new();
    for phi in basis {
        let big = Mat::block_diag(f, phi);
        let roots = poly::roots_in_field(f, &poly::charpoly(&big));
        let lambda = match roots.as_slice() {
            [l] => *l,
            [] if big.rows() == 0 => f.zero(),
            _ => return Err(TiltingError::NonSplitEndomorphisms(which)),
        };
        let shifted: Morphism = phi.iter().zip(&id).map(|(a, e)| a.sub(&e.scale(lambda))).collect();
        if !Mat::block_diag(f, &shifted).is_nilpotent() {
            return Err(TiltingError::NonSplitEndomorphisms(which));
        }
        if matches!(span.insert(&flatten(&shifted)), Membership::Added(_)) {
            out.push(shifted);
        }
    }
    Ok(out)
}

/// Independent members of `candidates` outside the span of `spanning`.
fn complement(f: Field, width: usize, spanning: &[Morphism], candidates: &[Morphism]) -> Vec<Morphism> {
    let mut t = SpanTracker::new(f, width);
    for s in spanning {
        t.insert(&flatten(s));
    }
    candidates.iter().filter(|c| matches!(t.insert(&flatten(c)), Membership::Added(_))).cloned().collect()
}

struct Arrows {
    quiver: Quiver,
    /// Morphism of each arrow `j -> i`, as a map `T_i -> T_j`.
    maps: Vec<Morphism>,
}

fn eval_path(ar: &Arrows, zero: &dyn Fn(usize, usize) -> Morphism, p: &Path) -> Morphism {
    let mut acc: Option<Morphism> = None;
    for &a in p.arrows.iter().rev() {
        acc = Some(match acc {
            None => ar.maps[a].clone(),
            Some(m) => compose(&ar.maps[a], &m),
        });
    }
    acc.unwrap_or_else(|| zero(p.target, p.source))
}

fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    for _ in 0..len {
        out = out.iter().flat_map(|p| q.arrows_from(p.target).map(move |(ai, a)| {
            let mut arrows = p.arrows.clone();
            arrows.push(ai);
            Path { source: p.source, target: a.target, arrows }
        })).collect();
    }
    out
}

/// Build `End(T)` from Hom blocks and present it by a quiver with relations.
/// Relations are found degree by degree up to the nilpotency degree of the
/// radical, keeping only those outside the ideal generated so far; the
/// result is accepted only if its dimension equals `Σ dim Hom(T_i, T_j)`.
pub fn endomorphism_algebra(t: &TiltingCandidate) -> Result<EndPresentation, TiltingError> {
    if let Some(reason) = super::tilting_defect(t)? {
        return Err(TiltingError::NotTilting(reason));
    }
    let mods: Vec<&Representation> = t.summands.iter().map(|s| &s.module).collect();
    let n = mods.len();
    let f = mods[0].field();
    let mut homs: Vec<Vec<Vec<Morphism>>> = Vec::new();
    for a in &mods {
        let mut row = Vec::new();
        for b in &mods {
            row.push(hom_space(a, b)?.basis);
        }
        homs.push(row);
    }
    let hom_dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(Vec::len).collect()).collect();
    let dimension: usize = hom_dims.iter().flatten().sum();
    let width = |i: usize, j: usize| -> usize { mods[i].dims().iter().zip(mods[j].dims()).map(|(x, y)| x * y).sum() };
    let zero = |i: usize, j: usize| -> Morphism { mods[i].dims().iter().zip(mods[j].dims()).map(|(&x, &y)| Mat::zeros(f, y, x)).collect() };

    // rad[i][j] ⊆ Hom(T_i, T_j).
    let mut rad: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rad[i][j] = if i == j { local_radical(f, mods[i], &homs[i][i], i)? } else { homs[i][j].clone() };
        }
    }
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut sq = Vec::new();
            for k in 0..n {
                for a in &rad[i][k] {
                    for b in &rad[k][j] {
                        sq.push(compose(b, a));
                    }
                }
            }
            for phi in complement(f, width(i, j), &sq, &rad[i][j]) {
                arrows.push(Arrow { name: format!("x{}", arrows.len()), source: j, target: i });
                maps.push(phi);
            }
        }
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("T{i}")).collect();
    let quiver = Quiver::new(vertices, arrows)?;
    let ar = Arrows { quiver: quiver.clone(), maps };

    // Nilpotency degree: first length where every path vanishes.
    let cap = dimension + 1;
    let mut nilpotency = 1;
    while nilpotency <= cap {
        let all_zero = paths_of_length(&quiver, nilpotency).iter().all(|p| flatten(&eval_path(&ar, &zero, p)).iter().all(|x| f.is_zero(*x)));
        if all_zero {
            break;
        }
        nilpotency += 1;
    }
    if nilpotency > cap {
        return Err(TiltingError::Presentation(String::from("radical is not nilpotent")));
    }

    let relations = recover_relations(f, &ar, &zero, &width, nilpotency)?;
    let bq = BoundQuiver::new("End(T)", f, quiver, relations, Some(nilpotency.max(2)))?;
    let table = build_algebra_table(&bq).map_err(|e| TiltingError::Presentation(format!("{e}")))?;
    if table.dimension() != dimension {
        return Err(TiltingError::Presentation(format!("presented dimension {} but dim End(T) = {dimension}", table.dimension())));
    }
    Ok(EndPresentation { bound_quiver: bq, table, hom_dims, dimension, nilpotency })
}

type Combo = Vec<(Scalar, Path)>;

fn recover_relations(
    f: Field,
    ar: &Arrows,
    zero: &dyn Fn(usize, usize) -> Morphism,
    width: &dyn Fn(usize, usize) -> usize,
    nilpotency: usize,
) -> Result<Vec<Relation>, TiltingError> {
    let q = &ar.quiver;
    let n = q.vertex_count();
    let mut kept: Vec<Combo> = Vec::new();
    let by_len: Vec<Vec<Path>> = (0..=nilpotency).map(|l| paths_of_length(q, l)).collect();
    for level in 2..=nilpotency {
        for u in 0..n {
            for w in 0..n {
                let paths: Vec<Path> =
                    (2..=level).flat_map(|l| by_len[l].iter().filter(|p| p.source == u && p.target == w).cloned()).collect();
                if paths.is_empty() {
                    continue;
                }
                let pos = |p: &Path| paths.iter().position(|x| x == p);
                // Ideal generated so far, inside this coordinate space.
                let mut ideal = SpanTracker::new(f, paths.len());
                for rho in &kept {
                    let (a, b) = (rho[0].1.source, rho[0].1.target);
                    let rl = rho.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
                    for lx in 0..=level.saturating_sub(rl) {
                        for x in by_len[lx].iter().filter(|x| x.source == u && x.target == a) {
                            for ly in 0..=level - rl - lx {
                                for y in by_len[ly].iter().filter(|y| y.source == b && y.target == w) {
                                    let mut v = vec![f.zero(); paths.len()];
                                    for (c, p) in rho {
                                        let long = x.compose_before(p).and_then(|xp| xp.compose_before(y)).expect("composable");
                                        let i = pos(&long).expect("within the level");
                                        v[i] = f.add(v[i], *c);
                                    }
                                    ideal.insert(&v);
                                }
                            }
                        }
                    }
                }
                // Kernel of evaluation: paths p ↦ a morphism T_w -> T_u.
                let cols: Vec<Vec<Scalar>> = paths.iter().map(|p| flatten(&eval_path(ar, zero, p))).collect();
                let rows = width(w, u);
                let kernel = if rows == 0 {
                    (0..paths.len()).map(|i| { let mut e = vec![f.zero(); paths.len()]; e[i] = f.one(); e }).collect()
                } else {
                    Mat::from_columns(f, rows, &cols).kernel_basis()
                };
                for k in kernel {
                    if matches!(ideal.insert(&k), Membership::Added(_)) {
                        kept.push(paths.iter().zip(&k).filter(|(_, c)| !f.is_zero(**c)).map(|(p, c)| (*c, p.clone())).collect());
                    }
                }
            }
        }
    }
    kept.into_iter().map(|c| Relation::new(f, c).map_err(TiltingError::from)).collect()
}
