//! Bimodule tensor functors with tracked ranks: free-algebra modules,
//! explicit witnesses, composition, randomized verification and rank
//! certificates.
//!
//! A witness is an `A`-`B` bimodule that is free (or projective) over `B`
//! on finitely many generators. Each generator `b_j` sits over a vertex
//! `σ(j)` of `B`'s quiver and is routed by the vertex idempotents of `A` to
//! a vertex `τ(j)`; arrows of `A` act by matrices whose `(i, j)` entry is a
//! combination of `B`-paths from `σ(j)` to `σ(i)`. The free algebra
//! `k<x,y>` is the one-vertex quiver with loops `x`, `y` and no relations,
//! so its modules are ordinary representations.

mod builtin;
mod certificate;
mod combo;
mod verify;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use builtin::{builtin_f, builtin_g, corrupted_g, identity_witness, sincere_witness_for_k3, FreeAlgModule, K3Rep};
pub use certificate::{
    bound_via_factor, bound_via_morita, recompute_bound, FactorProvenance, Step, Subject, TargetInfo,
    VerificationSummary, WitnessCertificate, SYMBOLIC_COVERING_BOUND,
};
pub use combo::{ComboDisplay, NCPoly, PathCombo};
pub use verify::{random_free_module, verify_sincere_images, verify_witness, Tally, WitnessReport};

use crate::error::WitnessError;
use crate::exactlin::{Field, Mat};
use crate::quiver::{build_algebra_table, BoundQuiver, Path};
use crate::rep::Representation;

/// Where a free generator lives: target vertex `τ` and source vertex `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub target_vertex: usize,
    pub source_vertex: usize,
}

/// An `A`-`B` bimodule defining the functor `W ⊗_B - : mod B -> mod A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBimodule {
    label: String,
    target: Arc<BoundQuiver>,
    source: Arc<BoundQuiver>,
    slots: Vec<Slot>,
    /// Per target arrow, an `r × r` matrix of source path combinations.
    actions: Vec<Vec<Vec<PathCombo>>>,
    declared_rank: u64,
    full: bool,
}

fn zero_square(r: usize) -> Vec<Vec<PathCombo>> {
    vec![vec![PathCombo::zero(); r]; r]
}

impl WitnessBimodule {
    /// Validates routing (entries of an arrow `s -> t` only between slots over
    /// `t` and `s`, each a combination of paths `σ(j) -> σ(i)`) and that every
    /// relation of the target acts as zero.
    pub fn new(
        label: impl Into<String>,
        target: Arc<BoundQuiver>,
        source: Arc<BoundQuiver>,
        slots: Vec<Slot>,
        actions: Vec<Vec<Vec<PathCombo>>>,
        declared_rank: u64,
        full: bool,
    ) -> Result<WitnessBimodule, WitnessError> {
        if target.field() != source.field() {
            return Err(WitnessError::FieldMismatch);
        }
        let r = slots.len();
        if actions.len() != target.quiver().arrow_count() {
            return Err(WitnessError::Malformed(format!(
                "{} action matrices for {} arrows",
                actions.len(),
                target.quiver().arrow_count()
            )));
        }
        for s in &slots {
            if s.target_vertex >= target.quiver().vertex_count() || s.source_vertex >= source.quiver().vertex_count() {
                return Err(WitnessError::Malformed(String::from("slot vertex out of range")));
            }
        }
        for (a, m) in target.quiver().arrows().iter().zip(&actions) {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(WitnessError::Malformed(format!("action of `{}` is not {r}x{r}", a.name)));
            }
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    if slots[i].target_vertex != a.target || slots[j].target_vertex != a.source {
                        return Err(WitnessError::Malformed(format!("`{}` entry ({i},{j}) breaks idempotent routing", a.name)));
                    }
                    if e.terms().any(|(_, p)| p.source != slots[j].source_vertex || p.target != slots[i].source_vertex) {
                        return Err(WitnessError::Malformed(format!("`{}` entry ({i},{j}) has a path between the wrong vertices", a.name)));
                    }
                }
            }
        }
        let w = WitnessBimodule { label: label.into(), target, source, slots, actions, declared_rank, full };
        w.check_relations()?;
        Ok(w)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn target(&self) -> &Arc<BoundQuiver> {
        &self.target
    }

    pub fn source(&self) -> &Arc<BoundQuiver> {
        &self.source
    }

    pub fn field(&self) -> Field {
        self.target.field()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn action(&self, arrow: usize) -> &[Vec<PathCombo>] {
        &self.actions[arrow]
    }

    /// Rank as tracked through the construction rules (multiplicative under
    /// composition).
    pub fn rank(&self) -> u64 {
        self.declared_rank
    }

    /// Number of free generators actually used; never exceeds `rank()` for
    /// witnesses built by the provided rules.
    pub fn realized_rank(&self) -> usize {
        self.slots.len()
    }

    /// Whether the functor is claimed to be full (strictly wild).
    pub fn claims_full(&self) -> bool {
        self.full
    }

    /// Matrix of a target path, as combinations of source paths.
    fn path_matrix(&self, p: &Path) -> Vec<Vec<PathCombo>> {
        let f = self.field();
        let r = self.slots.len();
        let mut acc = zero_square(r);
        for (i, s) in self.slots.iter().enumerate() {
            if s.target_vertex == p.source {
                acc[i][i] = PathCombo::path(f, Path::trivial(s.source_vertex));
            }
        }
        for &a in &p.arrows {
            acc = combo_matmul(f, &self.actions[a], &acc);
        }
        acc
    }

    fn check_relations(&self) -> Result<(), WitnessError> {
        let f = self.field();
        if self.target.relations().is_empty() {
            return Ok(());
        }
        let table = if self.source.is_hereditary() {
            None
        } else {
            Some(build_algebra_table(&self.source).map_err(|_| WitnessError::CannotValidate)?)
        };
        for (ri, rel) in self.target.relations().iter().enumerate() {
            let r = self.slots.len();
            let mut acc = zero_square(r);
            for (c, p) in rel.terms() {
                let m = self.path_matrix(p);
                for i in 0..r {
                    for j in 0..r {
                        acc[i][j].add_scaled(f, *c, &m[i][j]);
                    }
                }
            }
            let vanishes = acc.iter().flatten().all(|e| match &table {
                None => e.is_zero(),
                Some(t) => {
                    let mut coords = vec![f.zero(); t.dimension()];
                    for (c, p) in e.terms() {
                        for (k, x) in t.path_coords(p).into_iter().enumerate() {
                            coords[k] = f.add(coords[k], f.mul(c, x));
                        }
                    }
                    coords.iter().all(|&x| f.is_zero(x))
                }
            });
            if !vanishes {
                return Err(WitnessError::RelationNotAnnihilated(ri));
            }
        }
        Ok(())
    }

    /// `W ⊗_B V`.
    pub fn eval_tensor(&self, v: &Representation) -> Result<Representation, WitnessError> {
        if v.bound_quiver().fingerprint() != self.source.fingerprint() {
            return Err(WitnessError::SourceMismatch);
        }
        let f = self.field();
        let tq = self.target.quiver();
        let mut dims = vec![0usize; tq.vertex_count()];
        let mut offset = vec![0usize; self.slots.len()];
        for (j, s) in self.slots.iter().enumerate() {
            offset[j] = dims[s.target_vertex];
            dims[s.target_vertex] += v.dims()[s.source_vertex];
        }
        let maps = tq
            .arrows()
            .iter()
            .zip(&self.actions)
            .map(|(a, m)| {
                let mut out = Mat::zeros(f, dims[a.target], dims[a.source]);
                for (i, row) in m.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        if !e.is_zero() {
                            let block = e.eval(v, self.slots[j].source_vertex, self.slots[i].source_vertex);
                            out.set_block(offset[i], offset[j], &block);
                        }
                    }
                }
                out
            })
            .collect();
        Representation::new(self.target.clone(), dims, maps).map_err(WitnessError::Rep)
    }

    /// `W ⊗_B φ` for a morphism `φ` given by one matrix per source vertex.
    pub fn eval_morphism(&self, phi: &[Mat]) -> Vec<Mat> {
        let f = self.field();
        (0..self.target.quiver().vertex_count())
            .map(|t| {
                let blocks: Vec<Mat> = self
                    .slots
                    .iter()
                    .filter(|s| s.target_vertex == t)
                    .map(|s| phi[s.source_vertex].clone())
                    .collect();
                Mat::block_diag(f, &blocks)
            })
            .collect()
    }

    /// Reinterpret a witness for a factor algebra `A/I` as one for `A`: the
    /// vertices and arrows of the factor are located in `big` by name and
    /// every other arrow acts by zero.
    pub fn inflate(&self, big: Arc<BoundQuiver>) -> Result<WitnessBimodule, WitnessError> {
        let small = self.target.quiver();
        let bq = big.quiver();
        let mut vmap = Vec::new();
        for v in small.vertices() {
            vmap.push(bq.vertex_index(v).ok_or_else(|| WitnessError::NotAFactor(format!("vertex `{v}` missing")))?);
        }
        let mut from_small: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, a) in small.arrows().iter().enumerate() {
            let bi = bq.arrow_index(&a.name).ok_or_else(|| WitnessError::NotAFactor(format!("arrow `{}` missing", a.name)))?;
            from_small.insert(bi, i);
        }
        let slots: Vec<Slot> =
            self.slots.iter().map(|s| Slot { target_vertex: vmap[s.target_vertex], source_vertex: s.source_vertex }).collect();
        let r = slots.len();
        let actions = (0..bq.arrow_count())
            .map(|bi| from_small.get(&bi).map_or_else(|| zero_square(r), |&i| self.actions[i].clone()))
            .collect();
        WitnessBimodule::new(
            format!("inflate({})", self.label),
            big,
            self.source.clone(),
            slots,
            actions,
            self.declared_rank,
            self.full,
        )
    }

    /// Move the witness onto `target`, a copy of the current target with
    /// vertex `v` renamed to `vertex_map[v]` and arrow `a` to `arrow_map[a]`.
    pub fn retarget(&self, target: Arc<BoundQuiver>, vertex_map: &[usize], arrow_map: &[usize]) -> Result<WitnessBimodule, WitnessError> {
        let tq = target.quiver();
        let old = self.target.quiver();
        if vertex_map.len() != old.vertex_count() || arrow_map.len() != old.arrow_count() || tq.arrow_count() != old.arrow_count() {
            return Err(WitnessError::Malformed(String::from("relabelling maps do not match the target")));
        }
        let slots = self.slots.iter().map(|s| Slot { target_vertex: vertex_map[s.target_vertex], source_vertex: s.source_vertex }).collect();
        let mut actions = vec![Vec::new(); tq.arrow_count()];
        for (a, m) in self.actions.iter().enumerate() {
            actions[arrow_map[a]] = m.clone();
        }
        WitnessBimodule::new(self.label.clone(), target, self.source.clone(), slots, actions, self.declared_rank, self.full)
    }
}

/// `a · b` for matrices of path combinations (`b` acts first).
fn combo_matmul(f: Field, a: &[Vec<PathCombo>], b: &[Vec<PathCombo>]) -> Vec<Vec<PathCombo>> {
    let r = a.len();
    let mut out = zero_square(r);
    for i in 0..r {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..r {
                if !b[k][j].is_zero() {
                    let prod = aik.mul(f, &b[k][j]);
                    out[i][j].add_scaled(f, f.one(), &prod);
                }
            }
        }
    }
    out
}

/// `outer ∘ inner`: the bimodule `outer ⊗_B inner`, whose functor is
/// `V ↦ outer ⊗ (inner ⊗ V)`. Ranks multiply.
pub fn compose_witness(outer: &WitnessBimodule, inner: &WitnessBimodule) -> Result<WitnessBimodule, WitnessError> {
    if outer.source.fingerprint() != inner.target.fingerprint() {
        return Err(WitnessError::MiddleMismatch);
    }
    let f = outer.field();
    let mut slots = Vec::new();
    let mut pairs = Vec::new();
    for (j, so) in outer.slots.iter().enumerate() {
        for (k, si) in inner.slots.iter().enumerate() {
            if si.target_vertex == so.source_vertex {
                pairs.push((j, k));
                slots.push(Slot { target_vertex: so.target_vertex, source_vertex: si.source_vertex });
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let mut cache: BTreeMap<Path, Vec<Vec<PathCombo>>> = BTreeMap::new();
    let r = slots.len();
    let mut actions = Vec::new();
    for m in &outer.actions {
        let mut out = zero_square(r);
        for (j, row) in m.iter().enumerate() {
            for (j2, e) in row.iter().enumerate() {
                for (c, p) in e.terms() {
                    let inner_m = cache.entry(p.clone()).or_insert_with(|| inner.path_matrix(p));
                    for (k, irow) in inner_m.iter().enumerate() {
                        for (k2, ie) in irow.iter().enumerate() {
                            if ie.is_zero() {
                                continue;
                            }
                            let (Some(&a), Some(&b)) = (index.get(&(j, k)), index.get(&(j2, k2))) else { continue };
                            out[a][b].add_scaled(f, c, ie);
                        }
                    }
                }
            }
        }
        actions.push(out);
    }
    WitnessBimodule::new(
        format!("{}*{}", outer.label, inner.label),
        outer.target.clone(),
        inner.source.clone(),
        slots,
        actions,
        outer.declared_rank * inner.declared_rank,
        outer.full && inner.full,
    )
}
