use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{compose_witness, PathCombo, Slot, WitnessBimodule};
use crate::error::{RepError, WitnessError};
use crate::exactlin::{Field, Mat};
use crate::quiver::{named, Path};
use crate::rep::Representation;

/// A module over `k<x,y>`: a space `k^t` with two endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgModule {
    pub x: Mat,
    pub y: Mat,
}

impl FreeAlgModule {
    pub fn new(x: Mat, y: Mat) -> Result<FreeAlgModule, RepError> {
        if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
            return Err(RepError::Shape { arrow: "x/y".into() });
        }
        if x.field() != y.field() {
            return Err(RepError::FieldMismatch);
        }
        Ok(FreeAlgModule { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn to_representation(&self) -> Representation {
        let bq = Arc::new(named::free_algebra(self.x.field()));
        Representation::new(bq, vec![self.dim()], vec![self.x.clone(), self.y.clone()]).expect("no relations to violate")
    }

    pub fn from_representation(m: &Representation) -> Option<FreeAlgModule> {
        if m.bound_quiver().fingerprint() != named::free_algebra(m.field()).fingerprint() {
            return None;
        }
        Some(FreeAlgModule { x: m.map(0).clone(), y: m.map(1).clone() })
    }
}

/// A representation `(V_1, V_2; α, β, γ)` of the Kronecker quiver with three arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Rep {
    pub alpha: Mat,
    pub beta: Mat,
    pub gamma: Mat,
}

impl K3Rep {
    pub fn to_representation(&self) -> Result<Representation, RepError> {
        let f = self.alpha.field();
        let dims = vec![self.alpha.cols(), self.alpha.rows()];
        Representation::new(Arc::new(named::k3(f)), dims, vec![self.alpha.clone(), self.beta.clone(), self.gamma.clone()])
    }

    pub fn from_representation(m: &Representation) -> Option<K3Rep> {
        if m.bound_quiver().fingerprint() != named::k3(m.field()).fingerprint() {
            return None;
        }
        Some(K3Rep { alpha: m.map(0).clone(), beta: m.map(1).clone(), gamma: m.map(2).clone() })
    }
}

fn square(r: usize) -> Vec<Vec<PathCombo>> {
    vec![vec![PathCombo::zero(); r]; r]
}

/// The identity functor on `mod k<x,y>` (rank 1).
pub fn identity_witness(field: Field) -> WitnessBimodule {
    let free = Arc::new(named::free_algebra(field));
    let q = free.quiver().clone();
    let actions = (0..2)
        .map(|a| {
            let mut m = square(1);
            m[0][0] = PathCombo::path(field, Path::arrow(&q, a));
            m
        })
        .collect();
    let slot = Slot { target_vertex: 0, source_vertex: 0 };
    WitnessBimodule::new("id", free.clone(), free, vec![slot], actions, 1, true).expect("identity bimodule")
}

fn g_with(field: Field, keep_y: bool, label: &str) -> WitnessBimodule {
    let free = Arc::new(named::free_algebra(field));
    let fq = free.quiver().clone();
    let slots = vec![Slot { target_vertex: 0, source_vertex: 0 }, Slot { target_vertex: 1, source_vertex: 0 }];
    let entries = [
        Some(PathCombo::path(field, Path::trivial(0))),
        Some(PathCombo::path(field, Path::arrow(&fq, 0))),
        keep_y.then(|| PathCombo::path(field, Path::arrow(&fq, 1))),
    ];
    let actions = entries
        .into_iter()
        .map(|e| {
            let mut m = square(2);
            if let Some(e) = e {
                m[1][0] = e;
            }
            m
        })
        .collect();
    WitnessBimodule::new(label, Arc::new(named::k3(field)), free, slots, actions, 2, true).expect("G is a bimodule")
}

/// `G : mod k<x,y> -> mod kK_3`, `(V; x, y) ↦ (V, V; 1, x, y)`, rank 2.
pub fn builtin_g(field: Field) -> WitnessBimodule {
    g_with(field, true, "G")
}

/// `G` with the `γ`-action zeroed: `(V; x, y) ↦ (V, V; 1, x, 0)`. It forgets
/// `y`, so it identifies non-isomorphic inputs; a fixture for verification.
pub fn corrupted_g(field: Field) -> WitnessBimodule {
    g_with(field, false, "G-corrupted")
}

/// `F : mod kK_3 -> mod k<x,y>`, sending `(V_1, V_2; α, β, γ)` to
/// `(V_1 ⊕ V_2)^7` with `x` the block upper shift and `y` the block lower
/// shift plus `σ, δ, α', β', γ'` on the second subdiagonal. Rank 7.
pub fn builtin_f(field: Field) -> WitnessBimodule {
    let k3 = Arc::new(named::k3(field));
    let q = k3.quiver().clone();
    let slot = |block: usize, part: usize| 2 * block + part;
    let slots: Vec<Slot> =
        (0..7).flat_map(|_| 0..2).map(|part| Slot { target_vertex: 0, source_vertex: part }).collect();
    let e = |v: usize| PathCombo::path(field, Path::trivial(v));
    let mut x = square(14);
    let mut y = square(14);
    for b in 0..6 {
        for part in 0..2 {
            x[slot(b, part)][slot(b + 1, part)] = e(part);
            y[slot(b + 1, part)][slot(b, part)] = e(part);
        }
    }
    // σ = diag(1, 0), δ = diag(0, 1); α', β', γ' carry V_1 into V_2.
    y[slot(2, 0)][slot(0, 0)] = e(0);
    y[slot(3, 1)][slot(1, 1)] = e(1);
    for (n, arrow) in (0..3).enumerate() {
        y[slot(4 + n, 1)][slot(2 + n, 0)] = PathCombo::path(field, Path::arrow(&q, arrow));
    }
    let free = Arc::new(named::free_algebra(field));
    WitnessBimodule::new("F", free, k3, slots, vec![x, y], 7, true).expect("F is a bimodule")
}

/// `G ∘ F ∘ G : mod k<x,y> -> (mod kK_3)_s`, rank 28.
pub fn sincere_witness_for_k3(field: Field) -> Result<WitnessBimodule, WitnessError> {
    let g = builtin_g(field);
    let fg = compose_witness(&builtin_f(field), &g)?;
    compose_witness(&g, &fg)
}
