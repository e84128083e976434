use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{build_window, pushdown_bimodule, CoveringSpec, GradingBox, Window};
use crate::error::CoveringError;
use crate::quiver::{is_minimal_wild_hereditary, BoundQuiver};
use crate::wildness::{
    builtin_f, builtin_g, compose_witness, recompute_bound, sincere_witness_for_k3, Step, Subject, TargetInfo, WitnessBimodule,
    WitnessCertificate, SYMBOLIC_COVERING_BOUND,
};

/// Source of sincere-subcategory witnesses for windows the toolkit cannot
/// handle itself, such as minimal wild concealed algebras.
pub trait WindowWitnessProvider {
    /// A witness whose target is exactly `window` (same fingerprint), with
    /// a certificate for it, or `None`.
    fn witness_for(&self, window: &Arc<BoundQuiver>) -> Option<(WitnessBimodule, WitnessCertificate)>;
}

/// A successful search: the window piece used, the composite witness
/// `pushdown ∘ sincere witness`, and its certificate.
#[derive(Clone, Debug)]
pub struct CoveringOutcome {
    pub window: Window,
    pub window_witness: WitnessBimodule,
    pub witness: WitnessBimodule,
    pub certificate: WitnessCertificate,
    /// `"minimal-wild-hereditary"` or `"user-designated"`.
    pub window_kind: &'static str,
}

/// Vertices `(u, v)` and arrows when `bq` is `u ⇉ v` with three arrows and no relations.
fn k3_shape(bq: &BoundQuiver) -> Option<([usize; 2], [usize; 3])> {
    let q = bq.quiver();
    if q.vertex_count() != 2 || q.arrow_count() != 3 || !bq.is_hereditary() {
        return None;
    }
    let (s, t) = (q.arrows()[0].source, q.arrows()[0].target);
    if s == t || q.arrows().iter().any(|a| (a.source, a.target) != (s, t)) {
        return None;
    }
    Some(([s, t], [0, 1, 2]))
}

/// The built-in rank-28 witness moved onto a window shaped like K3.
fn k3_witness(window: &Arc<BoundQuiver>) -> Option<(WitnessBimodule, WitnessCertificate)> {
    let (vertices, arrows) = k3_shape(window)?;
    let f = window.field();
    let w = sincere_witness_for_k3(f).ok()?.retarget(window.clone(), &vertices, &arrows).ok()?;
    let g = builtin_g(f);
    let mut cert = WitnessCertificate::explicit(&g, Subject::SincereSubcategory, 0)
        .then_compose(&builtin_f(f))
        .ok()?
        .then_compose(&g)
        .ok()?;
    cert.target = TargetInfo::of(window);
    Some((w, cert))
}

fn assemble(
    cov: &CoveringSpec,
    piece: Window,
    window_witness: WitnessBimodule,
    cert: WitnessCertificate,
    window_kind: &'static str,
) -> Result<CoveringOutcome, CoveringError> {
    let push = pushdown_bimodule(&piece)?;
    let witness = compose_witness(&push, &window_witness)?;
    let mut certificate = cert;
    certificate.steps.push(Step::CoveringRule {
        window: piece.bound_quiver.name().to_string(),
        window_vertices: piece.vertex_count() as u64,
    });
    certificate.bound = recompute_bound(&certificate.steps);
    certificate.target = TargetInfo::of(cov.base());
    certificate.subject = Subject::Algebra;
    certificate.symbolic_target = Some(SYMBOLIC_COVERING_BOUND.to_string());
    Ok(CoveringOutcome { window: piece, window_witness, witness, certificate, window_kind })
}

/// Boxes `[0, h_1] × ... × [0, h_m]` with `h_i <= radius`, by increasing
/// volume and then lexicographically.
pub fn search_boxes(rank: usize, radius: u32) -> Vec<GradingBox> {
    let mut heights: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for _ in 0..rank {
        heights = heights
            .into_iter()
            .flat_map(|h| {
                (0..=radius as i64).map(move |x| {
                    let mut g = h.clone();
                    g.push(x);
                    g
                })
            })
            .collect();
    }
    let mut boxes: Vec<GradingBox> = heights.iter().map(|h| GradingBox::anchored(h)).collect();
    boxes.sort_by(|a, b| a.volume().cmp(&b.volume()).then_with(|| a.intervals.cmp(&b.intervals)));
    boxes
}

fn try_window(
    cov: &CoveringSpec,
    window: &Window,
    provider: Option<&dyn WindowWitnessProvider>,
) -> Result<Option<CoveringOutcome>, CoveringError> {
    let q = window.bound_quiver.quiver();
    for comp in q.component_vertex_sets() {
        let arrows: Vec<usize> =
            (0..q.arrow_count()).filter(|&a| comp.binary_search(&q.arrows()[a].source).is_ok()).collect();
        let piece = window.restrict(&comp, &arrows)?;
        let bq = &piece.bound_quiver;
        let hereditary_min_wild = bq.is_hereditary() && !bq.quiver().has_loops() && is_minimal_wild_hereditary(bq.quiver()).unwrap_or(false);
        if hereditary_min_wild {
            if let Some((w, c)) = k3_witness(bq) {
                return assemble(cov, piece, w, c, "minimal-wild-hereditary").map(Some);
            }
        }
        if let Some((w, c)) = provider.and_then(|p| p.witness_for(bq)) {
            if w.target().fingerprint() == bq.fingerprint() {
                let kind = if hereditary_min_wild { "minimal-wild-hereditary" } else { "user-designated" };
                return assemble(cov, piece, w, c, kind).map(Some);
            }
        }
    }
    // Three parallel arrows inside a larger window also cut out a K3 factor.
    for u in 0..q.vertex_count() {
        for v in 0..q.vertex_count() {
            let par: Vec<usize> = (0..q.arrow_count()).filter(|&a| (q.arrows()[a].source, q.arrows()[a].target) == (u, v)).collect();
            if u == v || par.len() < 3 {
                continue;
            }
            let piece = window.restrict(&[u, v], &par[..3])?;
            if let Some((w, c)) = k3_witness(&piece.bound_quiver) {
                return assemble(cov, piece, w, c, "minimal-wild-hereditary").map(Some);
            }
        }
    }
    Ok(None)
}

/// Search windows up to `radius` for a minimal wild hereditary factor with
/// a known sincere witness (K3). `None` is not a tameness claim.
pub fn covering_criterion(cov: &CoveringSpec, radius: u32) -> Result<Option<CoveringOutcome>, CoveringError> {
    covering_criterion_with(cov, radius, None)
}

/// As [`covering_criterion`], asking `provider` for witnesses of windows
/// without a built-in one.
pub fn covering_criterion_with(
    cov: &CoveringSpec,
    radius: u32,
    provider: Option<&dyn WindowWitnessProvider>,
) -> Result<Option<CoveringOutcome>, CoveringError> {
    for b in search_boxes(cov.rank(), radius) {
        let window = build_window(cov, &b)?;
        if let Some(out) = try_window(cov, &window, provider)? {
            return Ok(Some(out));
        }
    }
    Ok(None)
}
