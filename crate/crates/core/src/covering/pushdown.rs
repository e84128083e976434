use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Window;
use crate::error::WitnessError;
use crate::exactlin::{derive_seed, rng_from_seed, uniform_below, Mat};
use crate::modvariety::{sample_point, DEFAULT_SAMPLE_BUDGET};
use crate::quiver::Path;
use crate::rep::{are_isomorphic, in_sincere_subcategory, is_indecomposable, IndecVerdict, IsoVerdict, Representation, Verdict, DEFAULT_ISO_TRIALS};
use crate::wildness::{PathCombo, Slot, Tally, WitnessBimodule};

/// The bimodule realizing pushdown: one free generator `b_s` per window
/// vertex, lying over `π(s)`, and each base arrow acting through its lifts.
/// Its declared rank is the number of window vertices.
pub fn pushdown_bimodule(w: &Window) -> Result<WitnessBimodule, WitnessError> {
    let f = w.covering.base().field();
    let wq = w.bound_quiver.quiver();
    let r = w.vertex_count();
    let slots: Vec<Slot> = w.vertex_projection.iter().enumerate().map(|(s, &v)| Slot { target_vertex: v, source_vertex: s }).collect();
    let mut actions = vec![vec![vec![PathCombo::zero(); r]; r]; w.covering.base().quiver().arrow_count()];
    for (la, a) in wq.arrows().iter().enumerate() {
        actions[w.arrow_projection[la]][a.target][a.source] = PathCombo::path(f, Path::arrow(wq, la));
    }
    WitnessBimodule::new(
        format!("pushdown({})", w.bound_quiver.name()),
        w.covering.base().clone(),
        w.bound_quiver.clone(),
        slots,
        actions,
        r as u64,
        false,
    )
}

/// Pushdown by direct assembly: the space over a base vertex is the direct
/// sum of the fibre spaces in window-vertex order, and each base arrow acts
/// by the blocks of its lifts.
pub fn pushdown(w: &Window, n: &Representation) -> Representation {
    let base = w.covering.base();
    let f = base.field();
    let mut dims = vec![0usize; base.quiver().vertex_count()];
    let mut offset = vec![0usize; w.vertex_count()];
    for (s, &v) in w.vertex_projection.iter().enumerate() {
        offset[s] = dims[v];
        dims[v] += n.dims()[s];
    }
    let mut maps: Vec<Mat> = base.quiver().arrows().iter().map(|a| Mat::zeros(f, dims[a.target], dims[a.source])).collect();
    for (la, a) in w.bound_quiver.quiver().arrows().iter().enumerate() {
        maps[w.arrow_projection[la]].set_block(offset[a.target], offset[a.source], n.map(la));
    }
    Representation::new(base.clone(), dims, maps).expect("pushdown of a window module satisfies the base relations")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PushdownReport {
    pub samples: usize,
    pub max_total_dim: usize,
    pub seed: u64,
    /// Window modules drawn, including rejected ones.
    pub attempts: usize,
    /// Samples for which a module of the sincere subcategory was found.
    pub accepted: usize,
    /// Samples for which none was found within the budget.
    pub starved: usize,
    pub indecomposability: Tally,
    pub isomorphism: Tally,
    /// Direct assembly against evaluation through the bimodule.
    pub agreement: Tally,
    pub failures: Vec<String>,
}

impl PushdownReport {
    pub fn is_valid(&self) -> bool {
        self.accepted > 0
            && self.indecomposability.fail == 0
            && self.isomorphism.fail == 0
            && self.agreement.fail == 0
            && self.agreement.inconclusive == 0
    }
}

const ATTEMPTS_PER_SAMPLE: usize = 24;

fn record(t: &mut Tally, v: Verdict) {
    match v {
        Verdict::Yes => t.pass += 1,
        Verdict::No => t.fail += 1,
        Verdict::Inconclusive => t.inconclusive += 1,
    }
}

/// A sincere dimension vector with total at most `max_total`.
fn random_sincere_dims(vertices: usize, max_total: usize, rng: &mut crate::exactlin::SeededRng) -> Vec<usize> {
    let mut dims = vec![1; vertices];
    let extra = uniform_below(rng, (max_total - vertices) as u64 + 1);
    for _ in 0..extra {
        dims[uniform_below(rng, vertices as u64) as usize] += 1;
    }
    dims
}

/// Draw window modules until one lies in the sincere subcategory.
fn draw_sincere(w: &Window, dims: Option<&[usize]>, max_total: usize, seed: u64, attempts: &mut usize) -> Option<Representation> {
    let mut rng = rng_from_seed(seed);
    for k in 0..ATTEMPTS_PER_SAMPLE as u64 {
        *attempts += 1;
        let d = match dims {
            Some(d) => d.to_vec(),
            None => random_sincere_dims(w.vertex_count(), max_total, &mut rng),
        };
        let Some(m) = sample_point(&w.bound_quiver, &d, &mut rng, DEFAULT_SAMPLE_BUDGET) else { continue };
        if in_sincere_subcategory(&m, derive_seed(seed, k)) == Verdict::Yes {
            return Some(m);
        }
    }
    None
}

/// Check on seeded window modules of the sincere subcategory that pushdown
/// keeps indecomposables indecomposable, keeps non-isomorphic pairs apart,
/// and agrees with evaluation through `pushdown_bimodule`.
pub fn verify_pushdown(w: &Window, samples: usize, max_total_dim: usize, seed: u64) -> Result<PushdownReport, WitnessError> {
    let bimodule = pushdown_bimodule(w)?;
    let mut report = PushdownReport { samples, max_total_dim, seed, ..PushdownReport::default() };
    if w.vertex_count() > max_total_dim {
        report.starved = samples;
        return Ok(report);
    }
    for s in 0..samples as u64 {
        let base = derive_seed(seed, s);
        let Some(n) = draw_sincere(w, None, max_total_dim, derive_seed(base, 0), &mut report.attempts) else {
            report.starved += 1;
            continue;
        };
        report.accepted += 1;
        let direct = pushdown(w, &n);
        let via = bimodule.eval_tensor(&n)?;
        let agree = match are_isomorphic(&direct, &via, DEFAULT_ISO_TRIALS, derive_seed(base, 1)).map_err(WitnessError::Rep)? {
            IsoVerdict::Yes(_) => Verdict::Yes,
            IsoVerdict::No(_) => Verdict::No,
            IsoVerdict::Inconclusive => Verdict::Inconclusive,
        };
        if agree == Verdict::No {
            report.failures.push(format!("sample {s}: direct pushdown differs from the bimodule evaluation"));
        }
        record(&mut report.agreement, agree);

        match is_indecomposable(&n, derive_seed(base, 2)) {
            IndecVerdict::Yes => {
                let out = match is_indecomposable(&direct, derive_seed(base, 3)) {
                    IndecVerdict::Yes => Verdict::Yes,
                    IndecVerdict::No(_) => Verdict::No,
                    IndecVerdict::Inconclusive => Verdict::Inconclusive,
                };
                if out == Verdict::No {
                    report.failures.push(format!("sample {s}: indecomposable window module of dimension {:?} pushes down to a decomposable one", n.dims()));
                }
                record(&mut report.indecomposability, out);
            }
            _ => report.indecomposability.skipped += 1,
        }

        let Some(other) = draw_sincere(w, Some(n.dims()), max_total_dim, derive_seed(base, 4), &mut report.attempts) else {
            report.isomorphism.skipped += 1;
            continue;
        };
        let before = are_isomorphic(&n, &other, DEFAULT_ISO_TRIALS, derive_seed(base, 5)).map_err(WitnessError::Rep)?;
        let after = are_isomorphic(&direct, &pushdown(w, &other), DEFAULT_ISO_TRIALS, derive_seed(base, 6)).map_err(WitnessError::Rep)?;
        let v = match (&before, &after) {
            (IsoVerdict::Inconclusive, _) | (_, IsoVerdict::Inconclusive) => Verdict::Inconclusive,
            (IsoVerdict::No(_), IsoVerdict::Yes(_)) | (IsoVerdict::Yes(_), IsoVerdict::No(_)) => Verdict::No,
            _ => Verdict::Yes,
        };
        if v == Verdict::No {
            report.failures.push(format!("sample {s}: isomorphism class not preserved at dimension {:?}", n.dims()));
        }
        record(&mut report.isomorphism, v);
    }
    Ok(report)
}
