use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FreeAlgModule, WitnessBimodule};
use crate::error::WitnessError;
use crate::exactlin::{derive_seed, rng_from_seed, uniform_below, Field, Mat, SeededRng};
use crate::quiver::named;
use crate::rep::{are_isomorphic, hom_space, in_sincere_subcategory, is_indecomposable, IndecVerdict, IsoVerdict, Verdict, DEFAULT_ISO_TRIALS};

/// Outcome counts for one kind of check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    /// Samples where the check did not apply (for instance a decomposable input).
    pub skipped: usize,
}

impl Tally {
    fn record(&mut self, v: Verdict) {
        match v {
            Verdict::Yes => self.pass += 1,
            Verdict::No => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }
}

/// Result of randomized verification. The checks are evidence on bounded
/// samples, not a proof that the functor preserves anything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessReport {
    pub samples: usize,
    pub max_dim: usize,
    pub seed: u64,
    pub indecomposability: Tally,
    pub isomorphism: Tally,
    pub hom_dimension: Option<Tally>,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn is_valid(&self) -> bool {
        self.indecomposability.fail == 0 && self.isomorphism.fail == 0 && self.hom_dimension.map_or(true, |t| t.fail == 0)
    }
}

/// Dimension uniform in `[1, max_dim]`, entries uniform over the field.
pub fn random_free_module(field: Field, max_dim: usize, rng: &mut SeededRng) -> FreeAlgModule {
    let t = 1 + uniform_below(rng, max_dim.max(1) as u64) as usize;
    let x = Mat::from_fn(field, t, t, |_, _| field.random(rng));
    let y = Mat::from_fn(field, t, t, |_, _| field.random(rng));
    FreeAlgModule { x, y }
}

fn describe(m: &FreeAlgModule) -> String {
    format!("dim {} x={:?} y={:?}", m.dim(), m.x.data(), m.y.data())
}

fn require_free_source(w: &WitnessBimodule) -> Result<(), WitnessError> {
    if w.source().fingerprint() != named::free_algebra(w.field()).fingerprint() {
        return Err(WitnessError::SourceNotFree);
    }
    Ok(())
}

/// Check on seeded random `k<x,y>`-modules that `W ⊗ -` keeps indecomposables
/// indecomposable, keeps non-isomorphic inputs apart, and (when fullness is
/// claimed) preserves `dim Hom`.
///
/// Each sample `V = (X, Y)` is paired with a sibling `V' = (X, Y')`, which
/// exposes functors that lose information about `y`.
pub fn verify_witness(w: &WitnessBimodule, samples: usize, max_dim: usize, seed: u64) -> Result<WitnessReport, WitnessError> {
    require_free_source(w)?;
    let f = w.field();
    let mut report = WitnessReport {
        samples,
        max_dim,
        seed,
        hom_dimension: w.claims_full().then(Tally::default),
        ..WitnessReport::default()
    };
    for s in 0..samples as u64 {
        let base = derive_seed(seed, s);
        let mut rng = rng_from_seed(base);
        let v = random_free_module(f, max_dim, &mut rng);
        let y2 = Mat::from_fn(f, v.dim(), v.dim(), |_, _| f.random(&mut rng));
        let sibling = FreeAlgModule { x: v.x.clone(), y: y2 };
        let (vr, sr) = (v.to_representation(), sibling.to_representation());
        let wv = w.eval_tensor(&vr)?;
        let ws = w.eval_tensor(&sr)?;

        match is_indecomposable(&vr, derive_seed(base, 1)) {
            IndecVerdict::Yes => {
                let out = match is_indecomposable(&wv, derive_seed(base, 2)) {
                    IndecVerdict::Yes => Verdict::Yes,
                    IndecVerdict::No(_) => Verdict::No,
                    IndecVerdict::Inconclusive => Verdict::Inconclusive,
                };
                if out == Verdict::No {
                    report.failures.push(format!("sample {s}: indecomposable input {} has a decomposable image", describe(&v)));
                }
                report.indecomposability.record(out);
            }
            _ => report.indecomposability.skipped += 1,
        }

        let input = are_isomorphic(&vr, &sr, DEFAULT_ISO_TRIALS, derive_seed(base, 3)).map_err(WitnessError::Rep)?;
        let output = are_isomorphic(&wv, &ws, DEFAULT_ISO_TRIALS, derive_seed(base, 4)).map_err(WitnessError::Rep)?;
        let verdict = match (&input, &output) {
            (IsoVerdict::Inconclusive, _) | (_, IsoVerdict::Inconclusive) => Verdict::Inconclusive,
            (IsoVerdict::No(_), IsoVerdict::Yes(_)) | (IsoVerdict::Yes(_), IsoVerdict::No(_)) => Verdict::No,
            _ => Verdict::Yes,
        };
        if verdict == Verdict::No {
            report.failures.push(format!(
                "sample {s}: isomorphism class not preserved for the pair {} / {}",
                describe(&v),
                describe(&sibling)
            ));
        }
        report.isomorphism.record(verdict);

        if let Some(t) = report.hom_dimension.as_mut() {
            let before = hom_space(&vr, &sr).map_err(WitnessError::Rep)?.dim();
            let after = hom_space(&wv, &ws).map_err(WitnessError::Rep)?.dim();
            let ends = (hom_space(&vr, &vr).map_err(WitnessError::Rep)?.dim(), hom_space(&wv, &wv).map_err(WitnessError::Rep)?.dim());
            if before == after && ends.0 == ends.1 {
                t.pass += 1;
            } else {
                t.fail += 1;
                report.failures.push(format!("sample {s}: dim Hom {before} -> {after}, dim End {} -> {}", ends.0, ends.1));
            }
        }
    }
    Ok(report)
}

/// How many sampled images lie in the sincere subcategory of the target.
pub fn verify_sincere_images(w: &WitnessBimodule, samples: usize, max_dim: usize, seed: u64) -> Result<Tally, WitnessError> {
    require_free_source(w)?;
    let mut tally = Tally::default();
    for s in 0..samples as u64 {
        let base = derive_seed(seed, s);
        let mut rng = rng_from_seed(base);
        let v = random_free_module(w.field(), max_dim, &mut rng);
        let image = w.eval_tensor(&v.to_representation())?;
        tally.record(in_sincere_subcategory(&image, derive_seed(base, 5)));
    }
    Ok(tally)
}
