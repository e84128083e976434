use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{WitnessBimodule, WitnessReport};
use crate::error::WitnessError;
use crate::exactlin::Field;
use crate::quiver::{build_algebra_table, factor_quiver, BoundQuiver};

/// The conjectural bound for the covering route, in terms of the unevaluated
/// constant `b` (the best rank bound for sincere subcategories of minimal
/// wild concealed algebras). It is recorded, never computed.
pub const SYMBOLIC_COVERING_BOUND: &str = "10*b";

/// What the bound is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Algebra,
    SincereSubcategory,
}

impl Subject {
    pub fn as_str(&self) -> &'static str {
        match self {
            Subject::Algebra => "algebra",
            Subject::SincereSubcategory => "sincere-subcategory",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetInfo {
    pub name: String,
    pub fingerprint: u64,
    /// `dim_k A`, when the algebra is finite-dimensional.
    pub dimension: Option<usize>,
}

impl TargetInfo {
    pub fn of(bq: &BoundQuiver) -> TargetInfo {
        TargetInfo {
            name: bq.name().to_string(),
            fingerprint: bq.fingerprint(),
            dimension: build_algebra_table(bq).ok().map(|t| t.dimension()),
        }
    }
}

/// One rule application in a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// An explicit bimodule of the given rank.
    ExplicitBimodule { label: String, rank: u64 },
    /// Composition with an outer bimodule; multiplies by its rank.
    Compose { label: String, outer_rank: u64 },
    /// Passage from a factor algebra `A/I` to `A`; the bound is unchanged.
    FactorRule { ideal: String },
    /// Passage from the basic algebra to a `d`-dimensional Morita-equivalent one.
    MoritaRule { d: u64 },
    /// Pushdown along a Galois covering from a finite window.
    CoveringRule { window: String, window_vertices: u64 },
}

impl Step {
    pub fn rule(&self) -> &'static str {
        match self {
            Step::ExplicitBimodule { .. } => "explicit-bimodule",
            Step::Compose { .. } => "compose",
            Step::FactorRule { .. } => "factor-rule",
            Step::MoritaRule { .. } => "morita-rule",
            Step::CoveringRule { .. } => "covering-rule",
        }
    }

    pub fn multiplier(&self) -> u64 {
        match self {
            Step::ExplicitBimodule { rank, .. } => *rank,
            Step::Compose { outer_rank, .. } => *outer_rank,
            Step::FactorRule { .. } => 1,
            Step::MoritaRule { d } => *d,
            Step::CoveringRule { window_vertices, .. } => *window_vertices,
        }
    }
}

/// Condensed verification evidence stored with a certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VerificationSummary {
    pub samples: usize,
    pub max_dim: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub valid: bool,
}

impl VerificationSummary {
    pub fn from_report(r: &WitnessReport) -> VerificationSummary {
        let tallies = [Some(r.indecomposability), Some(r.isomorphism), r.hom_dimension];
        let mut s = VerificationSummary { samples: r.samples, max_dim: r.max_dim, valid: r.is_valid(), ..Default::default() };
        for t in tallies.into_iter().flatten() {
            s.passed += t.pass;
            s.failed += t.fail;
            s.inconclusive += t.inconclusive;
        }
        s
    }
}

/// A derivation of an upper bound on the rank of a wild algebra (or of its
/// sincere subcategory).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessCertificate {
    pub target: TargetInfo,
    pub subject: Subject,
    pub bound: u64,
    pub steps: Vec<Step>,
    pub verification: Option<VerificationSummary>,
    pub field: Field,
    pub seed: u64,
    pub symbolic_target: Option<String>,
}

/// Product of the step multipliers; a valid certificate's bound equals it.
pub fn recompute_bound(steps: &[Step]) -> u64 {
    steps.iter().map(Step::multiplier).product()
}

impl WitnessCertificate {
    /// Start a derivation from an explicit witness.
    pub fn explicit(w: &WitnessBimodule, subject: Subject, seed: u64) -> WitnessCertificate {
        let steps = alloc::vec![Step::ExplicitBimodule { label: w.label().to_string(), rank: w.rank() }];
        WitnessCertificate {
            target: TargetInfo::of(w.target()),
            subject,
            bound: recompute_bound(&steps),
            steps,
            verification: None,
            field: w.field(),
            seed,
            symbolic_target: None,
        }
    }

    /// Record composition with `outer`, moving the target to `outer`'s target.
    pub fn then_compose(mut self, outer: &WitnessBimodule) -> Result<WitnessCertificate, WitnessError> {
        if outer.source().fingerprint() != self.target.fingerprint {
            return Err(WitnessError::MiddleMismatch);
        }
        self.steps.push(Step::Compose { label: outer.label().to_string(), outer_rank: outer.rank() });
        self.target = TargetInfo::of(outer.target());
        self.bound = recompute_bound(&self.steps);
        Ok(self)
    }

    pub fn with_verification(mut self, v: VerificationSummary) -> WitnessCertificate {
        self.verification = Some(v);
        self
    }

    pub fn is_consistent(&self) -> bool {
        !self.steps.is_empty() && self.bound == recompute_bound(&self.steps)
    }
}

/// How a factor algebra was cut out of a larger bound quiver.
#[derive(Clone, Debug)]
pub struct FactorProvenance {
    pub source: Arc<BoundQuiver>,
    pub keep_vertices: Vec<String>,
    pub keep_arrows: Vec<String>,
}

impl FactorProvenance {
    fn ideal_description(&self) -> String {
        let q = self.source.quiver();
        let gone_v: Vec<&str> =
            q.vertices().iter().filter(|v| !self.keep_vertices.contains(v)).map(|v| v.as_str()).collect();
        let gone_a: Vec<&str> =
            q.arrows().iter().filter(|a| !self.keep_arrows.contains(&a.name)).map(|a| a.name.as_str()).collect();
        if gone_v.is_empty() && gone_a.is_empty() {
            return String::from("0");
        }
        format!("vertices [{}] arrows [{}]", gone_v.join(" "), gone_a.join(" "))
    }
}

/// Pass a certificate for `A/I` to `A`, where `A/I` is the factor quiver
/// described by `provenance`. The witness is inflated along `A -> A/I` and
/// revalidated; the bound is unchanged.
pub fn bound_via_factor(
    cert: &WitnessCertificate,
    witness: &WitnessBimodule,
    provenance: Option<&FactorProvenance>,
) -> Result<(WitnessCertificate, WitnessBimodule), WitnessError> {
    let prov = provenance.ok_or(WitnessError::MissingProvenance)?;
    let kv: Vec<&str> = prov.keep_vertices.iter().map(|s| s.as_str()).collect();
    let ka: Vec<&str> = prov.keep_arrows.iter().map(|s| s.as_str()).collect();
    let factor = factor_quiver(&prov.source, &kv, &ka).map_err(WitnessError::Quiver)?;
    if factor.fingerprint() != cert.target.fingerprint || witness.target().fingerprint() != cert.target.fingerprint {
        return Err(WitnessError::NotAFactor(String::from("provenance does not reproduce the certified algebra")));
    }
    let inflated = witness.inflate(prov.source.clone())?;
    let mut out = cert.clone();
    out.steps.push(Step::FactorRule { ideal: prov.ideal_description() });
    out.target = TargetInfo::of(&prov.source);
    out.bound = recompute_bound(&out.steps);
    Ok((out, inflated))
}

/// Multiply the bound by `d`, the dimension of an algebra Morita equivalent
/// to the certified basic one. Nothing is constructed.
pub fn bound_via_morita(cert: &WitnessCertificate, d: u64) -> Result<WitnessCertificate, WitnessError> {
    let basic = cert.target.dimension.ok_or(WitnessError::UnknownDimension)?;
    if d < basic as u64 {
        return Err(WitnessError::MoritaTooSmall { d, basic });
    }
    let mut out = cert.clone();
    out.steps.push(Step::MoritaRule { d });
    out.bound = recompute_bound(&out.steps);
    Ok(out)
}
