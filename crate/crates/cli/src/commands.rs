//! The four commands, as pure functions from a parsed spec to reports.

use std::sync::Arc;

use wildrank_core::covering::{covering_criterion, verify_pushdown, CoveringOutcome, CoveringSpec, PushdownReport};
use wildrank_core::exactlin::derive_seed;
use wildrank_core::modvariety::{stratum_probe, ProbeLine};
use wildrank_core::quiver::{build_algebra_table, classify_hereditary, is_minimal_wild_hereditary, BoundQuiver};
use wildrank_core::tilting::{
    cartan_coxeter, dim_vector, enumerate_preprojectives, is_tilting, search_concealed, ConcealedCandidate, Preprojective,
    TiltingCandidate,
};
use wildrank_core::wildness::{
    builtin_f, builtin_g, compose_witness, corrupted_g, verify_sincere_images, verify_witness, Tally, VerificationSummary,
    WitnessBimodule, WitnessReport,
};
use wildrank_core::TiltingError;

use crate::certfile::{recheck, write_certificate, CertificateFile};
use crate::report::{join, KvDoc, Text};
use crate::specfile::{write_quiver_spec, QuiverSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Invalid = 2,
    NoWindow = 3,
    VerificationFailed = 4,
    Inconclusive = 5,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Invalid => "invalid-input",
            Status::NoWindow => "no-window",
            Status::VerificationFailed => "verification-failed",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// What a command produced. `certificate` is set only by `certify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub human: String,
    pub kv: KvDoc,
    pub certificate: Option<String>,
    /// Extra files to write, as `(file name, contents)`.
    pub exports: Vec<(String, String)>,
}

impl Outcome {
    fn new(status: Status, human: Text, mut kv: KvDoc) -> Outcome {
        kv.push("status", status.as_str());
        Outcome { status, human: human.into_string(), kv, certificate: None, exports: Vec::new() }
    }

    fn invalid(command: &str, message: String) -> Outcome {
        let mut text = Text::default();
        text.line(format!("error: {message}"));
        let mut kv = KvDoc::default();
        kv.push("command", command);
        kv.push("error", &message);
        Outcome::new(Status::Invalid, text, kv)
    }
}

fn header(command: &str, bq: &BoundQuiver, text: &mut Text, kv: &mut KvDoc) {
    let q = bq.quiver();
    kv.push("command", command);
    kv.push("algebra", bq.name());
    kv.push("fingerprint", format!("{:016x}", bq.fingerprint()));
    kv.push("field", bq.field());
    kv.push("vertices", q.vertex_count());
    kv.push("arrows", q.arrow_count());
    kv.push("relations", bq.relations().len());
    text.line(format!(
        "{} over {}: {} vertices, {} arrows, {} relations",
        bq.name(),
        bq.field(),
        q.vertex_count(),
        q.arrow_count(),
        bq.relations().len()
    ));
}

pub fn classify(spec: &QuiverSpec) -> Outcome {
    let bq = &spec.bound_quiver;
    let q = bq.quiver();
    let mut text = Text::default();
    let mut kv = KvDoc::default();
    header("classify", bq, &mut text, &mut kv);
    match build_algebra_table(bq) {
        Ok(t) => {
            kv.push("dimension", t.dimension());
            text.line(format!("dimension {}", t.dimension()));
        }
        Err(e) => {
            kv.push("dimension", "unknown");
            text.line(format!("dimension unknown ({e})"));
        }
    }
    kv.push("hereditary", bq.is_hereditary());
    if !bq.is_hereditary() {
        kv.push("trichotomy", "unavailable");
        text.line("bound quiver: trichotomy unavailable");
        return Outcome::new(Status::Ok, text, kv);
    }
    let comps = q.component_vertex_sets();
    kv.push("components", comps.len());
    for (i, (vs, comp)) in comps.iter().zip(q.components()).enumerate() {
        let key = format!("component.{}", i + 1);
        let names: Vec<&str> = vs.iter().map(|&v| q.vertices()[v].as_str()).collect();
        kv.push(format!("{key}.vertices"), names.join(" "));
        if comp.has_loops() {
            kv.push(format!("{key}.type"), "unavailable");
            kv.push(format!("{key}.minimal_wild"), "unavailable");
            text.line(format!("component [{}]: has loops, trichotomy unavailable", names.join(" ")));
            continue;
        }
        // Connected and loop-free, so classification cannot fail.
        let ty = classify_hereditary(&comp).expect("connected loop-free component");
        let minimal = is_minimal_wild_hereditary(&comp).expect("connected loop-free component");
        kv.push(format!("{key}.type"), ty);
        kv.push(format!("{key}.minimal_wild"), minimal);
        let flag = if minimal { ", minimal wild" } else { "" };
        text.line(format!("component [{}]: {ty}{flag}", names.join(" ")));
    }
    Outcome::new(Status::Ok, text, kv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub radius: u32,
    pub samples: usize,
    pub max_dim: usize,
    pub seed: u64,
    /// Verify a witness built from the corrupted `G` instead; the run must fail.
    pub corrupt_witness: bool,
}

impl Default for CertifyOptions {
    fn default() -> CertifyOptions {
        CertifyOptions { radius: 2, samples: 20, max_dim: 3, seed: 0, corrupt_witness: false }
    }
}

/// `G ∘ F ∘ G'` with `G'` the corrupted `G`, moved onto a K3-shaped window.
fn corrupted_window_witness(window: &Arc<BoundQuiver>) -> Option<WitnessBimodule> {
    let q = window.quiver();
    if q.vertex_count() != 2 || q.arrow_count() != 3 {
        return None;
    }
    let (s, t) = (q.arrows()[0].source, q.arrows()[0].target);
    let f = window.field();
    let inner = compose_witness(&builtin_f(f), &corrupted_g(f)).ok()?;
    compose_witness(&builtin_g(f), &inner).ok()?.retarget(window.clone(), &[s, t], &[0, 1, 2]).ok()
}

fn add(into: &mut VerificationSummary, t: &Tally) {
    into.passed += t.pass;
    into.failed += t.fail;
    into.inconclusive += t.inconclusive;
}

fn tally_text(t: &Tally) -> String {
    format!("{} pass, {} fail, {} inconclusive, {} skipped", t.pass, t.fail, t.inconclusive, t.skipped)
}

fn tally_kv(kv: &mut KvDoc, key: &str, t: &Tally) {
    kv.push(format!("{key}.pass"), t.pass);
    kv.push(format!("{key}.fail"), t.fail);
    kv.push(format!("{key}.inconclusive"), t.inconclusive);
    kv.push(format!("{key}.skipped"), t.skipped);
}

struct Evidence {
    witness: WitnessReport,
    sincere: Tally,
    pushdown: PushdownReport,
}

fn gather(outcome: &CoveringOutcome, witness: &WitnessBimodule, opts: &CertifyOptions) -> Result<Evidence, String> {
    let witness_report =
        verify_witness(witness, opts.samples, opts.max_dim, derive_seed(opts.seed, 1)).map_err(|e| e.to_string())?;
    let sincere =
        verify_sincere_images(witness, opts.samples, opts.max_dim, derive_seed(opts.seed, 2)).map_err(|e| e.to_string())?;
    let max_total = opts.max_dim.max(outcome.window.vertex_count());
    let pushdown =
        verify_pushdown(&outcome.window, opts.samples, max_total, derive_seed(opts.seed, 3)).map_err(|e| e.to_string())?;
    Ok(Evidence { witness: witness_report, sincere, pushdown })
}

pub fn certify(spec: &QuiverSpec, opts: &CertifyOptions) -> Outcome {
    let bq = &spec.bound_quiver;
    let mut text = Text::default();
    let mut kv = KvDoc::default();
    header("certify", bq, &mut text, &mut kv);
    let (cov, weights) = match &spec.covering {
        Some(c) => (c.clone(), "declared"),
        None => match CoveringSpec::unit_weights(bq.clone()) {
            Ok(c) => (c, "unit"),
            Err(e) => return Outcome::invalid("certify", format!("no usable grading: {e}")),
        },
    };
    kv.push("weights", weights);
    kv.push("radius", opts.radius);
    kv.push("samples", opts.samples);
    kv.push("max_dim", opts.max_dim);
    kv.push("seed", opts.seed);
    text.line(format!("grading: rank {} ({weights} weights), search radius {}", cov.rank(), opts.radius));

    let outcome = match covering_criterion(&cov, opts.radius) {
        Ok(Some(o)) => o,
        Ok(None) => {
            text.line(format!("no window with a known wild factor up to radius {}", opts.radius));
            text.line("this is not a tameness claim");
            return Outcome::new(Status::NoWindow, text, kv);
        }
        Err(e) => return Outcome::invalid("certify", e.to_string()),
    };
    let piece = &outcome.window;
    kv.push("window.box", piece.grading_box.describe());
    kv.push("window.name", piece.bound_quiver.name());
    kv.push("window.kind", outcome.window_kind);
    kv.push("window.vertices", join(piece.bound_quiver.quiver().vertices(), " "));
    text.line(format!(
        "window {} in box {}: {} on vertices [{}]",
        piece.bound_quiver.name(),
        piece.grading_box.describe(),
        outcome.window_kind,
        join(piece.bound_quiver.quiver().vertices(), " ")
    ));

    let witness = if opts.corrupt_witness {
        match corrupted_window_witness(&piece.bound_quiver) {
            Some(w) => w,
            None => return Outcome::invalid("certify", "the corrupted witness needs a K3-shaped window".into()),
        }
    } else {
        outcome.window_witness.clone()
    };
    kv.push("witness", witness.label());
    let ev = match gather(&outcome, &witness, opts) {
        Ok(ev) => ev,
        Err(e) => return Outcome::invalid("certify", e),
    };

    let mut summary = VerificationSummary { samples: opts.samples, max_dim: opts.max_dim, ..VerificationSummary::default() };
    add(&mut summary, &ev.witness.indecomposability);
    add(&mut summary, &ev.witness.isomorphism);
    if let Some(h) = &ev.witness.hom_dimension {
        add(&mut summary, h);
    }
    add(&mut summary, &ev.sincere);
    add(&mut summary, &ev.pushdown.indecomposability);
    add(&mut summary, &ev.pushdown.isomorphism);
    add(&mut summary, &ev.pushdown.agreement);
    summary.valid = ev.witness.is_valid() && ev.sincere.fail == 0 && ev.pushdown.is_valid();

    tally_kv(&mut kv, "verify.witness.indecomposable", &ev.witness.indecomposability);
    tally_kv(&mut kv, "verify.witness.isomorphism", &ev.witness.isomorphism);
    if let Some(h) = &ev.witness.hom_dimension {
        tally_kv(&mut kv, "verify.witness.hom", h);
    }
    tally_kv(&mut kv, "verify.sincere", &ev.sincere);
    kv.push("verify.pushdown.accepted", ev.pushdown.accepted);
    kv.push("verify.pushdown.starved", ev.pushdown.starved);
    tally_kv(&mut kv, "verify.pushdown.indecomposable", &ev.pushdown.indecomposability);
    tally_kv(&mut kv, "verify.pushdown.isomorphism", &ev.pushdown.isomorphism);
    tally_kv(&mut kv, "verify.pushdown.agreement", &ev.pushdown.agreement);
    text.line(format!("witness {} checks:", witness.label()));
    text.line(format!("  indecomposability  {}", tally_text(&ev.witness.indecomposability)));
    text.line(format!("  isomorphism        {}", tally_text(&ev.witness.isomorphism)));
    if let Some(h) = &ev.witness.hom_dimension {
        text.line(format!("  dim Hom            {}", tally_text(h)));
    }
    text.line(format!("  sincere images     {}", tally_text(&ev.sincere)));
    text.line(format!("pushdown checks ({} accepted, {} starved):", ev.pushdown.accepted, ev.pushdown.starved));
    text.line(format!("  indecomposability  {}", tally_text(&ev.pushdown.indecomposability)));
    text.line(format!("  isomorphism        {}", tally_text(&ev.pushdown.isomorphism)));
    text.line(format!("  agreement          {}", tally_text(&ev.pushdown.agreement)));
    for f in ev.witness.failures.iter().chain(&ev.pushdown.failures).take(5) {
        text.line(format!("  failure: {f}"));
    }

    let mut cert = outcome.certificate.clone().with_verification(summary.clone());
    cert.seed = opts.seed;
    let file = CertificateFile::new(cert);
    let recomputed = recheck(&file);
    kv.push("bound", file.certificate.bound);
    kv.push("bound.symbolic", file.certificate.symbolic_target.as_deref().unwrap_or("none"));
    kv.push("recheck", if recomputed.is_ok() { "pass" } else { "fail" });
    kv.push("verification.valid", summary.valid);
    text.line(format!(
        "derivation: {}",
        join(&file.certificate.steps.iter().map(|s| format!("{} x{}", s.rule(), s.multiplier())).collect::<Vec<_>>(), ", ")
    ));
    text.line(format!("bound on the rank: {} (symbolic form {})", file.certificate.bound, kv.get("bound.symbolic").unwrap_or("none")));
    match &recomputed {
        Ok(b) => text.line(format!("arithmetic re-check: {b}, matches")),
        Err(e) => text.line(format!("arithmetic re-check failed: {e}")),
    }

    let status = if recomputed.is_err() || !summary.valid || summary.failed > 0 {
        Status::VerificationFailed
    } else if summary.inconclusive > summary.passed {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    text.line(format!("status: {}", status.as_str()));
    let mut out = Outcome::new(status, text, kv);
    out.certificate = Some(write_certificate(&file));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyOptions {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VarietyOptions {
    fn default() -> VarietyOptions {
        VarietyOptions { n_max: 3, samples: 4, seed: 0 }
    }
}

fn dims_key(d: &[usize]) -> String {
    join(d, ",")
}

pub fn variety(spec: &QuiverSpec, opts: &VarietyOptions) -> Outcome {
    let bq = &spec.bound_quiver;
    let mut text = Text::default();
    let mut kv = KvDoc::default();
    header("variety", bq, &mut text, &mut kv);
    kv.push("nmax", opts.n_max);
    kv.push("samples", opts.samples);
    kv.push("seed", opts.seed);
    let lines: Vec<ProbeLine> = stratum_probe(bq, opts.n_max, opts.samples, opts.seed);
    let (mut records, mut empty) = (0usize, 0usize);
    text.line("n  estimate  verdict       basis");
    for line in &lines {
        let r = &line.report;
        let key = format!("n.{}", r.n);
        let agg = r.aggregate.map_or_else(|| "none".to_string(), |a| a.to_string());
        kv.push(format!("{key}.estimate"), &agg);
        kv.push(format!("{key}.verdict"), line.verdict.as_str());
        kv.push(format!("{key}.basis"), r.basis.as_str());
        text.line(format!("{:<2} {:<9} {:<13} {}", r.n, agg, line.verdict.as_str(), r.basis.as_str()));
        for rec in &r.records {
            records += 1;
            if rec.points.is_empty() {
                empty += 1;
            }
            let dk = format!("{key}.d.{}", dims_key(&rec.dims));
            let est = rec.estimate.map_or_else(|| "none".to_string(), |e| e.to_string());
            kv.push(format!("{dk}.estimate"), &est);
            kv.push(format!("{dk}.points"), rec.points.len());
            kv.push(format!("{dk}.starved"), rec.starved);
            text.line(format!("     d=({}) estimate {est} from {} points", dims_key(&rec.dims), rec.points.len()));
            if rec.starved > 0 {
                text.line(format!("     notice: {} samples at d=({}) found no point", rec.starved, dims_key(&rec.dims)));
            }
        }
    }
    text.line("estimates are sampled heuristics; only exact-basis values above n are conclusive");
    let status = if records > 0 && 2 * empty > records { Status::Inconclusive } else { Status::Ok };
    Outcome::new(status, text, kv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TiltOptions {
    pub depth: usize,
}

fn tilt_error(e: TiltingError) -> Outcome {
    Outcome::invalid("tilt", e.to_string())
}

pub fn tilt(spec: &QuiverSpec, opts: &TiltOptions) -> Outcome {
    let bq = &spec.bound_quiver;
    if !bq.is_hereditary() {
        return tilt_error(TiltingError::NotHereditary);
    }
    if let Err(e) = cartan_coxeter(bq.quiver()) {
        return tilt_error(e);
    }
    let mut text = Text::default();
    let mut kv = KvDoc::default();
    header("tilt", bq, &mut text, &mut kv);
    kv.push("depth", opts.depth);
    let pre: Vec<Preprojective> = match enumerate_preprojectives(bq, opts.depth) {
        Ok(p) => p,
        Err(e) => return tilt_error(e),
    };
    kv.push("preprojectives", pre.len());
    text.line(format!("preprojectives up to depth {}:", opts.depth));
    for (i, p) in pre.iter().enumerate() {
        let key = format!("pre.{}", i + 1);
        let d = join(&dim_vector(&p.module), ",");
        kv.push(format!("{key}.label"), p.label());
        kv.push(format!("{key}.dims"), &d);
        kv.push(format!("{key}.sincere"), p.sincere);
        text.line(format!("  {:<8} ({d}){}", p.label(), if p.sincere { " sincere" } else { "" }));
    }
    let regular = TiltingCandidate { summands: pre.iter().filter(|p| p.is_projective()).cloned().collect() };
    match is_tilting(&regular) {
        Ok(t) => {
            kv.push("regular_module_tilting", t);
            text.line(format!("T = H (all projectives) is {}tilting", if t { "" } else { "not " }));
        }
        Err(e) => return tilt_error(e),
    }
    let found: Vec<ConcealedCandidate> = match search_concealed(bq, opts.depth) {
        Ok(c) => c,
        Err(e) => return tilt_error(e),
    };
    kv.push("candidates", found.len());
    text.line(format!("tilting modules with a projective summand: {}", found.len()));
    let mut exports = Vec::new();
    for (i, c) in found.iter().enumerate() {
        let key = format!("candidate.{}", i + 1);
        let end = &c.endomorphisms;
        let name = format!("{}-end{}", bq.name(), i + 1);
        let spec_text = write_quiver_spec(&end.bound_quiver.clone().with_name(name.clone()), None);
        kv.push(format!("{key}.summands"), c.tilting.labels().join(" "));
        kv.push(format!("{key}.non_sincere"), c.non_sincere);
        kv.push(format!("{key}.end.dimension"), end.dimension);
        kv.push(format!("{key}.end.arrows"), end.bound_quiver.quiver().arrow_count());
        kv.push(format!("{key}.end.relations"), end.bound_quiver.relations().len());
        kv.push(format!("{key}.end.file"), format!("{name}.quiver"));
        text.line(format!(
            "  T = {}  ({} non-sincere), dim End = {}",
            c.tilting.labels().join(" + "),
            c.non_sincere,
            end.dimension
        ));
        for l in spec_text.lines() {
            text.line(format!("    | {l}"));
        }
        exports.push((format!("{name}.quiver"), spec_text));
    }
    let mut out = Outcome::new(Status::Ok, text, kv);
    out.exports = exports;
    out
}

/// Re-check a certificate file's arithmetic.
pub fn recheck_text(cert: &str) -> Outcome {
    let mut text = Text::default();
    let mut kv = KvDoc::default();
    kv.push("command", "recheck");
    let file = match crate::certfile::parse_certificate(cert) {
        Ok(f) => f,
        Err(e) => return Outcome::invalid("recheck", e.to_string()),
    };
    kv.push("algebra", &file.certificate.target.name);
    kv.push("bound", file.certificate.bound);
    match recheck(&file) {
        Ok(b) => {
            kv.push("recheck", "pass");
            text.line(format!("bound {b} recomputed from {} steps: matches", file.certificate.steps.len()));
            Outcome::new(Status::Ok, text, kv)
        }
        Err(e) => {
            kv.push("recheck", "fail");
            kv.push("error", &e);
            text.line(format!("re-check failed: {e}"));
            Outcome::new(Status::VerificationFailed, text, kv)
        }
    }
}
