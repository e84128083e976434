//! Certificate files: `key = value` lines in a fixed order.
//!
//! Every step records its multiplier inputs and the running bound after it,
//! so the arithmetic can be re-checked without rebuilding any witness.

use std::fmt::Write as _;

use thiserror::Error;
use wildrank_core::exactlin::Field;
use wildrank_core::wildness::{Step, Subject, TargetInfo, VerificationSummary, WitnessCertificate};

pub const MAGIC: &str = "wildrank-certificate 1";
pub const TOOLKIT: &str = concat!("wildrank ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bound overflows u64 at step {0}")]
    Overflow(usize),
    #[error("step {step}: recorded running bound {recorded}, recomputed {recomputed}")]
    RunningMismatch { step: usize, recorded: u64, recomputed: u64 },
    #[error("recorded bound {recorded}, recomputed {recomputed}")]
    BoundMismatch { recorded: u64, recomputed: u64 },
    #[error("a derivation must start with an explicit bimodule")]
    BadStart,
    #[error("step {0}: a Morita step lowered the bound")]
    MoritaDecrease(usize),
}

/// A certificate as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub toolkit: String,
    pub certificate: WitnessCertificate,
    /// Bound after each step, as written.
    pub running: Vec<u64>,
}

impl CertificateFile {
    /// Wrap a certificate, computing the running bounds.
    pub fn new(certificate: WitnessCertificate) -> CertificateFile {
        let mut acc: u64 = 1;
        let running = certificate
            .steps
            .iter()
            .map(|s| {
                acc = acc.saturating_mul(s.multiplier());
                acc
            })
            .collect();
        CertificateFile { toolkit: TOOLKIT.to_string(), certificate, running }
    }
}

fn field_text(f: Field) -> String {
    f.to_string()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), ToString::to_string)
}

pub fn write_certificate(file: &CertificateFile) -> String {
    let c = &file.certificate;
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{k} = {v}");
    };
    kv("toolkit", &file.toolkit);
    kv("target.name", &c.target.name);
    kv("target.fingerprint", &format!("{:016x}", c.target.fingerprint));
    kv("target.dimension", &opt(&c.target.dimension));
    kv("subject", &c.subject.as_str());
    kv("field", &field_text(c.field));
    kv("seed", &c.seed);
    kv("symbolic", &opt(&c.symbolic_target));
    kv("steps", &c.steps.len());
    for (i, s) in c.steps.iter().enumerate() {
        let p = format!("step.{}", i + 1);
        kv(&format!("{p}.rule"), &s.rule());
        match s {
            Step::ExplicitBimodule { label, rank } => {
                kv(&format!("{p}.label"), label);
                kv(&format!("{p}.rank"), rank);
            }
            Step::Compose { label, outer_rank } => {
                kv(&format!("{p}.label"), label);
                kv(&format!("{p}.rank"), outer_rank);
            }
            Step::FactorRule { ideal } => kv(&format!("{p}.ideal"), ideal),
            Step::MoritaRule { d } => kv(&format!("{p}.d"), d),
            Step::CoveringRule { window, window_vertices } => {
                kv(&format!("{p}.window"), window);
                kv(&format!("{p}.vertices"), window_vertices);
            }
        }
        kv(&format!("{p}.running"), &file.running.get(i).copied().unwrap_or(0));
    }
    kv("bound", &c.bound);
    match &c.verification {
        None => kv("verification", &"none"),
        Some(v) => {
            kv("verification", &"present");
            kv("verification.samples", &v.samples);
            kv("verification.max_dim", &v.max_dim);
            kv("verification.passed", &v.passed);
            kv("verification.failed", &v.failed);
            kv("verification.inconclusive", &v.inconclusive);
            kv("verification.valid", &v.valid);
        }
    }
    format!("{MAGIC}\n{out}")
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn fail(&self, message: impl Into<String>) -> CertError {
        let line = self.lines.get(self.at).map_or(self.lines.last().map_or(1, |l| l.0 + 1), |l| l.0);
        CertError::Parse { line, message: message.into() }
    }

    fn take(&mut self, key: &str) -> Result<&'a str, CertError> {
        let Some(&(_, text)) = self.lines.get(self.at) else {
            return Err(self.fail(format!("missing `{key}`")));
        };
        let Some((k, v)) = text.split_once(" = ") else {
            return Err(self.fail(format!("expected `{key} = ...`")));
        };
        if k != key {
            return Err(self.fail(format!("expected `{key}`, found `{k}`")));
        }
        self.at += 1;
        Ok(v)
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CertError> {
        let v = self.take(key)?;
        v.parse::<T>().map_err(|_| {
            self.at -= 1;
            self.fail(format!("`{key}` is not a number: `{v}`"))
        })
    }
}

/// Parse a certificate; keys must appear exactly in the written order.
pub fn parse_certificate(text: &str) -> Result<CertificateFile, CertError> {
    let mut all = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match all.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(CertError::Parse { line: 1, message: format!("expected `{MAGIC}`") }),
    }
    let mut r = Lines { lines: all.collect(), at: 0 };
    let toolkit = r.take("toolkit")?.to_string();
    let name = r.take("target.name")?.to_string();
    let fp = r.take("target.fingerprint")?;
    let fingerprint = u64::from_str_radix(fp, 16).map_err(|_| {
        r.at -= 1;
        r.fail("bad fingerprint")
    })?;
    let dimension = match r.take("target.dimension")? {
        "none" => None,
        v => Some(v.parse::<usize>().map_err(|_| {
            r.at -= 1;
            r.fail("bad dimension")
        })?),
    };
    let subject = match r.take("subject")? {
        "algebra" => Subject::Algebra,
        "sincere-subcategory" => Subject::SincereSubcategory,
        other => {
            r.at -= 1;
            return Err(r.fail(format!("unknown subject `{other}`")));
        }
    };
    let field = match r.take("field")? {
        "Q" => Field::Rationals,
        v => {
            let p = v.strip_prefix("Fp ").and_then(|p| p.parse::<u64>().ok()).and_then(|p| Field::prime(p).ok());
            p.ok_or_else(|| {
                r.at -= 1;
                r.fail(format!("unknown field `{v}`"))
            })?
        }
    };
    let seed = r.num::<u64>("seed")?;
    let symbolic_target = match r.take("symbolic")? {
        "none" => None,
        v => Some(v.to_string()),
    };
    let count = r.num::<usize>("steps")?;
    let mut steps = Vec::with_capacity(count);
    let mut running = Vec::with_capacity(count);
    for i in 1..=count {
        let p = format!("step.{i}");
        let rule = r.take(&format!("{p}.rule"))?;
        let step = match rule {
            "explicit-bimodule" => {
                let label = r.take(&format!("{p}.label"))?.to_string();
                Step::ExplicitBimodule { label, rank: r.num(&format!("{p}.rank"))? }
            }
            "compose" => {
                let label = r.take(&format!("{p}.label"))?.to_string();
                Step::Compose { label, outer_rank: r.num(&format!("{p}.rank"))? }
            }
            "factor-rule" => Step::FactorRule { ideal: r.take(&format!("{p}.ideal"))?.to_string() },
            "morita-rule" => Step::MoritaRule { d: r.num(&format!("{p}.d"))? },
            "covering-rule" => {
                let window = r.take(&format!("{p}.window"))?.to_string();
                Step::CoveringRule { window, window_vertices: r.num(&format!("{p}.vertices"))? }
            }
            other => {
                r.at -= 1;
                return Err(r.fail(format!("unknown rule `{other}`")));
            }
        };
        steps.push(step);
        running.push(r.num::<u64>(&format!("{p}.running"))?);
    }
    let bound = r.num::<u64>("bound")?;
    let verification = match r.take("verification")? {
        "none" => None,
        "present" => Some(VerificationSummary {
            samples: r.num("verification.samples")?,
            max_dim: r.num("verification.max_dim")?,
            passed: r.num("verification.passed")?,
            failed: r.num("verification.failed")?,
            inconclusive: r.num("verification.inconclusive")?,
            valid: r.num("verification.valid")?,
        }),
        other => {
            r.at -= 1;
            return Err(r.fail(format!("expected `none` or `present`, found `{other}`")));
        }
    };
    if r.at < r.lines.len() {
        return Err(r.fail("trailing content"));
    }
    let certificate = WitnessCertificate {
        target: TargetInfo { name, fingerprint, dimension },
        subject,
        bound,
        steps,
        verification,
        field,
        seed,
        symbolic_target,
    };
    Ok(CertificateFile { toolkit, certificate, running })
}

/// Recompute the bound from the steps alone, checking every running value.
pub fn recheck(file: &CertificateFile) -> Result<u64, CertError> {
    let steps = &file.certificate.steps;
    if !matches!(steps.first(), Some(Step::ExplicitBimodule { .. })) {
        return Err(CertError::BadStart);
    }
    let mut acc: u64 = 1;
    for (i, s) in steps.iter().enumerate() {
        let next = acc.checked_mul(s.multiplier()).ok_or(CertError::Overflow(i + 1))?;
        if matches!(s, Step::MoritaRule { .. }) && next < acc {
            return Err(CertError::MoritaDecrease(i + 1));
        }
        acc = next;
        let recorded = file.running.get(i).copied().unwrap_or(0);
        if recorded != acc {
            return Err(CertError::RunningMismatch { step: i + 1, recorded, recomputed: acc });
        }
    }
    if acc != file.certificate.bound {
        return Err(CertError::BoundMismatch { recorded: file.certificate.bound, recomputed: acc });
    }
    Ok(acc)
}
