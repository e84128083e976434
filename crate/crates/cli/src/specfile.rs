//! The line-oriented quiver-spec format.
//!
//! ```text
//! # three loops, radical square zero
//! quiver L3
//! field Fp 101
//! vertex o
//! arrow x: o -> o weight 1
//! arrow y: o -> o weight 1
//! relation 1*y*x + 2*x*y
//! nilbound 2
//! ```
//!
//! Paths in relations are written outermost arrow first (`b*a` is `a`
//! followed by `b`). Weights are optional, but if one arrow has them every
//! arrow must, all of the same length; they define a covering.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;
use wildrank_core::covering::CoveringSpec;
use wildrank_core::exactlin::{Field, Scalar};
use wildrank_core::quiver::{Arrow, BoundQuiver, Path, Quiver, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpecError {
    pub kind: SpecErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed spec: the bound quiver and, when weights were given, the covering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub bound_quiver: Arc<BoundQuiver>,
    pub covering: Option<CoveringSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(p: Pos, message: impl Into<String>) -> SpecError {
    SpecError { kind: SpecErrorKind::Syntax, line: p.line, column: p.column, message: message.into() }
}

fn semantic(p: Pos, message: impl Into<String>) -> SpecError {
    SpecError { kind: SpecErrorKind::Semantic, line: p.line, column: p.column, message: message.into() }
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    pos: Pos,
}

/// Words are maximal runs of characters other than whitespace and `:*+`;
/// those three are single-character tokens.
fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        let special = matches!(c, ':' | '*' | '+');
        if c.is_whitespace() || special {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], pos: Pos { line: number, column: column_of(line, s) } });
            }
            if special {
                out.push(Token { text: &line[i..i + 1], pos: Pos { line: number, column: column_of(line, i) } });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], pos: Pos { line: number, column: column_of(line, s) } });
    }
    out
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn is_number(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    ok(num) && parts.next().map_or(true, ok)
}

fn parse_scalar(field: Field, t: &Token<'_>) -> Result<Scalar, SpecError> {
    let bad = || syntax(t.pos, format!("bad coefficient `{}`", t.text));
    let (num, den) = match t.text.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().map_err(|_| bad())?, d.parse::<i64>().map_err(|_| bad())?),
        None => (t.text.parse::<i64>().map_err(|_| bad())?, 1),
    };
    field.from_ratio(num, den).ok_or_else(|| semantic(t.pos, format!("coefficient `{}` is not defined over {field}", t.text)))
}

struct ArrowLine<'a> {
    name: Token<'a>,
    source: Token<'a>,
    target: Token<'a>,
    weight: Option<(Vec<i64>, Pos)>,
}

struct TermSyntax<'a> {
    coef: Option<Token<'a>>,
    negative: bool,
    arrows: Vec<Token<'a>>,
    pos: Pos,
}

struct RelationLine<'a> {
    terms: Vec<TermSyntax<'a>>,
    pos: Pos,
}

fn expect_end(rest: &[Token<'_>]) -> Result<(), SpecError> {
    match rest.first() {
        Some(t) => Err(syntax(t.pos, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

fn parse_arrow<'a>(key: &Token<'a>, toks: &[Token<'a>]) -> Result<ArrowLine<'a>, SpecError> {
    let need = |i: usize, what: &str| -> Result<Token<'a>, SpecError> {
        toks.get(i).cloned().ok_or_else(|| {
            let p = toks.last().map_or(key.pos, |t| Pos { line: t.pos.line, column: t.pos.column + t.text.chars().count() });
            syntax(p, format!("expected {what}"))
        })
    };
    let name = need(0, "an arrow name")?;
    let colon = need(1, "`:`")?;
    if colon.text != ":" {
        return Err(syntax(colon.pos, "expected `:` after the arrow name"));
    }
    let source = need(2, "a source vertex")?;
    let arrow = need(3, "`->`")?;
    if arrow.text != "->" {
        return Err(syntax(arrow.pos, "expected `->`"));
    }
    let target = need(4, "a target vertex")?;
    let mut weight = None;
    if let Some(kw) = toks.get(5) {
        if kw.text != "weight" {
            return Err(syntax(kw.pos, format!("unknown arrow attribute `{}`", kw.text)));
        }
        let list = need(6, "a weight list")?;
        expect_end(&toks[7..])?;
        let mut values = Vec::new();
        let mut offset = 0;
        for part in list.text.split(',') {
            let p = Pos { line: list.pos.line, column: list.pos.column + offset };
            values.push(part.parse::<i64>().map_err(|_| syntax(p, format!("bad weight `{part}`")))?);
            offset += part.chars().count() + 1;
        }
        weight = Some((values, list.pos));
    }
    for t in [&name, &source, &target] {
        if t.text == "->" {
            return Err(syntax(t.pos, "misplaced `->`"));
        }
    }
    if is_number(name.text) {
        return Err(semantic(name.pos, "arrow names must not be numbers"));
    }
    Ok(ArrowLine { name, source, target, weight })
}

fn parse_relation<'a>(key: &Token<'a>, toks: &[Token<'a>]) -> Result<RelationLine<'a>, SpecError> {
    let mut terms = Vec::new();
    let mut i = 0;
    let mut negative = false;
    loop {
        let Some(first) = toks.get(i) else {
            let p = toks.last().map_or(key.pos, |t| t.pos);
            return Err(syntax(p, "expected a term"));
        };
        let pos = first.pos;
        let mut term = TermSyntax { coef: None, negative, arrows: Vec::new(), pos };
        if is_number(first.text) {
            term.coef = Some(first.clone());
            i += 1;
            match toks.get(i) {
                Some(t) if t.text == "*" => i += 1,
                Some(t) => return Err(syntax(t.pos, "expected `*` after the coefficient")),
                None => return Err(syntax(pos, "a coefficient needs a path")),
            }
        }
        loop {
            let Some(t) = toks.get(i) else {
                return Err(syntax(pos, "expected an arrow"));
            };
            if matches!(t.text, "*" | "+" | "-" | ":") || t.text.starts_with('-') {
                return Err(syntax(t.pos, format!("expected an arrow, found `{}`", t.text)));
            }
            term.arrows.push(t.clone());
            i += 1;
            match toks.get(i) {
                Some(s) if s.text == "*" => i += 1,
                _ => break,
            }
        }
        terms.push(term);
        match toks.get(i) {
            None => break,
            Some(s) if s.text == "+" => negative = false,
            Some(s) if s.text == "-" => negative = true,
            Some(s) => return Err(syntax(s.pos, format!("expected `+` or `-`, found `{}`", s.text))),
        }
        i += 1;
    }
    Ok(RelationLine { terms, pos: key.pos })
}

/// Parse a spec. Positions are 1-based; errors name the offending token.
pub fn parse_quiver_spec(text: &str) -> Result<QuiverSpec, SpecError> {
    let mut name: Option<(String, Pos)> = None;
    let mut field: Option<(Field, Pos)> = None;
    let mut nilbound: Option<(usize, Pos)> = None;
    let mut vertices: Vec<Token<'_>> = Vec::new();
    let mut arrows: Vec<ArrowLine<'_>> = Vec::new();
    let mut relations: Vec<RelationLine<'_>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line, number);
        let Some(key) = toks.first().cloned() else { continue };
        let rest = &toks[1..];
        match key.text {
            "quiver" => {
                if name.is_some() {
                    return Err(syntax(key.pos, "second `quiver` line"));
                }
                let first = rest.first().ok_or_else(|| syntax(key.pos, "expected a name"))?;
                let start = line.char_indices().nth(first.pos.column - 1).map_or(0, |(b, _)| b);
                name = Some((line[start..].trim().to_string(), first.pos));
            }
            "field" => {
                if field.is_some() {
                    return Err(syntax(key.pos, "second `field` line"));
                }
                let f = match rest.first().map(|t| t.text) {
                    Some("Q") => {
                        expect_end(&rest[1..])?;
                        Field::Rationals
                    }
                    Some("Fp") => {
                        let t = rest.get(1).ok_or_else(|| syntax(rest[0].pos, "expected a prime after `Fp`"))?;
                        expect_end(&rest[2..])?;
                        let p = t.text.parse::<u64>().map_err(|_| syntax(t.pos, format!("bad characteristic `{}`", t.text)))?;
                        Field::prime(p).map_err(|e| semantic(t.pos, e.to_string()))?
                    }
                    Some(other) => return Err(syntax(rest[0].pos, format!("unknown field `{other}`; use `Q` or `Fp <p>`"))),
                    None => return Err(syntax(key.pos, "expected `Q` or `Fp <p>`")),
                };
                field = Some((f, key.pos));
            }
            "vertex" => {
                if rest.is_empty() {
                    return Err(syntax(key.pos, "expected at least one vertex"));
                }
                for t in rest {
                    if matches!(t.text, ":" | "*" | "+") || t.text == "->" {
                        return Err(syntax(t.pos, format!("`{}` cannot name a vertex", t.text)));
                    }
                    if vertices.iter().any(|v| v.text == t.text) {
                        return Err(semantic(t.pos, format!("duplicate vertex `{}`", t.text)));
                    }
                    vertices.push(t.clone());
                }
            }
            "arrow" => arrows.push(parse_arrow(&key, rest)?),
            "relation" => relations.push(parse_relation(&key, rest)?),
            "nilbound" => {
                if nilbound.is_some() {
                    return Err(syntax(key.pos, "second `nilbound` line"));
                }
                let t = rest.first().ok_or_else(|| syntax(key.pos, "expected a positive integer"))?;
                expect_end(&rest[1..])?;
                let l = t.text.parse::<usize>().map_err(|_| syntax(t.pos, format!("bad nilpotency bound `{}`", t.text)))?;
                if l == 0 {
                    return Err(semantic(t.pos, "nilpotency bound must be positive"));
                }
                nilbound = Some((l, t.pos));
            }
            other => return Err(syntax(key.pos, format!("unknown key `{other}`"))),
        }
    }

    let origin = Pos { line: 1, column: 1 };
    let (name, _) = name.ok_or_else(|| syntax(origin, "missing `quiver <name>` line"))?;
    let (field, _) = field.ok_or_else(|| syntax(origin, "missing `field` line"))?;
    if vertices.is_empty() {
        return Err(semantic(origin, "no vertices declared"));
    }
    let vnames: Vec<String> = vertices.iter().map(|t| t.text.to_string()).collect();
    let find_vertex = |t: &Token<'_>| {
        vnames.iter().position(|v| v == t.text).ok_or_else(|| semantic(t.pos, format!("undeclared vertex `{}`", t.text)))
    };
    let mut qarrows = Vec::new();
    for a in &arrows {
        if qarrows.iter().any(|b: &Arrow| b.name == a.name.text) {
            return Err(semantic(a.name.pos, format!("duplicate arrow `{}`", a.name.text)));
        }
        qarrows.push(Arrow { name: a.name.text.to_string(), source: find_vertex(&a.source)?, target: find_vertex(&a.target)? });
    }
    let quiver = Quiver::new(vnames, qarrows).map_err(|e| semantic(origin, e.to_string()))?;

    let mut rels = Vec::new();
    for r in &relations {
        let mut terms = Vec::new();
        for t in &r.terms {
            let mut ids = Vec::new();
            for a in t.arrows.iter().rev() {
                ids.push(quiver.arrow_index(a.text).ok_or_else(|| semantic(a.pos, format!("undeclared arrow `{}`", a.text)))?);
            }
            let path = Path::from_arrows(&quiver, &ids).map_err(|e| semantic(t.pos, e.to_string()))?;
            let mut c = match &t.coef {
                Some(tok) => parse_scalar(field, tok)?,
                None => field.one(),
            };
            if t.negative {
                c = field.neg(c);
            }
            terms.push((c, path));
        }
        rels.push((Relation::new(field, terms.clone()).map_err(|e| semantic(r.pos, e.to_string()))?, r, terms));
    }

    let weights = collect_weights(&arrows)?;
    if let Some(w) = &weights {
        for (_, r, terms) in &rels {
            let degree = |p: &Path| {
                let mut d = vec![0i64; w[0].len()];
                for &a in &p.arrows {
                    for (x, y) in d.iter_mut().zip(&w[a]) {
                        *x += y;
                    }
                }
                d
            };
            let first = degree(&terms[0].1);
            if let Some(t) = r.terms.iter().zip(terms).find(|(_, (_, p))| degree(p) != first) {
                return Err(semantic(t.0.pos, "relation is not homogeneous for the declared weights"));
            }
        }
    }

    let bq = BoundQuiver::new(name, field, quiver, rels.into_iter().map(|r| r.0).collect(), nilbound.map(|n| n.0))
        .map_err(|e| semantic(origin, e.to_string()))?;
    let bound_quiver = Arc::new(bq);
    let covering = match weights {
        Some(w) => {
            let rank = w.first().map_or(0, Vec::len);
            Some(CoveringSpec::new(bound_quiver.clone(), rank, w).map_err(|e| semantic(origin, e.to_string()))?)
        }
        None => None,
    };
    Ok(QuiverSpec { bound_quiver, covering })
}

fn collect_weights(arrows: &[ArrowLine<'_>]) -> Result<Option<Vec<Vec<i64>>>, SpecError> {
    let Some(first) = arrows.iter().find_map(|a| a.weight.as_ref()) else {
        return Ok(None);
    };
    let rank = first.0.len();
    let mut out = Vec::new();
    for a in arrows {
        match &a.weight {
            None => return Err(semantic(a.name.pos, format!("arrow `{}` has no weight while others do", a.name.text))),
            Some((w, p)) if w.len() != rank => {
                return Err(semantic(*p, format!("weight of length {} where {rank} was used before", w.len())))
            }
            Some((w, _)) => out.push(w.clone()),
        }
    }
    Ok(Some(out))
}

/// Canonical text: header, one `vertex` line, arrows, relations, `nilbound`.
pub fn write_quiver_spec(bq: &BoundQuiver, covering: Option<&CoveringSpec>) -> String {
    let q = bq.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "quiver {}", bq.name());
    let _ = writeln!(out, "field {}", bq.field());
    let _ = writeln!(out, "vertex {}", q.vertices().join(" "));
    for (i, a) in q.arrows().iter().enumerate() {
        let _ = write!(out, "arrow {}: {} -> {}", a.name, q.vertices()[a.source], q.vertices()[a.target]);
        if let Some(c) = covering {
            let w: Vec<String> = c.weights()[i].iter().map(i64::to_string).collect();
            let _ = write!(out, " weight {}", w.join(","));
        }
        out.push('\n');
    }
    for r in bq.relations() {
        let _ = writeln!(out, "relation {}", r.display(q, bq.field()));
    }
    let _ = writeln!(out, "nilbound {}", bq.nilbound());
    out
}

impl QuiverSpec {
    pub fn to_text(&self) -> String {
        write_quiver_spec(&self.bound_quiver, self.covering.as_ref())
    }
}
