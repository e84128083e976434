//! Module files: a representation of a bound quiver given by a spec.
//!
//! ```text
//! dims 1 2
//! map a 1 ; 0
//! map b 0 ; 1
//! ```
//!
//! `dims` lists the vertex dimensions in declaration order. Each `map` line
//! gives the matrix of one arrow row by row, rows separated by `;`. Arrows
//! without a `map` line act as zero.

use std::fmt::Write as _;
use std::sync::Arc;

use wildrank_core::exactlin::Mat;
use wildrank_core::quiver::BoundQuiver;
use wildrank_core::rep::Representation;

use crate::specfile::{SpecError, SpecErrorKind};

fn err(kind: SpecErrorKind, line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError { kind, line, column, message: message.into() }
}

/// Parse a module file against `bq`; relations must hold.
pub fn parse_module(bq: &Arc<BoundQuiver>, text: &str) -> Result<Representation, SpecError> {
    let q = bq.quiver();
    let f = bq.field();
    let mut dims: Option<Vec<usize>> = None;
    let mut rows_of: Vec<Option<(usize, Vec<Vec<String>>)>> = vec![None; q.arrow_count()];
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some(&key) = words.first() else { continue };
        let col = line.find(key).map_or(1, |b| b + 1);
        match key {
            "dims" => {
                if dims.is_some() {
                    return Err(err(SpecErrorKind::Syntax, number, col, "second `dims` line"));
                }
                let d: Result<Vec<usize>, _> = words[1..].iter().map(|w| w.parse::<usize>()).collect();
                let d = d.map_err(|_| err(SpecErrorKind::Syntax, number, col, "dimensions must be non-negative integers"))?;
                if d.len() != q.vertex_count() {
                    return Err(err(
                        SpecErrorKind::Semantic,
                        number,
                        col,
                        format!("{} dimensions for {} vertices", d.len(), q.vertex_count()),
                    ));
                }
                dims = Some(d);
            }
            "map" => {
                let name = words.get(1).ok_or_else(|| err(SpecErrorKind::Syntax, number, col, "expected an arrow name"))?;
                let a = q
                    .arrow_index(name)
                    .ok_or_else(|| err(SpecErrorKind::Semantic, number, col, format!("undeclared arrow `{name}`")))?;
                if rows_of[a].is_some() {
                    return Err(err(SpecErrorKind::Semantic, number, col, format!("second map for `{name}`")));
                }
                let body = words[2..].join(" ");
                let rows: Vec<Vec<String>> = if body.trim().is_empty() {
                    Vec::new()
                } else {
                    body.split(';').map(|r| r.split_whitespace().map(str::to_string).collect()).collect()
                };
                rows_of[a] = Some((number, rows));
            }
            other => return Err(err(SpecErrorKind::Syntax, number, col, format!("unknown key `{other}`"))),
        }
    }
    let dims = dims.ok_or_else(|| err(SpecErrorKind::Syntax, 1, 1, "missing `dims` line"))?;
    let mut maps = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[arrow.target], dims[arrow.source]);
        let mut m = Mat::zeros(f, r, c);
        if let Some((line, rows)) = &rows_of[a] {
            let expected_rows = if c == 0 { 0 } else { r };
            if rows.len() != expected_rows || rows.iter().any(|row| row.len() != c) {
                return Err(err(SpecErrorKind::Semantic, *line, 1, format!("map `{}` must be {r}x{c}", arrow.name)));
            }
            for (i, row) in rows.iter().enumerate() {
                for (j, w) in row.iter().enumerate() {
                    let (num, den) = match w.split_once('/') {
                        Some((n, d)) => (n.parse::<i64>().ok(), d.parse::<i64>().ok()),
                        None => (w.parse::<i64>().ok(), Some(1)),
                    };
                    let v = num
                        .zip(den)
                        .and_then(|(n, d)| f.from_ratio(n, d))
                        .ok_or_else(|| err(SpecErrorKind::Syntax, *line, 1, format!("bad entry `{w}`")))?;
                    m.set(i, j, v);
                }
            }
        }
        maps.push(m);
    }
    Representation::new(bq.clone(), dims, maps).map_err(|e| err(SpecErrorKind::Semantic, 1, 1, e.to_string()))
}

/// Canonical text of a module: every arrow gets a `map` line.
pub fn write_module(m: &Representation) -> String {
    let q = m.bound_quiver().quiver();
    let f = m.field();
    let mut out = String::new();
    let dims: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "dims {}", dims.join(" "));
    for (a, arrow) in q.arrows().iter().enumerate() {
        let mat = m.map(a);
        let rows: Vec<String> = if mat.cols() == 0 {
            Vec::new()
        } else {
            (0..mat.rows()).map(|i| mat.row(i).iter().map(|x| f.display(*x).to_string()).collect::<Vec<_>>().join(" ")).collect()
        };
        let body = rows.join(" ; ");
        if body.is_empty() {
            let _ = writeln!(out, "map {}", arrow.name);
        } else {
            let _ = writeln!(out, "map {} {body}", arrow.name);
        }
    }
    out
}
