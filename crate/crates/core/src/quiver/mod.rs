//! Quivers, admissible relations and the finite-dimensional algebras they
//! present.
//!
//! A path stores its arrows in the order they are applied; its textual form
//! lists them outermost first, so `b*a` means "apply `a`, then `b`".

mod algebra;
mod tits;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use algebra::{build_algebra_table, AlgebraTable};
pub use tits::{
    classify_hereditary, definiteness, is_minimal_wild_hereditary, symmetrized_tits_matrix, tits_form, underlying_diagram,
    Definiteness, RepType, UnderlyingDiagram,
};

use crate::error::QuiverError;
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, QuiverError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(QuiverError::DanglingArrow(a.name.clone()));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Build from vertex names and `(arrow, source, target)` name triples.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        let vs: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let find = |n: &str| vs.iter().position(|v| v == n).ok_or_else(|| QuiverError::UnknownVertex(n.to_string()));
        let mut out = Vec::new();
        for &(name, s, t) in arrows {
            out.push(Arrow { name: name.to_string(), source: find(s)?, target: find(t)? });
        }
        Quiver::new(vs, out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v)
    }

    /// Connected components of the underlying graph, each as sorted vertex indices.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// Full subquiver on `keep` (indices), with every arrow between kept vertices.
    pub fn full_subquiver(&self, keep: &[usize]) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .filter(|a| keep.contains(&a.source) && keep.contains(&a.target))
            .map(|a| Arrow {
                name: a.name.clone(),
                source: keep.iter().position(|&v| v == a.source).unwrap(),
                target: keep.iter().position(|&v| v == a.target).unwrap(),
            })
            .collect();
        Quiver { vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(), arrows }
    }

    pub fn components(&self) -> Vec<Quiver> {
        self.component_vertex_sets().iter().map(|c| self.full_subquiver(c)).collect()
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source }).collect(),
        }
    }

    /// A topological order of the vertices, or `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::new();
        while let Some(v) = ready.pop() {
            order.push(v);
            let mut next = Vec::new();
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    next.push(a.target);
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            next.dedup();
            ready.extend(next);
            ready.sort_unstable_by(|a, b| b.cmp(a));
        }
        (order.len() == n).then_some(order)
    }

    /// Length of a longest path, when there are no oriented cycles.
    pub fn longest_path(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut depth = vec![0usize; self.vertex_count()];
        for &v in &order {
            for (_, a) in self.arrows_from(v) {
                depth[a.target] = depth[a.target].max(depth[v] + 1);
            }
        }
        Some(depth.into_iter().max().unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// All paths starting at `v` of length at most `max_len`, shortest first.
    pub fn paths_from(&self, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        out
    }
}

/// A path in a quiver; `arrows` is in application order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let ar = &q.arrows[a];
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// From arrows in application order; checks composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Path, QuiverError> {
        let first = *arrows.first().ok_or(QuiverError::EmptyPath)?;
        let mut p = Path::arrow(q, first);
        for &a in &arrows[1..] {
            p = p.then(q, a)?;
        }
        Ok(p)
    }

    /// Extend by applying `a` after this path.
    pub fn then(&self, q: &Quiver, a: usize) -> Result<Path, QuiverError> {
        let ar = &q.arrows[a];
        if ar.source != self.target {
            return Err(QuiverError::NotComposable(ar.name.clone()));
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Ok(Path { source: self.source, target: ar.target, arrows })
    }

    /// `outer ∘ self`: apply `self`, then `outer`.
    pub fn compose_before(&self, outer: &Path) -> Option<Path> {
        if self.target != outer.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&outer.arrows);
        Some(Path { source: self.source, target: outer.target, arrows })
    }

    /// Parse `an*...*a1` (outermost first) or `e_<vertex>`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Path, QuiverError> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            if let Some(i) = q.vertex_index(v) {
                return Ok(Path::trivial(i));
            }
        }
        let mut arrows = Vec::new();
        for name in text.split('*').rev() {
            let name = name.trim();
            arrows.push(q.arrow_index(name).ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))?);
        }
        Path::from_arrows(q, &arrows)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.arrows.is_empty() {
            return write!(f, "e_{}", self.quiver.vertices[self.path.source]);
        }
        for (i, &a) in self.path.arrows.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.quiver.arrows[a].name)?;
        }
        Ok(())
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Normalises (merges equal paths, drops zero terms) and validates.
    pub fn new(field: Field, terms: Vec<(Scalar, Path)>) -> Result<Relation, QuiverError> {
        let mut merged: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in terms {
            if let Some(slot) = merged.iter_mut().find(|(_, q)| *q == p) {
                slot.0 = field.add(slot.0, c);
            } else {
                merged.push((c, p));
            }
        }
        merged.retain(|(c, _)| !field.is_zero(*c));
        let Some((_, first)) = merged.first() else {
            return Err(QuiverError::EmptyRelation);
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &merged {
            if p.len() < 2 {
                return Err(QuiverError::ShortRelationTerm);
            }
            if p.source != s || p.target != t {
                return Err(QuiverError::NonParallelRelation);
            }
        }
        Ok(Relation { terms: merged })
    }

    /// Parse terms given as `(coefficient, "an*...*a1")`.
    pub fn from_words(q: &Quiver, field: Field, terms: &[(i64, &str)]) -> Result<Relation, QuiverError> {
        let mut out = Vec::new();
        for &(c, w) in terms {
            out.push((field.from_i64(c), Path::parse(q, w)?));
        }
        Relation::new(field, out)
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.len() == self.terms[0].1.len())
    }

    pub fn display<'a>(&'a self, q: &'a Quiver, field: Field) -> RelationDisplay<'a> {
        RelationDisplay { rel: self, quiver: q, field }
    }
}

pub struct RelationDisplay<'a> {
    rel: &'a Relation,
    quiver: &'a Quiver,
    field: Field,
}

impl fmt::Display for RelationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, p)) in self.rel.terms.iter().enumerate() {
            let negative = c.numer() < 0;
            let shown = if negative { self.field.neg(*c) } else { *c };
            match (i, negative) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{}*{}", self.field.display(shown), p.display(self.quiver))?;
        }
        Ok(())
    }
}

/// A quiver with relations `(Q, I)` over a fixed field, plus the claimed
/// nilpotency bound `L` (every path of length `L` lies in `I`).
///
/// The bound is checked when the algebra table is built, not here; a bound
/// quiver without relations also stands in for infinite-dimensional path
/// algebras such as the free algebra on two loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    name: String,
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    nilbound: usize,
}

impl BoundQuiver {
    /// `nilbound` defaults to `|Q_1| + 2`.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        nilbound: Option<usize>,
    ) -> Result<BoundQuiver, QuiverError> {
        for r in &relations {
            for (_, p) in r.terms() {
                if p.source >= quiver.vertex_count()
                    || p.target >= quiver.vertex_count()
                    || p.arrows.iter().any(|&a| a >= quiver.arrow_count())
                {
                    return Err(QuiverError::ForeignPath);
                }
                for w in p.arrows.windows(2) {
                    if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                        return Err(QuiverError::NotComposable(quiver.arrows[w[1]].name.clone()));
                    }
                }
            }
        }
        let nilbound = nilbound.unwrap_or(quiver.arrow_count() + 2);
        if nilbound == 0 {
            return Err(QuiverError::ZeroNilbound);
        }
        Ok(BoundQuiver { name: name.into(), field, quiver, relations, nilbound })
    }

    /// Path algebra without relations.
    pub fn hereditary(name: impl Into<String>, field: Field, quiver: Quiver) -> BoundQuiver {
        let nilbound = quiver.arrow_count() + 2;
        BoundQuiver { name: name.into(), field, quiver, relations: Vec::new(), nilbound }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> BoundQuiver {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nilbound(&self) -> usize {
        self.nilbound
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// FNV-1a hash of the structure (field, quiver, relations, bound); the
    /// display name is not hashed, and neither is a bound longer than every
    /// path, which cuts nothing off.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_str(&format!("{}", self.field));
        for v in &self.quiver.vertices {
            h.write_str("v");
            h.write_str(v);
        }
        for a in &self.quiver.arrows {
            h.write_str(&format!("a{}:{}>{}", a.name, a.source, a.target));
        }
        for r in &self.relations {
            h.write_str(&format!("r{}", r.display(&self.quiver, self.field)));
        }
        if self.quiver.longest_path().map_or(true, |l| l >= self.nilbound) {
            h.write_str(&format!("L{}", self.nilbound));
        }
        h.finish()
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Fnv {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write_str(&mut self, s: &str) {
        for b in s.bytes().chain(core::iter::once(0xff)) {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

/// Cut a factor quiver out of `bq`: keep the named vertices and arrows and
/// substitute zero for every excluded arrow in every relation.
///
/// Every kept arrow must join two kept vertices. Relations that vanish are
/// dropped; the nilpotency bound is inherited.
pub fn factor_quiver(bq: &BoundQuiver, keep_vertices: &[&str], keep_arrows: &[&str]) -> Result<BoundQuiver, QuiverError> {
    let q = bq.quiver();
    let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    for (i, v) in q.vertices.iter().enumerate() {
        if keep_vertices.contains(&v.as_str()) {
            vmap.insert(i, vertices.len());
            vertices.push(v.clone());
        }
    }
    for &v in keep_vertices {
        if q.vertex_index(v).is_none() {
            return Err(QuiverError::UnknownVertex(v.to_string()));
        }
    }
    let mut amap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arrows = Vec::new();
    for &name in keep_arrows {
        if q.arrow_index(name).is_none() {
            return Err(QuiverError::UnknownArrow(name.to_string()));
        }
    }
    for (i, a) in q.arrows.iter().enumerate() {
        if !keep_arrows.contains(&a.name.as_str()) {
            continue;
        }
        let (Some(&s), Some(&t)) = (vmap.get(&a.source), vmap.get(&a.target)) else {
            return Err(QuiverError::ArrowLeavesFactor(a.name.clone()));
        };
        amap.insert(i, arrows.len());
        arrows.push(Arrow { name: a.name.clone(), source: s, target: t });
    }
    let quiver = Quiver { vertices, arrows };
    let mut relations = Vec::new();
    for r in bq.relations() {
        let terms: Vec<(Scalar, Path)> = r
            .terms()
            .iter()
            .filter(|(_, p)| p.arrows.iter().all(|a| amap.contains_key(a)))
            .map(|(c, p)| {
                (*c, Path { source: vmap[&p.source], target: vmap[&p.target], arrows: p.arrows.iter().map(|a| amap[a]).collect() })
            })
            .collect();
        if terms.is_empty() {
            continue;
        }
        relations.push(Relation::new(bq.field(), terms)?);
    }
    BoundQuiver::new(bq.name(), bq.field(), quiver, relations, Some(bq.nilbound()))
}

/// Standard small quivers used throughout tests and built-in witnesses.
pub mod named {
    use super::*;

    /// `1 -a-> 2`.
    pub fn a2() -> Quiver {
        Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    /// The Kronecker quiver with `n` parallel arrows from vertex 1 to vertex 2.
    pub fn kronecker(n: usize) -> Quiver {
        let names = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
        let arrows: Vec<(String, &str, &str)> = (0..n)
            .map(|i| (names.get(i).map_or_else(|| format!("a{i}"), |s| s.to_string()), "1", "2"))
            .collect();
        let refs: Vec<(&str, &str, &str)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
        Quiver::from_names(&["1", "2"], &refs).unwrap()
    }

    /// One vertex with loops `x` and `y`: the free algebra `k<x,y>`.
    pub fn two_loops() -> Quiver {
        Quiver::from_names(&["o"], &[("x", "o", "o"), ("y", "o", "o")]).unwrap()
    }

    /// The bound quiver whose representations are `k<x,y>`-modules.
    pub fn free_algebra(field: Field) -> BoundQuiver {
        BoundQuiver::hereditary("k<x,y>", field, two_loops())
    }

    /// `kK_3`.
    pub fn k3(field: Field) -> BoundQuiver {
        BoundQuiver::hereditary("K3", field, kronecker(3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::Prime(101)
    }

    #[test]
    fn quiver_validation() {
        assert!(matches!(Quiver::from_names(&["1"], &[("a", "1", "2")]), Err(QuiverError::UnknownVertex(_))));
        assert!(matches!(
            Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]),
            Err(QuiverError::DuplicateArrow(_))
        ));
    }

    #[test]
    fn path_parse_and_display() {
        let q = Quiver::from_names(&["0", "1", "2"], &[("a", "0", "1"), ("b", "1", "2")]).unwrap();
        let p = Path::parse(&q, "b*a").unwrap();
        assert_eq!(p.arrows, vec![0, 1]);
        assert_eq!(format!("{}", p.display(&q)), "b*a");
        assert!(Path::parse(&q, "a*b").is_err());
        assert_eq!(Path::parse(&q, "e_1").unwrap(), Path::trivial(1));
    }

    #[test]
    fn relation_validation() {
        let q = Quiver::from_names(&["o"], &[("x", "o", "o"), ("y", "o", "o")]).unwrap();
        assert!(matches!(Relation::from_words(&q, f(), &[(1, "x")]), Err(QuiverError::ShortRelationTerm)));
        assert!(matches!(Relation::from_words(&q, f(), &[(1, "x*x"), (-1, "x*x")]), Err(QuiverError::EmptyRelation)));
        let r = Relation::from_words(&q, f(), &[(1, "x*y"), (2, "x*y"), (1, "y*y")]).unwrap();
        assert_eq!(r.terms().len(), 2);
    }

    fn line_with_relation() -> BoundQuiver {
        let q = Quiver::from_names(&["0", "1", "2"], &[("a", "0", "1"), ("b", "1", "2")]).unwrap();
        let r = Relation::from_words(&q, f(), &[(1, "b*a")]).unwrap();
        BoundQuiver::new("line", f(), q, vec![r], None).unwrap()
    }

    #[test]
    fn factor_quiver_identity() {
        let bq = line_with_relation();
        assert_eq!(factor_quiver(&bq, &["0", "1", "2"], &["a", "b"]).unwrap(), bq);
    }

    #[test]
    fn factor_quiver_drops_vanishing_relation() {
        let bq = line_with_relation();
        let fq = factor_quiver(&bq, &["0", "1"], &["a"]).unwrap();
        assert_eq!(fq.quiver().vertex_count(), 2);
        assert_eq!(fq.quiver().arrow_count(), 1);
        assert!(fq.relations().is_empty());
    }

    #[test]
    fn hereditary_factor_of_hereditary_quiver() {
        let big = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2"), ("d", "2", "3")]).unwrap();
        let big = BoundQuiver::hereditary("big", f(), big);
        let k3 = factor_quiver(&big, &["1", "2"], &["a", "b", "c"]).unwrap();
        assert_eq!(k3.nilbound(), 6);
        let plain = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")]).unwrap();
        assert_eq!(k3.fingerprint(), BoundQuiver::hereditary("K3", f(), plain.clone()).fingerprint());
        let cut = BoundQuiver::new("K3", f(), plain, Vec::new(), Some(1)).unwrap();
        assert_ne!(cut.fingerprint(), k3.fingerprint());
        assert_eq!(big.quiver().longest_path(), Some(2));
        assert_eq!(named::two_loops().longest_path(), None);
    }

    #[test]
    fn factor_quiver_rejects_arrow_to_removed_vertex() {
        let bq = line_with_relation();
        assert!(matches!(factor_quiver(&bq, &["0", "1"], &["a", "b"]), Err(QuiverError::ArrowLeavesFactor(_))));
    }

    #[test]
    fn factor_quiver_single_vertex_keeps_loops() {
        let q = Quiver::from_names(&["o", "p"], &[("x", "o", "o"), ("y", "o", "o"), ("c", "o", "p")]).unwrap();
        let rels = vec![
            Relation::from_words(&q, f(), &[(1, "x*x"), (-1, "y*y")]).unwrap(),
            Relation::from_words(&q, f(), &[(1, "c*x")]).unwrap(),
        ];
        let bq = BoundQuiver::new("t", f(), q, rels, Some(4)).unwrap();
        let fq = factor_quiver(&bq, &["o"], &["x"]).unwrap();
        assert_eq!(fq.quiver().arrow_count(), 1);
        assert_eq!(fq.relations().len(), 1);
        assert_eq!(fq.relations()[0].terms().len(), 1);
    }

    #[test]
    fn topological_order_and_cycles() {
        assert!(named::kronecker(3).is_acyclic());
        assert!(!named::two_loops().is_acyclic());
    }

    #[test]
    fn fingerprint_ignores_name() {
        let a = named::k3(f());
        let b = named::k3(f()).with_name("other");
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), BoundQuiver::hereditary("K2", f(), named::kronecker(2)).fingerprint());
    }
}
