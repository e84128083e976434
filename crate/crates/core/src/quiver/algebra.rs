use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{BoundQuiver, Path, Quiver};
use crate::error::QuiverError;
use crate::exactlin::{Field, Mat, Scalar};

/// Sparse coordinates in an algebra basis.
pub type Sparse = Vec<(usize, Scalar)>;

/// A basis of `kQ/I` by residues of paths, with its structure constants.
///
/// Basis paths are the non-leading paths of each `(source, target)` stratum
/// after reducing the relation span with longest paths first, so vertices and
/// arrows are always basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    field: Field,
    quiver: Quiver,
    nilbound: usize,
    basis: Vec<Path>,
    normal: BTreeMap<Path, Sparse>,
    products: Vec<Sparse>,
}

/// Build the path-basis multiplication table of `bq`.
///
/// Every path of length `L` must lie in `I`; the first survivor is reported
/// otherwise. For relations that are not length-homogeneous the test runs
/// modulo paths longer than `L`, which is exact as soon as `I` contains some
/// power of the arrow ideal.
pub fn build_algebra_table(bq: &BoundQuiver) -> Result<AlgebraTable, QuiverError> {
    let field = bq.field();
    let q = bq.quiver();
    let n = q.vertex_count();
    let l = bq.nilbound();

    let mut by_stratum: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    let mut from: Vec<Vec<Path>> = Vec::with_capacity(n);
    for v in 0..n {
        let paths = q.paths_from(v, l);
        for p in &paths {
            by_stratum.entry((p.source, p.target)).or_default().push(p.clone());
        }
        from.push(paths);
    }
    let mut into: Vec<Vec<Path>> = vec![Vec::new(); n];
    for paths in &from {
        for p in paths {
            into[p.target].push(p.clone());
        }
    }

    // Ideal generators u*rho*w, truncated above length L.
    let mut gens: BTreeMap<(usize, usize), Vec<BTreeMap<Path, Scalar>>> = BTreeMap::new();
    for rho in bq.relations() {
        let m = rho.min_len();
        if m > l {
            continue;
        }
        for w in &into[rho.source()] {
            if w.len() + m > l {
                continue;
            }
            for u in &from[rho.target()] {
                if w.len() + m + u.len() > l {
                    continue;
                }
                let mut elt: BTreeMap<Path, Scalar> = BTreeMap::new();
                for (c, p) in rho.terms() {
                    if w.len() + p.len() + u.len() > l {
                        continue;
                    }
                    let full = w.compose_before(p).and_then(|x| x.compose_before(u)).expect("composable by construction");
                    let slot = elt.entry(full).or_insert(field.zero());
                    *slot = field.add(*slot, *c);
                }
                elt.retain(|_, c| !field.is_zero(*c));
                if !elt.is_empty() {
                    gens.entry((w.source, u.target)).or_default().push(elt);
                }
            }
        }
    }

    let mut basis: Vec<Path> = Vec::new();
    let mut normal: BTreeMap<Path, Sparse> = BTreeMap::new();
    let mut pending: Vec<(Path, Vec<(Path, Scalar)>)> = Vec::new();
    for ((s, t), mut paths) in by_stratum {
        // Longest first, so leading terms are long paths.
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let col: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = gens.get(&(s, t)).map_or(&[][..], |g| &g[..]);
        let mut m = Mat::zeros(field, rows.len(), paths.len());
        for (r, g) in rows.iter().enumerate() {
            for (p, c) in g {
                m.set(r, col[p], *c);
            }
        }
        let pivots = m.rref_in_place();
        let pivot_row: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        for (ci, p) in paths.iter().enumerate() {
            if p.len() == l {
                if !pivot_row.contains_key(&ci) {
                    return Err(QuiverError::NotAdmissible { path: format!("{}", p.display(q)), bound: l });
                }
                continue;
            }
            match pivot_row.get(&ci) {
                None => {
                    normal.insert(p.clone(), vec![(basis.len(), field.one())]);
                    basis.push(p.clone());
                }
                Some(&r) => {
                    let terms = paths
                        .iter()
                        .enumerate()
                        .filter(|(cj, x)| !pivot_row.contains_key(cj) && x.len() < l && !field.is_zero(m.get(r, *cj)))
                        .map(|(cj, x)| (x.clone(), field.neg(m.get(r, cj))))
                        .collect();
                    pending.push((p.clone(), terms));
                }
            }
        }
    }
    for (p, terms) in pending {
        let mut nf: Sparse = terms.iter().map(|(x, c)| (normal[x][0].0, *c)).collect();
        nf.sort_by_key(|e| e.0);
        normal.insert(p, nf);
    }

    let d = basis.len();
    let mut products = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            if let Some(p) = basis[j].compose_before(&basis[i]) {
                if p.len() < l {
                    products[i * d + j] = normal[&p].clone();
                }
            }
        }
    }
    Ok(AlgebraTable { field, quiver: q.clone(), nilbound: l, basis, normal, products })
}

impl AlgebraTable {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Structure constants of `b_i * b_j` (apply `b_j` first).
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.basis.len() + j]
    }

    /// Coordinates of the residue of any path; zero for paths of length >= L.
    pub fn path_coords(&self, p: &Path) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dimension()];
        if p.len() < self.nilbound {
            for &(k, c) in &self.normal[p] {
                out[k] = c;
            }
        }
        out
    }

    pub fn index_of_path(&self, p: &Path) -> Option<usize> {
        self.basis.iter().position(|b| b == p)
    }

    pub fn vertex_index(&self, v: usize) -> usize {
        self.index_of_path(&Path::trivial(v)).expect("vertices are basis elements")
    }

    pub fn arrow_index(&self, a: usize) -> usize {
        self.index_of_path(&Path::arrow(&self.quiver, a)).expect("arrows are basis elements")
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dimension()];
        for v in 0..self.quiver.vertex_count() {
            out[self.vertex_index(v)] = self.field.one();
        }
        out
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dimension()];
        for (i, &x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for &(k, c) in self.product(i, j) {
                    out[k] = f.add(out[k], f.mul(xy, c));
                }
            }
        }
        out
    }

    /// Exhaustive check of `(b_i b_j) b_k = b_i (b_j b_k)` over all basis triples.
    pub fn is_associative(&self) -> bool {
        let f = self.field;
        let d = self.dimension();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut left = vec![f.zero(); d];
                    for &(m, c) in self.product(i, j) {
                        for &(r, e) in self.product(m, k) {
                            left[r] = f.add(left[r], f.mul(c, e));
                        }
                    }
                    let mut right = vec![f.zero(); d];
                    for &(m, c) in self.product(j, k) {
                        for &(r, e) in self.product(i, m) {
                            right[r] = f.add(right[r], f.mul(c, e));
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the vertex idempotents sum to a two-sided unit.
    pub fn unit_is_identity(&self) -> bool {
        let u = self.unit();
        (0..self.dimension()).all(|i| {
            let mut e = vec![self.field.zero(); self.dimension()];
            e[i] = self.field.one();
            self.multiply(&u, &e) == e && self.multiply(&e, &u) == e
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{named, Relation};
    use alloc::string::String;

    fn f() -> Field {
        Field::Prime(101)
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::from_names(&["o"], &[]).unwrap();
        let t = build_algebra_table(&BoundQuiver::hereditary("pt", f(), q)).unwrap();
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.basis()[0], Path::trivial(0));
    }

    #[test]
    fn dual_numbers() {
        let q = Quiver::from_names(&["o"], &[("x", "o", "o")]).unwrap();
        let r = Relation::from_words(&q, f(), &[(1, "x*x")]).unwrap();
        let bq = BoundQuiver::new("dual", f(), q, vec![r], Some(2)).unwrap();
        let t = build_algebra_table(&bq).unwrap();
        assert_eq!(t.dimension(), 2);
        assert!(t.is_associative());
    }

    #[test]
    fn a2_path_algebra() {
        let bq = BoundQuiver::new("A2", f(), named::a2(), Vec::new(), Some(2)).unwrap();
        let t = build_algebra_table(&bq).unwrap();
        assert_eq!(t.dimension(), 3);
        assert!(t.unit_is_identity());
    }

    #[test]
    fn free_loops_are_not_admissible() {
        let err = build_algebra_table(&named::free_algebra(f())).unwrap_err();
        match err {
            QuiverError::NotAdmissible { path, .. } => assert!(!path.is_empty()),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn commutative_square_relation() {
        // x*y = y*x and x*x = y*y = 0 on one vertex: k[x,y]/(x^2,y^2), dim 4.
        let q = named::two_loops();
        let rels = vec![
            Relation::from_words(&q, f(), &[(1, "x*y"), (-1, "y*x")]).unwrap(),
            Relation::from_words(&q, f(), &[(1, "x*x")]).unwrap(),
            Relation::from_words(&q, f(), &[(1, "y*y")]).unwrap(),
        ];
        let bq = BoundQuiver::new("kxy", f(), q.clone(), rels, Some(3)).unwrap();
        let t = build_algebra_table(&bq).unwrap();
        assert_eq!(t.dimension(), 4);
        assert!(t.is_associative());
        assert!(t.unit_is_identity());
        let xy = t.path_coords(&Path::parse(&q, "x*y").unwrap());
        let yx = t.path_coords(&Path::parse(&q, "y*x").unwrap());
        assert_eq!(xy, yx);
        let names: Vec<String> = t.basis().iter().map(|p| format!("{}", p.display(&q))).collect();
        assert!(names.contains(&String::from("x")));
    }

    #[test]
    fn kronecker_dimension() {
        let t = build_algebra_table(&named::k3(f())).unwrap();
        assert_eq!(t.dimension(), 5);
        assert!(t.is_associative());
    }
}
