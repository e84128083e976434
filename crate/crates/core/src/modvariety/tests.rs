use super::*;
use crate::exactlin::Field;
use crate::quiver::{named, Quiver, Relation};

fn f() -> Field {
    Field::Prime(101)
}

fn hereditary(q: Quiver, name: &str) -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::hereditary(name, f(), q))
}

fn dual_numbers() -> Arc<BoundQuiver> {
    let q = Quiver::from_names(&["o"], &[("x", "o", "o")]).unwrap();
    let r = Relation::from_words(&q, f(), &[(1, "x*x")]).unwrap();
    Arc::new(BoundQuiver::new("dual", f(), q, vec![r], Some(2)).unwrap())
}

fn three_loops_rad2() -> Arc<BoundQuiver> {
    let q = Quiver::from_names(&["o"], &[("x", "o", "o"), ("y", "o", "o"), ("z", "o", "o")]).unwrap();
    let mut rels = Vec::new();
    for a in ["x", "y", "z"] {
        for b in ["x", "y", "z"] {
            rels.push(Relation::from_words(&q, f(), &[(1, &alloc::format!("{a}*{b}"))]).unwrap());
        }
    }
    Arc::new(BoundQuiver::new("L3", f(), q, rels, Some(2)).unwrap())
}

fn point() -> Arc<BoundQuiver> {
    hereditary(Quiver::from_names(&["o"], &[]).unwrap(), "k")
}

/// Tangent dimension from symmetric differences: for relations of degree at
/// most two, `J(δ) = (r(p + δ) - r(p - δ)) / 2` exactly.
fn tangent_oracle(p: &Representation) -> usize {
    let bq = p.bound_quiver();
    let fld = p.field();
    let half = fld.inv(fld.from_i64(2)).unwrap();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for (a, m) in p.maps().iter().enumerate() {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let shifted = |sign: i64| {
                    let mut maps = p.maps().to_vec();
                    let v = fld.add(maps[a].get(i, j), fld.from_i64(sign));
                    maps[a].set(i, j, v);
                    Representation::with_shapes(bq.clone(), p.dims().to_vec(), maps).unwrap()
                };
                let (plus, minus) = (shifted(1), shifted(-1));
                let mut col = Vec::new();
                for r in bq.relations() {
                    let d = plus.eval_relation(r).sub(&minus.eval_relation(r)).scale(half);
                    col.extend_from_slice(d.data());
                }
                columns.push(col);
            }
        }
    }
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    columns.len() - Mat::from_columns(fld, rows, &columns).rank()
}

#[test]
fn tangent_examples() {
    let k3 = Arc::new(named::k3(f()));
    let m = Representation::random_hereditary(k3, vec![1, 1], &mut rng_from_seed(1));
    assert_eq!(tangent_dimension(&m), 3);
    for n in 1..4 {
        let zero = Representation::constant_zero(dual_numbers(), vec![n]);
        assert_eq!(tangent_dimension(&zero), n * n);
    }
    assert_eq!(tangent_dimension(&Representation::zero(dual_numbers())), 0);
    // x = E_12 inside M_3: four independent linear conditions.
    let x = Mat::from_i64_rows(f(), &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let p = Representation::new(dual_numbers(), vec![3], vec![x]).unwrap();
    assert_eq!(tangent_dimension(&p), 5);
}

#[test]
fn tangent_matches_difference_oracle() {
    let bq = three_loops_rad2();
    for s in 0..12 {
        let n = 1 + (s % 4) as usize;
        let mut rng = rng_from_seed(derive_seed(40, s));
        let p = sample_point(&bq, &[n], &mut rng, DEFAULT_SAMPLE_BUDGET).unwrap();
        assert_eq!(tangent_dimension(&p), tangent_oracle(&p));
        let mut rng = rng_from_seed(derive_seed(41, s));
        let p = sample_point(&dual_numbers(), &[n], &mut rng, DEFAULT_SAMPLE_BUDGET).unwrap();
        assert_eq!(tangent_dimension(&p), tangent_oracle(&p));
    }
}

#[test]
fn orbit_examples() {
    let simple = Representation::simple(point(), 0);
    assert_eq!(orbit_dimension(&simple), 0);
    let k3 = Arc::new(named::k3(f()));
    let one = Mat::from_i64_rows(f(), &[&[1]]);
    let m = Representation::new(
        k3,
        vec![1, 1],
        vec![one.clone(), one.scale(f().from_i64(2)), one.scale(f().from_i64(3))],
    )
    .unwrap();
    assert_eq!(orbit_dimension_in_stratum(&m), 1);
    assert_eq!(orbit_dimension(&m), 3);
    let ss = Representation::direct_sum(&[&simple, &simple]).unwrap();
    assert_eq!(orbit_dimension(&ss), 0);
    assert_eq!(hom_space(&ss, &ss).unwrap().dim(), 4);
}

#[test]
fn orbit_plus_end_is_n_squared() {
    let k2 = hereditary(named::kronecker(2), "K2");
    for s in 0..10 {
        let mut rng = rng_from_seed(s);
        let dims = vec![(s % 3) as usize, (s % 2 + 1) as usize];
        let p = sample_point(&k2, &dims, &mut rng, 1).unwrap();
        let n = p.total_dim();
        assert_eq!(orbit_dimension(&p) + hom_space(&p, &p).unwrap().dim(), n * n);
    }
}

#[test]
fn sampled_points_satisfy_relations() {
    let bq = three_loops_rad2();
    let mut rng = rng_from_seed(3);
    let mut nonzero = 0;
    for n in 1..5 {
        for _ in 0..5 {
            let p = sample_point(&bq, &[n], &mut rng, DEFAULT_SAMPLE_BUDGET).unwrap();
            assert!(p.check_relations().iter().all(|&z| z));
            nonzero += usize::from(p.maps().iter().any(|m| !m.is_zero()));
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn parameter_estimate_examples() {
    for n in 1..=4 {
        assert_eq!(parameter_estimate(&point(), n, 3, 0).aggregate, Some(0));
    }
    let k2 = hereditary(named::kronecker(2), "K2");
    let rep = parameter_estimate(&k2, 2, 4, 7);
    let r11 = rep.records.iter().find(|r| r.dims == [1, 1]).unwrap();
    assert_eq!(r11.estimate, Some(1));
    assert_eq!(rep.basis, LocalBound::Exact);

    let k3 = Arc::new(named::k3(f()));
    let rep = parameter_estimate(&k3, 2, 4, 7);
    let r11 = rep.records.iter().find(|r| r.dims == [1, 1]).unwrap();
    assert_eq!(r11.estimate, Some(2));
    assert!(r11.points.iter().all(|p| p.tangent == 3));
}

#[test]
fn hereditary_local_dimension_is_closed_form() {
    let k3 = Arc::new(named::k3(f()));
    let rep = parameter_estimate(&k3, 3, 2, 9);
    for r in &rep.records {
        for p in &r.points {
            assert_eq!(p.tangent, 3 * r.dims[0] * r.dims[1]);
        }
    }
}

#[test]
fn probes() {
    let k2 = hereditary(named::kronecker(2), "K2");
    assert!(stratum_probe(&k2, 3, 4, 1).iter().all(|l| l.verdict == ParamVerdict::AtMostN));
    let lines = stratum_probe(&dual_numbers(), 3, 4, 1);
    assert!(lines.iter().all(|l| l.verdict == ParamVerdict::AtMostN), "{lines:?}");
    assert!(lines.iter().all(|l| l.report.basis == LocalBound::UpperBound));
    let k3 = Arc::new(named::k3(f()));
    let lines = stratum_probe(&k3, 4, 3, 1);
    assert_eq!(lines.iter().position(|l| l.verdict == ParamVerdict::ExceedsN), Some(3));
}

#[test]
fn monotone_and_reproducible() {
    let k3 = Arc::new(named::k3(f()));
    let small = parameter_estimate(&k3, 3, 2, 5);
    let large = parameter_estimate(&k3, 3, 5, 5);
    for (a, b) in small.records.iter().zip(&large.records) {
        assert_eq!(a.points[..], b.points[..a.points.len()]);
        assert!(a.estimate <= b.estimate);
    }
    assert_eq!(parameter_estimate(&dual_numbers(), 3, 4, 2), parameter_estimate(&dual_numbers(), 3, 4, 2));
}

#[test]
fn dimension_vector_enumeration() {
    assert_eq!(dimension_vectors(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(dimension_vectors(3, 4).len(), 15);
    assert_eq!(dimension_vectors(1, 0), vec![vec![0]]);
}
