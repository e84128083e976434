use std::sync::Arc;

use proptest::prelude::*;
use wildrank_core::covering::{build_window, CoveringSpec, GradingBox};
use wildrank_core::exactlin::{rng_from_seed, Field, Mat, RowEchelon, SeededRng};
use wildrank_core::quiver::{named, tits_form, symmetrized_tits_matrix, BoundQuiver, Path, Quiver, Relation};
use wildrank_core::rep::{are_isomorphic, hom_space, is_homomorphism, IsoVerdict, Representation};
use wildrank_core::tilting::{cartan_coxeter, euler_form};
use wildrank_core::wildness::{recompute_bound, Step};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(101)), Just(Field::Prime(7)), Just(Field::Prime(2_147_483_647)), Just(Field::Rationals)]
}

fn random_mat(f: Field, rows: usize, cols: usize, rng: &mut SeededRng, sparse: bool) -> Mat {
    Mat::from_fn(f, rows, cols, |i, j| if sparse && (i * 7 + j * 3) % 4 == 0 { f.zero() } else { f.random(rng) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(f in field_strategy(), rows in 0usize..7, cols in 1usize..7, seed: u64, sparse: bool) {
        let mut rng = rng_from_seed(seed);
        let m = random_mat(f, rows, cols, &mut rng, sparse);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| f.is_zero(x)));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn echelon_agrees_with_rank(f in field_strategy(), rows in 0usize..9, cols in 1usize..7, seed: u64, sparse: bool) {
        let mut rng = rng_from_seed(seed);
        let m = random_mat(f, rows, cols, &mut rng, sparse);
        let mut e = RowEchelon::new(f, cols);
        for i in 0..rows {
            e.insert(m.row(i));
        }
        prop_assert_eq!(e.rank(), m.rank());
        let k = e.kernel_basis();
        prop_assert_eq!(k.len(), cols - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|&x| f.is_zero(x)));
        }
    }

    #[test]
    fn products_associate(f in field_strategy(), a in 1usize..5, b in 1usize..5, c in 1usize..5, d in 1usize..5, seed: u64) {
        let mut rng = rng_from_seed(seed);
        let x = random_mat(f, a, b, &mut rng, false);
        let y = random_mat(f, b, c, &mut rng, false);
        let z = random_mat(f, c, d, &mut rng, true);
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y).transpose(), y.transpose().mul(&x.transpose()));
    }

    #[test]
    fn inverses(f in field_strategy(), n in 1usize..6, seed: u64) {
        let mut rng = rng_from_seed(seed);
        let m = random_mat(f, n, n, &mut rng, false);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.mul(&inv), Mat::identity(f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn hom_basis_intertwines_and_is_additive(seed: u64, d1 in 0usize..3, d2 in 0usize..3, e1 in 0usize..3, e2 in 0usize..3) {
        let f = Field::Prime(101);
        let bq = Arc::new(named::k3(f));
        let mut rng = rng_from_seed(seed);
        let m = Representation::random_hereditary(bq.clone(), vec![d1, d2], &mut rng);
        let n = Representation::random_hereditary(bq, vec![e1, e2], &mut rng);
        let h = hom_space(&m, &n).unwrap();
        for g in &h.basis {
            prop_assert!(is_homomorphism(&m, &n, g));
        }
        let nn = Representation::direct_sum(&[&n, &n]).unwrap();
        prop_assert_eq!(hom_space(&m, &nn).unwrap().dim(), 2 * h.dim());
        let mm = Representation::direct_sum(&[&m, &m]).unwrap();
        prop_assert_eq!(hom_space(&mm, &n).unwrap().dim(), 2 * h.dim());
    }

    #[test]
    fn isomorphic_under_base_change(seed: u64, d1 in 1usize..3, d2 in 1usize..3) {
        let f = Field::Prime(101);
        let bq = Arc::new(named::k3(f));
        let mut rng = rng_from_seed(seed);
        let m = Representation::random_hereditary(bq, vec![d1, d2], &mut rng);
        let change: Vec<Mat> = [d1, d2]
            .iter()
            .map(|&d| loop {
                let p = random_mat(f, d, d, &mut rng, false);
                if p.inverse().is_some() {
                    break p;
                }
            })
            .collect();
        let n = m.transport(&change).unwrap();
        prop_assert!(matches!(are_isomorphic(&m, &n, 16, seed).unwrap(), IsoVerdict::Yes(_)));
    }

    #[test]
    fn tits_form_is_half_the_symmetrized_form(arrows in proptest::collection::vec((0usize..4, 0usize..4), 0..6), d in proptest::collection::vec(-3i64..4, 4)) {
        let names: Vec<String> = (0..arrows.len()).map(|i| format!("a{i}")).collect();
        let list: Vec<(&str, String, String)> =
            arrows.iter().zip(&names).map(|(&(s, t), n)| (n.as_str(), s.to_string(), t.to_string())).collect();
        let refs: Vec<(&str, &str, &str)> = list.iter().map(|(n, s, t)| (*n, s.as_str(), t.as_str())).collect();
        let q = Quiver::from_names(&["0", "1", "2", "3"], &refs).unwrap();
        let b = symmetrized_tits_matrix(&q);
        let f = Field::Rationals;
        let v: Vec<_> = d.iter().map(|&x| f.from_i64(x)).collect();
        let bv = b.mul_vec(&v);
        let twice = v.iter().zip(&bv).fold(f.zero(), |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
        prop_assert_eq!(twice, f.from_i64(2 * tits_form(&q, &d).unwrap()));
        if q.is_acyclic() {
            prop_assert_eq!(euler_form(&q, &d, &d), tits_form(&q, &d).unwrap());
        }
    }

    #[test]
    fn coxeter_round_trip(arrows in 1usize..4, d in proptest::collection::vec(-5i64..6, 2)) {
        let q = named::kronecker(arrows);
        let c = cartan_coxeter(&q).unwrap();
        prop_assert_eq!(c.tau(&c.tau_inverse(&d)), d.clone());
        prop_assert_eq!(euler_form(&q, &c.tau_inverse(&d), &c.tau_inverse(&d)), euler_form(&q, &d, &d));
    }

    #[test]
    fn window_size(lo in -2i64..2, len in 0i64..4, loops in 1usize..4) {
        let f = Field::Prime(101);
        let names = ["x", "y", "z"];
        let arrows: Vec<(&str, &str, &str)> = names[..loops].iter().map(|&n| (n, "o", "o")).collect();
        let q = Quiver::from_names(&["o"], &arrows).unwrap();
        let relations = names[..loops]
            .iter()
            .flat_map(|a| names[..loops].iter().map(move |b| format!("{a}*{b}")))
            .map(|w| Relation::from_words(&q, f, &[(1, w.as_str())]).unwrap())
            .collect();
        let bq = Arc::new(BoundQuiver::new("L", f, q, relations, Some(2)).unwrap());
        let cov = CoveringSpec::unit_weights(bq).unwrap();
        let w = build_window(&cov, &GradingBox::new(vec![(lo, lo + len)])).unwrap();
        prop_assert_eq!(w.vertex_count() as i64, len + 1);
        prop_assert_eq!(w.bound_quiver.quiver().arrow_count() as i64, len * loops as i64);
        prop_assert_eq!(w.bound_quiver.relations().is_empty(), len < 2);
    }

    #[test]
    fn bound_is_product_of_multipliers(ranks in proptest::collection::vec(1u64..6, 1..6)) {
        let steps: Vec<Step> = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| match i % 3 {
                0 => Step::ExplicitBimodule { label: "G".into(), rank: r },
                1 => Step::MoritaRule { d: r },
                _ => Step::FactorRule { ideal: "(e)".into() },
            })
            .collect();
        let want: u64 = steps.iter().map(Step::multiplier).product();
        prop_assert_eq!(recompute_bound(&steps), want);
    }

    #[test]
    fn paths_display_and_parse(word in proptest::collection::vec(0usize..3, 1..5)) {
        let q = named::two_loops();
        let arrows: Vec<usize> = word.iter().map(|&a| a % q.arrow_count()).collect();
        let p = Path::from_arrows(&q, &arrows).unwrap();
        let text = p.display(&q).to_string();
        prop_assert_eq!(Path::parse(&q, &text).unwrap(), p);
    }
}
