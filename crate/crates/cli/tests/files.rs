use std::path::PathBuf;

use proptest::prelude::*;
use wildrank_cli::certfile::{parse_certificate, recheck, write_certificate, CertError, CertificateFile};
use wildrank_cli::modfile::{parse_module, write_module};
use wildrank_cli::specfile::SpecErrorKind;
use wildrank_cli::{parse_quiver_spec, write_quiver_spec};
use wildrank_core::exactlin::{rng_from_seed, Field};
use wildrank_core::quiver::build_algebra_table;
use wildrank_core::rep::Representation;
use wildrank_core::wildness::{Step, Subject, TargetInfo, VerificationSummary, WitnessCertificate};

fn fixture_text(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

const FIXTURES: [&str; 8] = [
    "point.quiver",
    "a2.quiver",
    "k2.quiver",
    "k3.quiver",
    "three_loops.quiver",
    "dual_numbers.quiver",
    "two_point.quiver",
    "commutative_square.quiver",
];

#[test]
fn specs_round_trip() {
    for name in FIXTURES {
        let spec = parse_quiver_spec(&fixture_text(name)).unwrap();
        let text = spec.to_text();
        let again = parse_quiver_spec(&text).unwrap();
        assert_eq!(*again.bound_quiver, *spec.bound_quiver, "{name}");
        assert_eq!(again.covering, spec.covering, "{name}");
        assert_eq!(again.to_text(), text, "{name}");
        assert_eq!(write_quiver_spec(&again.bound_quiver, again.covering.as_ref()), text);
    }
}

#[test]
fn three_loop_spec_has_dimension_four() {
    let spec = parse_quiver_spec(&fixture_text("three_loops.quiver")).unwrap();
    assert_eq!(build_algebra_table(&spec.bound_quiver).unwrap().dimension(), 4);
}

#[test]
fn spec_errors_carry_positions() {
    let cases: [(&str, SpecErrorKind, usize); 7] = [
        ("quiver q\nfield Fp 101\nvertex 1\narrow a: 1 -> 2\n", SpecErrorKind::Semantic, 4),
        ("quiver q\nfield Fp 101\nvertex 1\nshape round\n", SpecErrorKind::Syntax, 4),
        ("quiver q\nfield Fp 4\nvertex 1\n", SpecErrorKind::Semantic, 2),
        ("quiver q\nfield Fp 101\nvertex 1\narrow a: 1 -> 1\nrelation 1*a*b\n", SpecErrorKind::Semantic, 5),
        ("quiver q\nfield Fp 101\nvertex 1\narrow a: 1 -> 1 weight 1\narrow b: 1 -> 1\n", SpecErrorKind::Semantic, 5),
        (
            "quiver q\nfield Fp 101\nvertex 1\narrow a: 1 -> 1 weight 1\narrow b: 1 -> 1 weight 0\nrelation 1*a + 1*b\n",
            SpecErrorKind::Semantic,
            6,
        ),
        ("quiver q\nfield Q\nvertex 1\nnilbound 2\nnilbound 3\n", SpecErrorKind::Syntax, 5),
    ];
    for (text, kind, line) in cases {
        let e = parse_quiver_spec(text).unwrap_err();
        assert_eq!((e.kind, e.line), (kind, line), "{text:?}: {e}");
        assert!(e.column >= 1);
    }
}

#[test]
fn modules_round_trip() {
    let spec = parse_quiver_spec(&fixture_text("k3.quiver")).unwrap();
    let mut rng = rng_from_seed(4);
    for d in [[0, 1], [1, 1], [2, 3]] {
        let m = Representation::random_hereditary(spec.bound_quiver.clone(), d.to_vec(), &mut rng);
        let text = write_module(&m);
        assert_eq!(parse_module(&spec.bound_quiver, &text).unwrap(), m);
    }
    let loops = parse_quiver_spec(&fixture_text("dual_numbers.quiver")).unwrap();
    assert!(parse_module(&loops.bound_quiver, "dims 1\nmap x 1\n").is_err());
    assert!(parse_module(&loops.bound_quiver, "dims 2\nmap x 0 1 ; 0 0\n").is_ok());
}

fn certificate(steps: Vec<Step>) -> CertificateFile {
    let mut bound = 1u64;
    for s in &steps {
        bound *= s.multiplier();
    }
    CertificateFile::new(WitnessCertificate {
        target: TargetInfo { name: "T".into(), fingerprint: 0xabc, dimension: Some(4) },
        subject: Subject::Algebra,
        bound,
        steps,
        verification: Some(VerificationSummary { samples: 3, max_dim: 2, passed: 9, failed: 0, inconclusive: 0, valid: true }),
        field: Field::Prime(101),
        seed: 17,
        symbolic_target: Some("10*b".into()),
    })
}

#[test]
fn certificate_round_trip_and_recheck() {
    let file = certificate(vec![
        Step::ExplicitBimodule { label: "G".into(), rank: 2 },
        Step::Compose { label: "F".into(), outer_rank: 7 },
        Step::MoritaRule { d: 3 },
        Step::CoveringRule { window: "W".into(), window_vertices: 2 },
    ]);
    let text = write_certificate(&file);
    let parsed = parse_certificate(&text).unwrap();
    assert_eq!(parsed, file);
    assert_eq!(write_certificate(&parsed), text);
    assert_eq!(recheck(&parsed), Ok(file.certificate.bound));

    let broken = parse_certificate(&text.replace("step.2.running = 14", "step.2.running = 15")).unwrap();
    assert!(matches!(recheck(&broken), Err(CertError::RunningMismatch { step: 2, .. })));
    assert!(matches!(parse_certificate(&text.replace("seed = 17", "seed = x")), Err(CertError::Parse { .. })));

    let late = certificate(vec![Step::FactorRule { ideal: "(a)".into() }, Step::ExplicitBimodule { label: "G".into(), rank: 2 }]);
    assert_eq!(recheck(&late), Err(CertError::BadStart));
}

fn step_strategy() -> impl Strategy<Value = Step> {
    prop_oneof![
        (1u64..5, "[A-Z][a-z]{0,3}").prop_map(|(r, l)| Step::Compose { label: l, outer_rank: r }),
        "[a-c]{1,3}".prop_map(|i| Step::FactorRule { ideal: i }),
        (1u64..4).prop_map(|d| Step::MoritaRule { d }),
        (1u64..6, "[A-Z][0-9]").prop_map(|(n, w)| Step::CoveringRule { window: w, window_vertices: n }),
    ]
}

proptest! {
    #[test]
    fn certificates_round_trip(rank in 1u64..9, rest in proptest::collection::vec(step_strategy(), 0..6)) {
        let mut steps = vec![Step::ExplicitBimodule { label: "G".into(), rank }];
        steps.extend(rest);
        let file = certificate(steps);
        let text = write_certificate(&file);
        let parsed = parse_certificate(&text).unwrap();
        prop_assert_eq!(write_certificate(&parsed), text);
        prop_assert_eq!(recheck(&parsed), Ok(file.certificate.bound));
    }
}
