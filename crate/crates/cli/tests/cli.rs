use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn wildrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wildrank")).args(args).output().expect("binary runs")
}

fn kv(out: &Output) -> Vec<(String, String)> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter_map(|l| l.split_once(" = ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

fn get<'a>(doc: &'a [(String, String)], key: &str) -> &'a str {
    doc.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or_else(|| panic!("no key {key}"))
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn classify_reports_types() {
    for (file, ty) in [("point.quiver", "finite"), ("a2.quiver", "finite"), ("k2.quiver", "tame"), ("k3.quiver", "wild")] {
        let out = wildrank(&["--format", "kv", "classify", &path(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let doc = kv(&out);
        assert_eq!(get(&doc, "component.1.type"), ty, "{file}");
    }
    let doc = kv(&wildrank(&["--format", "kv", "classify", &path("k3.quiver")]));
    assert_eq!(get(&doc, "component.1.minimal_wild"), "true");
    assert_eq!(get(&doc, "dimension"), "5");
}

#[test]
fn classify_non_hereditary() {
    let out = wildrank(&["--format", "kv", "classify", &path("three_loops.quiver")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = kv(&out);
    assert_eq!(get(&doc, "dimension"), "4");
    assert_eq!(get(&doc, "trichotomy"), "unavailable");
    let human = String::from_utf8(wildrank(&["classify", &path("three_loops.quiver")]).stdout).unwrap();
    assert!(human.contains("trichotomy unavailable"), "{human}");
}

#[test]
fn bad_specs_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiver");
    std::fs::write(&bad, "quiver bad\nfield Fp 101\nvertex 1 2\narrow a: 1 -> 3\n").unwrap();
    let out = wildrank(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains('3'), "{err}");

    let out = wildrank(&["classify", dir.path().join("missing.quiver").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_three_loops() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("l3.cert");
    let out = wildrank(&[
        "--format",
        "kv",
        "certify",
        &path("three_loops.quiver"),
        "--samples",
        "4",
        "--seed",
        "9",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = kv(&out);
    assert_eq!(get(&doc, "bound"), "56");
    assert_eq!(get(&doc, "recheck"), "pass");
    assert_eq!(get(&doc, "verification.valid"), "true");
    for (k, v) in &doc {
        if k.ends_with(".fail") {
            assert_eq!(v, "0", "{k}");
        }
    }

    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\nbound = 56\n"));
    assert!(text.contains("\nseed = 9\n"));
    let out = wildrank(&["recheck", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let tampered = dir.path().join("tampered.cert");
    std::fs::write(&tampered, text.replace("\nbound = 56\n", "\nbound = 57\n")).unwrap();
    assert_eq!(wildrank(&["recheck", tampered.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn certify_without_window() {
    let out = wildrank(&["--format", "kv", "certify", &path("dual_numbers.quiver")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(get(&kv(&out), "status"), "no-window");
}

#[test]
fn corrupted_witness_is_caught() {
    let out = wildrank(&["--format", "kv", "certify", &path("three_loops.quiver"), "--samples", "3", "--corrupt-witness"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(get(&kv(&out), "verification.valid"), "false");
}

#[test]
fn variety_probes() {
    let out = wildrank(&["--format", "kv", "variety", &path("k3.quiver"), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = kv(&out);
    assert_eq!(get(&doc, "n.2.d.1,1.estimate"), "2");
    assert_eq!(get(&doc, "n.2.estimate"), "2");

    let doc = kv(&wildrank(&["--format", "kv", "variety", &path("k2.quiver"), "--nmax", "3"]));
    for n in 1..=3 {
        let e: usize = get(&doc, &format!("n.{n}.estimate")).parse().unwrap();
        assert!(e <= n, "K2 at n={n}: {e}");
        assert_eq!(get(&doc, &format!("n.{n}.verdict")), "<=n");
    }

    let doc = kv(&wildrank(&["--format", "kv", "variety", &path("point.quiver"), "--nmax", "3"]));
    for n in 1..=3 {
        assert_eq!(get(&doc, &format!("n.{n}.estimate")), "0");
    }
}

#[test]
fn tilt_lists_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let out = wildrank(&["--format", "kv", "tilt", &path("k2.quiver"), "--depth", "2", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = kv(&out);
    assert_eq!(get(&doc, "preprojectives"), "6");
    assert_eq!(get(&doc, "regular_module_tilting"), "true");
    let expected = ["1,2", "0,1", "3,4", "2,3", "5,6", "4,5"];
    for (i, d) in expected.iter().enumerate() {
        assert_eq!(get(&doc, &format!("pre.{}.dims", i + 1)), *d);
    }
    let count: usize = get(&doc, "candidates").parse().unwrap();
    assert!(count >= 1);
    for i in 1..=count {
        let file = get(&doc, &format!("candidate.{i}.end.file"));
        let exported = dir.path().join(file);
        let out = wildrank(&["--format", "kv", "classify", exported.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(get(&kv(&out), "component.1.type"), "tame");
    }

    let doc = kv(&wildrank(&["--format", "kv", "tilt", &path("a2.quiver"), "--depth", "0"]));
    assert_eq!(get(&doc, "regular_module_tilting"), "true");
}

#[test]
fn tilt_rejects_relations() {
    let out = wildrank(&["tilt", &path("three_loops.quiver")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runs_are_deterministic() {
    let args = ["--format", "kv", "certify", &path("three_loops.quiver"), "--samples", "2", "--seed", "3"];
    let a = wildrank(&args);
    let b = wildrank(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = ["--format", "kv", "variety", &path("k3.quiver"), "--nmax", "2", "--seed", "5"];
    assert_eq!(wildrank(&v).stdout, wildrank(&v).stdout);
}
