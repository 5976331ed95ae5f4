//! CLI behavior: validation exit codes, artifact round-trips, determinism.

use std::collections::BTreeMap;

use symcrys_cli::config::{Command, RawOptions};
use symcrys_cli::document::{GraphDocument, HeckeDocument};
use symcrys_cli::{run, CliError};

fn options(pairs: &[(&str, &str)]) -> RawOptions {
    let map: BTreeMap<String, String> = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    RawOptions::default().overlay(map)
}

fn tmpdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("symcrys-cli-tests").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn config_requires_command() {
    let err = options(&[]).into_job().unwrap_err();
    assert!(err.to_string().contains("command"));
}

#[test]
fn flags_override_file() {
    let dir = tmpdir("override");
    let path = dir.join("job.conf");
    std::fs::write(&path, "command=binfty\ndepth=1\n# comment\nradius=3\n").unwrap();
    let file = RawOptions::from_file(&path).unwrap();
    let merged = file.overlay(
        [("depth".to_string(), "2".to_string())]
            .into_iter()
            .collect::<BTreeMap<_, _>>(),
    );
    let job = merged.into_job().unwrap();
    assert_eq!(job.command, Command::Binfty);
    assert_eq!(job.depth, 2);
}

#[test]
fn bad_config_lines_rejected() {
    let dir = tmpdir("badline");
    let path = dir.join("job.conf");
    std::fs::write(&path, "command binfty\n").unwrap();
    assert!(RawOptions::from_file(&path).is_err());
    std::fs::write(&path, "commandx=binfty\n").unwrap();
    assert!(RawOptions::from_file(&path).is_err());
}

#[test]
fn theta_violating_lambda_exits_config_error_naming_index() {
    let job = options(&[
        ("command", "crystal-b"),
        ("kind", "odd-window"),
        ("radius", "3"),
        ("lambda", "1:1"),
        ("depth", "1"),
    ])
    .into_job()
    .unwrap();
    let err = run(&job).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("theta-invariant"), "{err}");
    assert!(err.to_string().contains('1'), "{err}");
}

#[test]
fn even_radius_is_a_config_error() {
    let job = options(&[("command", "binfty"), ("radius", "2"), ("depth", "1")])
        .into_job()
        .unwrap();
    let err = run(&job).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn graph_json_round_trips() {
    let dir = tmpdir("roundtrip");
    let out = dir.join("run");
    let job = options(&[
        ("command", "crystal-b"),
        ("kind", "odd-window"),
        ("radius", "3"),
        ("lambda", "zero"),
        ("depth", "2"),
        ("format", "dot,json"),
        ("out", out.to_str().unwrap()),
    ])
    .into_job()
    .unwrap();
    let outcome = run(&job).unwrap();
    assert_eq!(outcome.exit_code, 0);
    let json = std::fs::read_to_string(out.with_extension("json")).unwrap();
    let doc: GraphDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(
        symcrys_cli::document::to_json(&doc),
        json,
        "round trip is lossless"
    );
    // depth-2 figure facts visible in the document: vac has one out-neighbor
    // through colors ±1, and two distinct grandchildren via 1 vs -1.
    let vac_children: BTreeMap<i64, usize> = doc
        .arrows
        .iter()
        .filter(|a| a.from == 0 && (a.color == 1 || a.color == -1))
        .map(|a| (a.color, a.to))
        .collect();
    assert_eq!(vac_children.len(), 2);
    let child: Vec<usize> = vac_children.values().copied().collect();
    assert_eq!(child[0], child[1], "both ±1 arrows land on one node");
    let grandchildren: Vec<usize> = doc
        .arrows
        .iter()
        .filter(|a| a.from == child[0] && (a.color == 1 || a.color == -1))
        .map(|a| a.to)
        .collect();
    assert_eq!(grandchildren.len(), 2);
    assert_ne!(grandchildren[0], grandchildren[1], "level two branches");
    // empty-graph DOT still contains the vacuum node
    let job0 = options(&[
        ("command", "crystal-b"),
        ("radius", "3"),
        ("depth", "0"),
        ("format", "dot"),
        ("out", dir.join("zero").to_str().unwrap()),
    ])
    .into_job()
    .unwrap();
    run(&job0).unwrap();
    let dot = std::fs::read_to_string(dir.join("zero.dot")).unwrap();
    assert!(dot.contains("label=\"vac\""));
}

#[test]
fn verify_hecke_all_pass_exit_zero() {
    let dir = tmpdir("hecke");
    let out = dir.join("hecke");
    let job = options(&[
        ("command", "verify-hecke"),
        ("n", "2"),
        ("exp-bound", "2"),
        ("out", out.to_str().unwrap()),
        ("threads", "2"),
    ])
    .into_job()
    .unwrap();
    let outcome = run(&job).unwrap();
    assert_eq!(outcome.exit_code, 0);
    let json = std::fs::read_to_string(out.with_extension("json")).unwrap();
    let doc: HeckeDocument = serde_json::from_str(&json).unwrap();
    assert!(doc.report.all_pass());
    assert!(doc.report.checks.iter().any(|c| c.name == "braid-T0T1T0T1"));
}

#[test]
fn dim_formula_level_one_values() {
    for eseq in ["1", "-1"] {
        let job = options(&[
            ("command", "dim-formula"),
            ("kind", "odd-window"),
            ("radius", "3"),
            ("lambda", "zero"),
            ("witness", "1"),
            ("eseq", eseq),
        ])
        .into_job()
        .unwrap();
        let outcome = run(&job).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(outcome.summary.contains("value 1"), "{}", outcome.summary);
    }
    // mismatched lengths are a config error
    let job = options(&[
        ("command", "dim-formula"),
        ("witness", "1"),
        ("eseq", "1,-1"),
    ])
    .into_job()
    .unwrap();
    let err = run(&job).unwrap_err();
    assert!(matches!(err, CliError::Config(_)));
}

#[test]
fn identical_jobs_produce_identical_bytes() {
    let dir = tmpdir("determinism");
    let mut artifacts: Vec<(String, String)> = Vec::new();
    for name in ["a", "b"] {
        let out = dir.join(name);
        let job = options(&[
            ("command", "crystal-b"),
            ("kind", "odd-window"),
            ("radius", "3"),
            ("lambda", "zero"),
            ("depth", "2"),
            ("format", "dot,json"),
            ("out", out.to_str().unwrap()),
        ])
        .into_job()
        .unwrap();
        run(&job).unwrap();
        artifacts.push((
            std::fs::read_to_string(out.with_extension("dot")).unwrap(),
            std::fs::read_to_string(out.with_extension("json")).unwrap(),
        ));
    }
    assert_eq!(artifacts[0].0, artifacts[1].0, "DOT bytes differ");
    assert_eq!(artifacts[0].1, artifacts[1].1, "JSON bytes differ");
}

#[test]
fn global_basis_job_reports_balanced() {
    let dir = tmpdir("globalbasis");
    let out = dir.join("gb");
    let job = options(&[
        ("command", "global-basis"),
        ("kind", "odd-window"),
        ("radius", "3"),
        ("lambda", "zero"),
        ("depth", "2"),
        ("out", out.to_str().unwrap()),
    ])
    .into_job()
    .unwrap();
    let outcome = run(&job).unwrap();
    assert_eq!(outcome.exit_code, 0, "{}", outcome.summary);
    let json = std::fs::read_to_string(out.with_extension("json")).unwrap();
    let doc: symcrys_cli::document::GlobalBasisDocument = serde_json::from_str(&json).unwrap();
    assert!(doc.blocks.iter().all(|b| b.balanced.pass));
    assert!(doc.reports.is_empty());
    // every coefficient string is a well-formed canonical scalar
    for b in &doc.blocks {
        for el in b.lower.iter().chain(b.upper.iter()) {
            assert!(!el.terms.is_empty());
            for t in &el.terms {
                assert!(!t.coeff.is_empty());
                assert_eq!(
                    t.coeff.matches('(').count(),
                    t.coeff.matches(')').count(),
                    "unbalanced coefficient {:?}",
                    t
                );
                assert!(t.monomial.ends_with("vac"), "{:?}", t);
            }
        }
    }
}

#[test]
fn depth_one_dot_has_paired_edges_to_one_node() {
    let dir = tmpdir("dotdepth1");
    let out = dir.join("d1");
    let job = options(&[
        ("command", "crystal-b"),
        ("kind", "odd-window"),
        ("radius", "1"),
        ("lambda", "zero"),
        ("depth", "1"),
        ("format", "dot"),
        ("out", out.to_str().unwrap()),
    ])
    .into_job()
    .unwrap();
    run(&job).unwrap();
    let dot = std::fs::read_to_string(out.with_extension("dot")).unwrap();
    // two edges from vac to one node, labeled 1 and -1
    assert!(
        dot.contains("\"n0\" -> \"n1\" [label=\"1\", color=\"1\"]"),
        "{dot}"
    );
    assert!(
        dot.contains("\"n0\" -> \"n1\" [label=\"-1\", color=\"-1\"]"),
        "{dot}"
    );
    assert_eq!(dot.matches("->").count(), 2);
}
