//! End-to-end exercises of the command-line surface through `cli::run`.

use apcoh::cli::{run_args, EXIT_INPUT, EXIT_OK};
use apcoh::zmatrix::IntMatrix;
use std::io::Write;
use std::path::PathBuf;

fn write_input(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

const BBAAAB: &str = "a -> bbaaab / b -> bbab\n";
const ABA: &str = "a -> aba / b -> bbab\n";
const LONG_FAMILY: &str = "\
alphabet: a b c
sub phi1: a -> ab / b -> bc / c -> ca
sub phi2: a -> bb / b -> cc / c -> ac
sequence: | phi2 phi1 phi1 phi1
";

#[test]
fn cohomology_bbaaab_prints_groups() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "bbaaab.sub", BBAAAB);
    let out = run_args(&["cohomology", f.to_str().unwrap(), "--flavor", "ap"]);
    assert_eq!(out.status, EXIT_OK, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, "H0 = Z\nH1 = Z[1/6]^2\n");
}

#[test]
fn cohomology_full_flavor_warns_when_not_self_correcting() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "aba.sub", ABA);
    let out = run_args(&["cohomology", f.to_str().unwrap(), "--flavor", "ap_full"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("H1 = Z[1/5]^2 (+) Z"));
    assert!(out
        .stdout
        .contains("warning: system is not self-correcting"));
}

#[test]
fn check_self_correcting_long_family() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "longfamily.sub", LONG_FAMILY);
    let out = run_args(&["check", f.to_str().unwrap(), "--what", "self-correcting"]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.stdout, "yes (n=5)\n");
}

#[test]
fn check_primitivity_family() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "longfamily.sub", LONG_FAMILY);
    let out = run_args(&["check", f.to_str().unwrap(), "--what", "primitivity"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.starts_with("yes (n=4)\n"));
    assert!(out.stdout.contains("member phi1: yes"));
    assert!(out.stdout.contains("pair (with sequence): yes"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run_args(&["cohomology", "/nonexistent/missing.sub"]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("cannot read"));
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "bad.sub", "a -> ab / b -> \n");
    let out = run_args(&["cohomology", f.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stderr.contains("line 1"));
    assert!(out.stderr.contains("empty image"));
}

#[test]
fn unknown_flags_and_commands_fail() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "x.sub", BBAAAB);
    assert_eq!(
        run_args(&["cohomology", f.to_str().unwrap(), "--bogus"]).status,
        EXIT_INPUT
    );
    assert_eq!(
        run_args(&["frobnicate", f.to_str().unwrap()]).status,
        EXIT_INPUT
    );
    assert_eq!(run_args(&[]).status, EXIT_INPUT);
    assert_eq!(
        run_args(&["cohomology", f.to_str().unwrap(), "--flavor", "nope"]).status,
        EXIT_INPUT
    );
}

#[test]
fn sequence_override_changes_the_answer() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "long.sub", LONG_FAMILY);
    let with_file_seq = run_args(&["cohomology", f.to_str().unwrap(), "--flavor", "ap_left"]);
    assert!(with_file_seq.stdout.contains("H1 = formal{rank=3,"));
    let out = run_args(&[
        "cohomology",
        f.to_str().unwrap(),
        "--flavor",
        "ap_left",
        "--sequence",
        "| phi1",
    ]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("H1 = formal{rank=7,"));
}

#[test]
fn mixed_family_without_sequence_needs_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(
        &dir,
        "noseq.sub",
        "sub f: a -> ab / b -> a\nsub g: a -> ba / b -> a\n",
    );
    let out = run_args(&["cohomology", f.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stderr.contains("no mixing sequence"));
    let out2 = run_args(&["cohomology", f.to_str().unwrap(), "--sequence", "| f g"]);
    assert_eq!(out2.status, EXIT_OK);
    assert!(out2.stdout.contains("H0 = Z"));
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "long.sub", LONG_FAMILY);
    for cmd in [
        vec!["analyze", f.to_str().unwrap()],
        vec!["cohomology", f.to_str().unwrap()],
        vec!["matrices", f.to_str().unwrap()],
        vec!["complex", f.to_str().unwrap(), "--emit", "dot"],
    ] {
        let a = run_args(&cmd);
        let b = run_args(&cmd);
        assert_eq!(a, b, "non-deterministic output for {cmd:?}");
        assert_eq!(a.status, EXIT_OK);
    }
}

#[test]
fn complex_json_roundtrips_and_dot_is_wellformed() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "bbaaab.sub", BBAAAB);
    let json = run_args(&[
        "complex",
        f.to_str().unwrap(),
        "--emit",
        "json",
        "--flavor",
        "ap",
    ]);
    assert_eq!(json.status, EXIT_OK);
    let parsed = apcoh::complex::parse_json(&json.stdout).unwrap();
    assert_eq!(parsed.edge_count(), 7);
    assert_eq!(parsed.vertex_count(), 6);
    assert_eq!(apcoh::complex::export_json(&parsed), json.stdout);

    let dot = run_args(&[
        "complex",
        f.to_str().unwrap(),
        "--emit",
        "dot",
        "--flavor",
        "ap",
    ]);
    assert_eq!(dot.status, EXIT_OK);
    assert!(dot.stdout.starts_with("digraph"));
    assert_eq!(dot.stdout.matches("->").count(), 7);
}

#[test]
fn analyze_contains_report_sections() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "bbaaab.sub", BBAAAB);
    let out = run_args(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_OK);
    for needle in [
        "== system ==",
        "== analysis ==",
        "== perron-frobenius ==",
        "== complexes (position 0) ==",
        "== cohomology ==",
        "flavor ap: H0 = Z, H1 = Z[1/6]^2",
        "rank bound: rank 2 <= 3",
        "== warnings ==",
    ] {
        assert!(out.stdout.contains(needle), "missing {needle:?}");
    }
}

/// Re-parse the matrices output and verify the chain map identity from the
/// printed blocks alone.
#[test]
fn matrices_output_reparses_to_chain_maps() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "long.sub", LONG_FAMILY);
    let out = run_args(&[
        "matrices",
        f.to_str().unwrap(),
        "--flavor",
        "ap_left_modified",
    ]);
    assert_eq!(out.status, EXIT_OK);

    // collect delta blocks by position and (A0, A1) blocks by step
    let mut deltas: Vec<IntMatrix> = Vec::new();
    let mut steps: Vec<(usize, usize, IntMatrix, IntMatrix)> = Vec::new();
    let mut lines = out.stdout.lines().peekable();
    let grab_matrix = |lines: &mut std::iter::Peekable<std::str::Lines>| -> IntMatrix {
        let mut block = String::new();
        while let Some(l) = lines.peek() {
            if l.starts_with('[') {
                block.push_str(l);
                block.push('\n');
                lines.next();
            } else {
                break;
            }
        }
        IntMatrix::parse_text(&block).unwrap()
    };
    let mut pending_step: Option<(usize, usize)> = None;
    while let Some(line) = lines.next() {
        if line.starts_with("delta1 position") {
            deltas.push(grab_matrix(&mut lines));
        } else if line.starts_with("step ") {
            // "step N via NAME (source position S, target position T) ="
            let src = line
                .split("source position ")
                .nth(1)
                .and_then(|s| s.split(',').next())
                .unwrap()
                .trim()
                .parse::<usize>()
                .unwrap();
            let tgt = line
                .split("target position ")
                .nth(1)
                .and_then(|s| s.split(')').next())
                .unwrap()
                .trim()
                .parse::<usize>()
                .unwrap();
            pending_step = Some((src, tgt));
        } else if line.starts_with("A0 =") {
            let a0 = grab_matrix(&mut lines);
            // A1 follows its own header
            let a1_header = lines.next().unwrap();
            assert!(a1_header.starts_with("A1 ="));
            let a1 = grab_matrix(&mut lines);
            let (src, tgt) = pending_step.take().unwrap();
            steps.push((src, tgt, a0, a1));
        }
    }
    assert_eq!(deltas.len(), 4);
    assert_eq!(steps.len(), 4);
    for (src, tgt, a0, a1) in &steps {
        let d_src = &deltas[*src];
        let d_tgt = &deltas[*tgt];
        assert_eq!(
            d_src.mul(a0),
            a1.mul(d_tgt),
            "chain identity fails for step {src} -> {tgt}"
        );
    }
}

#[test]
fn analyze_can_include_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "bbaaab.sub", BBAAAB);
    let out = run_args(&["analyze", f.to_str().unwrap(), "--matrices"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("== matrices =="));
    assert!(out.stdout.contains("delta1 position 0"));
}

#[test]
fn check_cap_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_input(&dir, "aba.sub", ABA);
    let out = run_args(&[
        "check",
        f.to_str().unwrap(),
        "--what",
        "self-correcting",
        "--cap",
        "3",
    ]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.stdout, "no (certificate: aa)\n");
    let bad = run_args(&[
        "check",
        f.to_str().unwrap(),
        "--what",
        "self-correcting",
        "--cap",
        "0",
    ]);
    assert_eq!(bad.status, EXIT_INPUT);
}

#[test]
fn help_is_available() {
    let out = run_args(&["--help"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("usage"));
}
