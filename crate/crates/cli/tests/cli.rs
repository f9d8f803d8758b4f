//! End-to-end tests of the binary: piping, exit codes, output formats.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_voltlift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn voltlift");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("collect output")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Parsed `re im mult` lines of a spectrum output.
fn parse_spectrum(text: &str) -> Vec<(f64, f64, usize)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(parts.len(), 3, "bad spectrum line: {l}");
            (
                parts[0].parse().unwrap(),
                parts[1].parse().unwrap(),
                parts[2].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn catalog_alegre_round_trips_and_is_deterministic() {
    let first = run(&["catalog", "alegre"], "");
    assert!(first.status.success());
    let text = stdout_of(&first);
    let parsed = voltlift::voltfile::parse(&text).expect("catalog output must parse");
    assert!(parsed.same_structure(&voltlift::catalog::alegre()));

    let second = run(&["catalog", "alegre"], "");
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn alegre_spectrum_both_methods_agree() {
    let file = stdout_of(&run(&["catalog", "alegre"], ""));
    let out = run(&["spectrum", "--method", "both"], &file);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.starts_with("# tol=1e-7\n"), "header missing: {text}");
    assert!(text.contains("equal=true"));

    let clusters = parse_spectrum(&text);
    let total: usize = clusters.iter().map(|c| c.2).sum();
    assert_eq!(total, 25);
    assert!(clusters
        .iter()
        .any(|&(re, im, mult)| re.abs() < 1e-9 && im.abs() < 1e-9 && mult == 10));

    // Determinism, byte for byte.
    let again = run(&["spectrum", "--method", "both"], &file);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn spectrum_poly_gates_on_abelian_kind() {
    let out = run(&["spectrum", "--method", "poly", &fixture("s3_cayley.vg")], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("requires Abelian voltages"));
}

#[test]
fn spectrum_direct_handles_table_groups() {
    let out = run(&["spectrum", "--method", "direct", &fixture("s3_cayley.vg")], "");
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let total: usize = parse_spectrum(&stdout_of(&out)).iter().map(|c| c.2).sum();
    assert_eq!(total, 6);
}

#[test]
fn petersen_diameter_is_two() {
    let file = stdout_of(&run(&["catalog", "petersen", "5", "2"], ""));
    let out = run(&["diameter"], &file);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "2\n");
}

#[test]
fn polymatrix_fourth_power_entry() {
    let file = stdout_of(&run(&["catalog", "alegre"], ""));
    let out = run(&["polymatrix", "--power", "4"], &file);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.lines().any(|l| l == "0 0 2 + z^2 + z^3"),
        "missing corner entry in:\n{text}"
    );
}

#[test]
fn parse_errors_carry_line_numbers() {
    let out = run(&["diameter"], "vertices a b\narc a b 0\n");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("group"));
}

#[test]
fn check_regular_reports_quotient_or_fails() {
    let out = run(
        &[
            "check-regular",
            &fixture("six_vertex.vg"),
            "--blocks",
            "a,d;b,e;c,f",
        ],
        "",
    );
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text, "regular: true\n1 1 0\n0 0 2\n1 1 0\n");

    let bad = run(
        &[
            "check-regular",
            &fixture("six_vertex.vg"),
            "--blocks",
            "b;a,c,d,e,f",
        ],
        "",
    );
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(stdout_of(&bad), "regular: false\n");

    let unknown = run(
        &["check-regular", &fixture("six_vertex.vg"), "--blocks", "a;x"],
        "",
    );
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr_of(&unknown).contains("unknown vertex 'x'"));
}

#[test]
fn lift_emits_coordinate_format() {
    let file = stdout_of(&run(&["catalog", "alegre"], ""));
    let out = run(&["lift"], &file);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("25 25 50"));
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 50);
    for line in &rest {
        let parts: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(parts.len(), 3);
        assert!(parts[0] < 25 && parts[1] < 25 && parts[2] == 1);
    }
}

#[test]
fn quotient_prints_layer_sum() {
    let file = stdout_of(&run(&["catalog", "alegre"], ""));
    let out = run(&["quotient"], &file);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "0 1 1 0 0\n0 1 1 0 0\n0 0 0 2 0\n1 0 0 0 1\n1 0 0 0 1\n"
    );
}

#[test]
fn hoffman_singleton_spectrum_clusters() {
    let file = stdout_of(&run(&["catalog", "hoffman-singleton"], ""));
    let out = run(&["spectrum"], &file);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let clusters = parse_spectrum(&stdout_of(&out));
    let as_pairs: Vec<(i64, usize)> = clusters
        .iter()
        .map(|&(re, im, mult)| {
            assert!(im.abs() < 1e-9);
            (re.round() as i64, mult)
        })
        .collect();
    assert_eq!(as_pairs, vec![(7, 1), (2, 28), (-3, 21)]);
}

#[test]
fn walks_restrict_to_requested_pair() {
    let file = stdout_of(&run(&["catalog", "petersen", "5", "2"], ""));
    let out = run(&["walks", "--len", "1", "--from", "u", "--to", "u"], &file);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "u u 0 1 0 0 1\n");

    let all = run(&["walks", "--len", "1"], &file);
    assert_eq!(stdout_of(&all).lines().count(), 4);
}

#[test]
fn unknown_catalog_and_bad_args() {
    let out = run(&["catalog", "nonesuch"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("unknown catalog entry"));

    let out = run(&["catalog", "petersen", "5"], "");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn file_argument_matches_stdin() {
    let path = fixture("six_vertex.vg");
    let by_file = run(&["spectrum", "--method", "direct", &path], "");
    let text = std::fs::read_to_string(&path).unwrap();
    let by_stdin = run(&["spectrum", "--method", "direct"], &text);
    assert!(by_file.status.success());
    assert_eq!(by_file.stdout, by_stdin.stdout);
}

#[test]
fn walk_count_overflow_is_a_numeric_failure() {
    let file = stdout_of(&run(&["catalog", "alegre"], ""));
    let out = run(&["walks", "--len", "300"], &file);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("overflow"));
}

#[test]
fn walks_work_over_table_groups() {
    let out = run(&["walks", "--len", "2", &fixture("s3_cayley.vg")], "");
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let parts: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(parts.len(), 2 + 6);
    let total: i64 = parts[2..].iter().map(|t| t.parse::<i64>().unwrap()).sum();
    // Two generators, so 4 walks of length 2 in total.
    assert_eq!(total, 4);
}

#[test]
fn cayley_product_arguments() {
    let out = run(&["catalog", "cayley", "product", "5,5", "1,0", "0,1"], "");
    assert!(out.status.success());
    let parsed = voltlift::voltfile::parse(&stdout_of(&out)).unwrap();
    assert_eq!(parsed.group().order(), 25);
    assert_eq!(parsed.arcs().len(), 2);
}
