//! Command-line behaviour: exit codes, report formats, corpus and bench
//! commands, and robustness on malformed input.

use std::process::Command;

use first_integrals::builders::Outcome;
use first_integrals::RatFunc;
use first_integrals_cli::app::{run, EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, THREADS_ENV};
use first_integrals_cli::report::Report;
use first_integrals_cli::{parse_poly, ParseError};
use proptest::prelude::*;

const DARBOUX: &str = "A=x^2+2*x*y+y^2-4*x+4*y-2; B=x^2+2*x*y+y^2+4*x-4*y-2";
const LIOUVILLE: &str = "A=2*x^2-2*y^2-1; B=2*x^2-2*y^2-3";

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("first-integrals").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = cli(&full);
    (code, Report::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}")))
}

#[test]
fn liouvillian_equation_exits_zero() {
    let (code, r) = json(&["compute", "--class", "liouville", "-N", "3", "--field", LIOUVILLE, "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.status, "equation");
    let Some(Outcome::Equation(e)) = r.outcome() else { panic!("{r:?}") };
    let num = parse_poly("2*(x+y)*(2*x^2-4*x*y+2*y^2-1)").unwrap();
    let den = parse_poly("2*x^2-2*y^2-1").unwrap();
    assert_eq!(e.f, RatFunc::new(num, den).unwrap());
    assert_eq!(r.seed, Some(7));
}

#[test]
fn none_below_the_minimal_degree() {
    let (code, r) = json(&["compute", "--class", "darboux", "-N", "2", "--field", DARBOUX, "--point", "1,8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.status, "none");
    assert_eq!(r.diagnostics.base, Some(["1".to_string(), "8".to_string()]));
}

#[test]
fn unknown_outcome_exits_two() {
    let (code, r) = json(&["compute", "--class", "darboux", "-N", "3", "--field", DARBOUX, "--point", "1,1"]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert_eq!(r.status, "unknown");
    assert!(r.reason.is_some());
}

#[test]
fn negative_rational_point_is_accepted() {
    let (code, r) = json(&["compute", "--class", "darboux", "-N", "3", "--field", DARBOUX, "--point", "-1/4,1/4"]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert_eq!(r.reason.as_deref(), Some("point-on-A"));
}

#[test]
fn text_and_json_carry_the_same_result() {
    let args = ["compute", "--class", "darboux", "-N", "3", "--field", DARBOUX, "--point", "1,8"];
    let (_, r) = json(&args);
    let (code, text, _) = cli(&args);
    assert_eq!(code, EXIT_OK);
    let Some(Outcome::Equation(e)) = r.outcome() else { panic!() };
    assert!(text.contains("status: equation"));
    assert!(text.contains(&format!("F = {}", e.f)), "{text}");
    assert!(text.contains(&format!("degree: {}", e.degree)));
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn deterministic_runs_are_reproducible() {
    let args = ["compute", "--class", "riccati", "-N", "1", "--field", "A=2*x^2+x*y-2*y^2-1; B=2*x^2-2*y^2+y-3", "--deterministic"];
    let (code, mut a) = json(&args);
    let (_, mut b) = json(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a.status, "none");
    assert_eq!(a.diagnostics.points_tried, 1);
    a.diagnostics.time_ms = 0.0;
    b.diagnostics.time_ms = 0.0;
    assert_eq!(a, b);
}

#[test]
fn corpus_case_as_field_source() {
    let (code, r) = json(&["compute", "--class", "liouville", "-N", "7", "--case", "kamke-185"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.status, "equation");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["compute", "--class", "rational", "-N", "2", "--field", "A=x; B=x"],
        vec!["compute", "--class", "rational", "-N", "2", "--field", "A=x^(-1); B=y"],
        vec!["compute", "--class", "rational", "-N", "2", "--field", "A=z; B=y"],
        vec!["compute", "--class", "rational", "-N", "2", "--field", "A=x+; B=y"],
        vec!["compute", "--class", "rational", "-N", "0", "--field", "A=1; B=1"],
        vec!["compute", "--class", "darboux", "-k", "0", "-N", "2", "--field", "A=1; B=1"],
        vec!["compute", "--class", "rational", "-N", "2"],
        vec!["compute", "--class", "rational", "-N", "2", "--field", "A=1; B=1", "--point", "1"],
        vec!["compute", "--class", "rational", "-N", "2", "--field-file", "/nonexistent/field.txt"],
        vec!["compute", "--class", "rational", "-N", "2", "--case", "no-such-case"],
        vec!["compute", "--class", "sideways", "-N", "2", "--field", "A=1; B=1"],
        vec!["frobnicate"],
        vec!["bench", "scan", "--class", "rational", "--family", "nope", "--n-max", "2"],
        vec!["corpus", "run", "--filter", "no-such-case"],
    ] {
        let (code, _, err) = cli(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn common_factor_is_reported() {
    let (_, _, err) = cli(&["compute", "--class", "rational", "-N", "2", "--field", "A=x*y; B=x"]);
    assert!(err.contains("error"), "{err}");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(cli(&["--version"]).0, EXIT_OK);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("compute"));
}

#[test]
fn field_file_with_one_component_per_line() {
    let dir = std::env::temp_dir().join(format!("first-integrals-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.txt");
    std::fs::write(&path, "B = 1\nA = 1\n").unwrap();
    let (code, r) = json(&["compute", "--class", "rational", "-N", "1", "--field-file", path.to_str().unwrap(), "--deterministic"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.status, "equation");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parser_examples() {
    assert!(parse_poly("0").unwrap().is_zero());
    assert_eq!(parse_poly("(x+y)^2").unwrap(), parse_poly("x^2+2*x*y+y^2").unwrap());
    assert_eq!(parse_poly("-3/6*x").unwrap(), parse_poly("-1/2*x").unwrap());
    assert!(parse_poly("x/2").is_err());
    assert!(matches!(parse_poly("x^(-1)"), Err(ParseError::NegativeExponent { .. })));
    assert!(matches!(parse_poly("x*t"), Err(ParseError::UnknownVariable { .. })));
    assert!(matches!(parse_poly("(x"), Err(ParseError::Syntax { .. })));
}

#[test]
fn corpus_list_and_filtered_run() {
    let (code, out, _) = cli(&["corpus", "run", "--list"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "kamke-43"));
    assert!(out.lines().any(|l| l == "mu-lambda-2-1-rational-n4"));
    let (code, out, _) = cli(&["corpus", "run", "--filter", "quadratic-darboux"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 4);
    assert!(!out.contains("FAIL"));
    assert_ne!(EXIT_MISMATCH, EXIT_OK);
}

fn csv_rows(out: &str) -> Vec<Vec<String>> {
    out.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn bench_scan_finds_table_degrees() {
    let (code, out, _) = cli(&["bench", "scan", "--class", "liouville", "--family", "mu-lambda", "--n-max", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("case,class,minimal_N,status,time_ms_per_N"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 6);
    let row = rows.iter().find(|r| r[0] == "mu-lambda-1-1").unwrap();
    assert_eq!((row[2].as_str(), row[3].as_str()), ("2", "equation"));
    assert_eq!(row[4].split(';').count(), 2);
}

#[test]
fn bench_scan_generic_family_has_no_small_integrals() {
    let (code, out, _) = cli(&["bench", "scan", "--class", "riccati", "--family", "generic", "--n-max", "3"]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[2].is_empty() && r[3] == "none"), "{out}");
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]), "rows are ordered by case id");
}

#[test]
fn bench_scan_rational_table_entry() {
    let (code, out, _) = cli(&["bench", "scan", "--class", "rational", "--family", "mu-lambda", "--n-max", "4"]);
    assert_eq!(code, EXIT_OK);
    let row = csv_rows(&out).into_iter().find(|r| r[0] == "mu-lambda-2-1").unwrap();
    assert_eq!((row[2].as_str(), row[3].as_str()), ("4", "equation"));
}

#[test]
fn bench_scan_writes_a_csv_file() {
    let path = std::env::temp_dir().join(format!("first-integrals-scan-{}.csv", std::process::id()));
    let (code, out, _) =
        cli(&["bench", "scan", "--class", "rational", "--family", "mu-lambda", "--n-max", "1", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("wrote 6 rows"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn binary_honours_the_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_first-integrals");
    let ok = Command::new(bin).args(["corpus", "run", "--filter", "translation"]).env(THREADS_ENV, "1").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&ok.stdout));
    let bad = Command::new(bin).args(["corpus", "run", "--filter", "translation"]).env(THREADS_ENV, "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains(THREADS_ENV));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_first-integrals");
    let unknown =
        Command::new(bin).args(["compute", "--class", "darboux", "-N", "3", "--field", DARBOUX, "--point", "1,1"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(EXIT_UNKNOWN));
    let usage = Command::new(bin).args(["compute", "--class", "rational"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parser_never_panics(s in "[-+*/^()xy0-9 .a]{0,24}") {
        let _ = parse_poly(&s);
    }

    #[test]
    fn malformed_fields_are_usage_errors(a in "[-+*^()xy0-9]{0,12}", b in "[-+*^()xy0-9]{0,12}") {
        let field = format!("A={a}; B={b}");
        let (code, _, _) = cli(&["compute", "--class", "rational", "-N", "1", "--field", &field, "--point", "3,5"]);
        prop_assert!([EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN].contains(&code));
    }

    #[test]
    fn display_round_trips_through_the_parser(c in proptest::collection::vec((-9i64..=9, 0u32..4, 0u32..4), 0..6)) {
        let text: String = c.iter().map(|(k, i, j)| format!("+({k})*x^{i}*y^{j}")).collect();
        let p = parse_poly(if text.is_empty() { "0" } else { &text }).unwrap();
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}
