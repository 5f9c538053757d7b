use std::fs;

use tempfile::tempdir;
use tracefield_cli::exit;
use tracefield_cli::report::FieldReport;
use tracefield_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tracefield").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_text_report() {
    let (code, out, _) = call(&["analyze", "x^3+x-6"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("d_K             -244"));
    assert!(out.contains("2: 2^1 1^1 (wild)"));
    assert!(out.contains("61: 2^1 1^1 (tame)"));
    assert!(out.contains("status          consistent_positive"));
}

#[test]
fn analyze_list_syntax_matches_expression() {
    let (_, a, _) = call(&["analyze", "--json", "x^3 + x - 6"]);
    let (_, b, _) = call(&["analyze", "--json", "[1, 0, 1, -6]"]);
    assert_eq!(a, b);
}

#[test]
fn analyze_rejects_bad_input() {
    let (code, _, err) = call(&["analyze", "x^2-1"]);
    assert_eq!(code, exit::REDUCIBLE);
    assert!(err.contains("reducible") && err.contains("x-1"), "{err}");

    let (code, _, err) = call(&["analyze", "2x^2-1"]);
    assert_eq!(code, exit::PARSE);
    assert!(err.contains("not monic"), "{err}");

    let (code, _, err) = call(&["analyze", "x^2+*1"]);
    assert_eq!(code, exit::PARSE);
    assert!(err.contains("column 5"), "{err}");

    let (code, _, _) = call(&["analyze"]);
    assert_eq!(code, exit::PARSE);
}

#[test]
fn analyze_json_validates_and_round_trips() {
    let (code, out, _) = call(&["analyze", "--json", "x^4+1"]);
    assert_eq!(code, exit::OK);
    let r = FieldReport::from_json(out.trim()).unwrap();
    assert_eq!(r.d_k.0, 256.into());
    assert_eq!(r.to_json_line(), out.trim());
}

#[test]
fn timing_is_opt_in() {
    let (_, plain, _) = call(&["analyze", "--json", "x^2-2"]);
    assert!(!plain.contains("timing_ms"));
    let (_, timed, _) = call(&["analyze", "--json", "--timing", "x^2-2"]);
    assert!(timed.contains("timing_ms"));
}

#[test]
fn analyze_json_equals_hunt_line() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("h.jsonl");
    let (code, _, err) = call(&["hunt", "--degree", "3..3", "--bound", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(code, exit::OK, "{err}");
    let (_, single, _) = call(&["analyze", "--json", "x^3+x-6"]);
    let text = fs::read_to_string(&out).unwrap();
    let line = text.lines().find(|l| l.contains("\"polynomial\":\"x^3+x-6\"")).unwrap();
    assert_eq!(line, single.trim_end());
}

#[test]
fn hunt_from_input_file_with_csv() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "x^2-2\n# comment\n\n[1, 0, 1, -6]\nx^2-1\n").unwrap();
    let out = dir.path().join("o.jsonl");
    let csv = dir.path().join("o.csv");
    let (code, summary, err) = call(&[
        "hunt",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, exit::OK, "{err}");
    assert!(summary.contains("reducible"), "{summary}");
    let lines: Vec<String> = fs::read_to_string(&out).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    for l in &lines {
        FieldReport::from_json(l).unwrap();
    }
    let csv_text = fs::read_to_string(&csv).unwrap();
    let mut rows = csv_text.lines();
    assert_eq!(rows.next(), Some("poly,n,d_K,t,tame,thm4,status"));
    assert_eq!(rows.count(), 2);
}

#[test]
fn hunt_resume_skips_done_and_repairs_partial_line() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = out.to_str().unwrap();
    let args = ["hunt", "--degree", "2..3", "--bound", "2", "--out", o];
    assert_eq!(call(&args).0, exit::OK);
    let full = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = full.lines().collect();
    assert!(lines.len() > 10);

    let keep = lines.len() / 2;
    let mut cut = lines[..keep].join("\n");
    cut.push('\n');
    cut.push_str(&lines[keep][..lines[keep].len() / 2]);
    fs::write(&out, cut).unwrap();

    let mut resumed = args.to_vec();
    resumed.push("--resume");
    let (code, summary, err) = call(&resumed);
    assert_eq!(code, exit::OK, "{err}");
    assert!(summary.contains("resumed"), "{summary}");
    assert_eq!(fs::read_to_string(&out).unwrap(), full);
}

#[test]
fn empty_degree_range_is_empty_output() {
    let (code, out, err) = call(&["hunt", "--degree", "4..3", "--bound", "2"]);
    assert_eq!(code, exit::OK);
    assert!(out.is_empty());
    assert!(err.contains('0'), "{err}");
}

#[test]
fn hunt_argument_errors() {
    assert_eq!(call(&["hunt", "--degree", "three", "--bound", "2"]).0, exit::PARSE);
    assert_eq!(call(&["hunt", "--degree", "3..4"]).0, exit::PARSE);
    assert_eq!(call(&["hunt"]).0, exit::PARSE);
    let missing = call(&["hunt", "--input", "/nonexistent/tracefield/in.txt"]);
    assert_eq!(missing.0, exit::IO);
}

#[test]
fn hunt_to_stdout_keeps_summary_on_stderr() {
    let (code, out, err) = call(&["hunt", "--degree", "2..2", "--bound", "1"]);
    assert_eq!(code, exit::OK);
    for l in out.lines() {
        FieldReport::from_json(l).unwrap();
    }
    assert!(err.contains("consistent_"), "{err}");
}

#[test]
fn config_file_is_applied() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("tf.conf");
    fs::write(&cfg, "# settings\nseed = 7\nworkers = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let (code, out, _) = call(&["--config", c, "analyze", "--json", "x^3-2"]);
    assert_eq!(code, exit::OK);
    let (_, base, _) = call(&["analyze", "--json", "x^3-2"]);
    assert_eq!(out, base);

    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(call(&["--config", c, "analyze", "x^2-2"]).0, exit::PARSE);
}

fn write_reports(dir: &std::path::Path, polys: &[&str]) -> std::path::PathBuf {
    let path = dir.join("reports.jsonl");
    let mut text = String::new();
    for p in polys {
        let (code, out, _) = call(&["analyze", "--json", p]);
        assert_eq!(code, exit::OK);
        text.push_str(&out);
    }
    fs::write(&path, text).unwrap();
    path
}

const ORACLE: &str = r#"[
 {"polynomial": "x^2-2", "d_K": 8, "index": 1, "splittings": [{"p": 2, "shape": [[2, 1]]}], "t": 2},
 {"polynomial": "x^3+x-6", "d_K": "-244", "index": 2,
  "splittings": [{"p": 2, "shape": [[1, 1], [2, 1]]}, {"p": 61, "shape": [[2, 1], [1, 1]]}], "t": 1}
]"#;

#[test]
fn oracle_diff_outcomes() {
    let dir = tempdir().unwrap();
    let reports = write_reports(dir.path(), &["x^2-2", "x^3+x-6"]);
    let r = reports.to_str().unwrap();
    let oracle = dir.path().join("oracle.json");
    let o = oracle.to_str().unwrap();

    fs::write(&oracle, ORACLE).unwrap();
    let (code, out, _) = call(&["oracle-diff", r, o]);
    assert_eq!(code, exit::OK, "{out}");
    assert!(out.contains("compared 2 mismatches 0 gaps 0"));

    fs::write(&oracle, ORACLE.replace("\"t\": 2", "\"t\": 1")).unwrap();
    let (code, out, _) = call(&["oracle-diff", r, o]);
    assert_eq!(code, exit::MISMATCH);
    assert!(out.contains("mismatch x^2-2: t local=2 oracle=1"), "{out}");

    let reports = write_reports(dir.path(), &["x^2-2", "x^3+x-6", "x^2+1"]);
    fs::write(&oracle, ORACLE).unwrap();
    let (code, out, _) = call(&["oracle-diff", reports.to_str().unwrap(), o]);
    assert_eq!(code, exit::MISMATCH);
    assert!(out.contains("gap x^2+1"), "{out}");

    fs::write(&oracle, "{\"polynomial\": 3}").unwrap();
    assert_eq!(call(&["oracle-diff", r, o]).0, exit::PARSE);
    assert_eq!(call(&["oracle-diff", r, "/nonexistent/oracle.json"]).0, exit::IO);
}

#[test]
fn oracle_diff_rejects_inconsistent_reports() {
    let dir = tempdir().unwrap();
    let reports = write_reports(dir.path(), &["x^2-2"]);
    let text = fs::read_to_string(&reports).unwrap().replace("\"t\":\"2\"", "\"t\":\"3\"");
    fs::write(&reports, text).unwrap();
    let oracle = dir.path().join("oracle.json");
    fs::write(&oracle, ORACLE).unwrap();
    let (code, _, err) = call(&["oracle-diff", reports.to_str().unwrap(), oracle.to_str().unwrap()]);
    assert_eq!(code, exit::PARSE, "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tracefield");
    let st = std::process::Command::new(bin).args(["analyze", "x^2-1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(exit::REDUCIBLE));
    let st = std::process::Command::new(bin).args(["analyze", "x^2+1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(exit::OK));
    assert!(String::from_utf8_lossy(&st.stdout).contains("d_K             -4"));
}

/// Squarefree kernel of a nonzero integer by trial division.
fn squarefree(mut d: i64) -> i64 {
    let sign = d.signum();
    d = d.abs();
    let mut core = 1;
    let mut q = 2;
    while q * q <= d {
        let mut e = 0;
        while d % q == 0 {
            d /= q;
            e += 1;
        }
        if e % 2 == 1 {
            core *= q;
        }
        q += 1;
    }
    sign * core * d
}

#[test]
fn quadratic_hunt_matches_brute_force() {
    let (code, out, _) = call(&["hunt", "--degree", "2..2", "--bound", "5"]);
    assert_eq!(code, exit::OK);
    let mut seen = 0;
    for line in out.lines() {
        let r = FieldReport::from_json(line).unwrap();
        assert!(r.conjecture_status.starts_with("consistent"), "{line}");
        let f = r.parsed_polynomial();
        let (b, c): (i64, i64) = (f.coeff(1).try_into().unwrap(), f.coeff(0).try_into().unwrap());
        let d = squarefree(b * b - 4 * c);
        let (dk, t) = if d.rem_euclid(4) == 1 { (d, 1) } else { (4 * d, 2) };
        assert_eq!(r.d_k.0, dk.into(), "{line}");
        assert_eq!(r.t.0, t.into(), "{line}");
        seen += 1;
    }
    assert!(seen > 50 && seen <= 120, "{seen}");
}
