use mrdom::cli::run;

fn mrdom(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["mrdom"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn result_line(stdout: &str) -> &str {
    stdout.lines().last().unwrap()
}

#[test]
fn solve_complete_three() {
    let (code, out, _) = mrdom(&["solve", "--family", "complete", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("optimum  2"));
    let last = result_line(&out);
    assert!(
        last.starts_with("RESULT ") && last.contains("optimum=2") && last.contains("proven=true"),
        "{last}"
    );
}

#[test]
fn solve_spec_with_brute_force() {
    let (code, out, _) = mrdom(&[
        "solve",
        "--spec",
        "corona(complete(3),complete(3))",
        "--method",
        "brute",
    ]);
    assert_eq!(code, 0);
    assert!(result_line(&out).contains("optimum=-1"));
}

#[test]
fn threads_one_output_is_byte_identical() {
    let args = ["--threads", "1", "solve", "--family", "wheel", "--n", "11"];
    assert_eq!(mrdom(&args).1, mrdom(&args).1);
    let args = [
        "--threads",
        "1",
        "check",
        "--theorem",
        "tree_support_leaf",
        "--range",
        "4..8",
        "--samples",
        "3",
    ];
    assert_eq!(mrdom(&args).1, mrdom(&args).1);
}

#[test]
fn check_star_strict_passes() {
    let (code, out, _) = mrdom(&["check", "--theorem", "star", "--range", "2..12", "--strict"]);
    assert_eq!(code, 0);
    assert!(result_line(&out).contains("rows=11 match=11"), "{out}");
}

#[test]
fn check_strict_fails_on_mismatch() {
    let (code, out, _) = mrdom(&["check", "--theorem", "corona_upper", "--range", "1..14", "--strict"]);
    assert_eq!(code, 2);
    assert!(out.contains("MISMATCH"));
    let (code, _, _) = mrdom(&["check", "--theorem", "corona_upper", "--range", "1..14"]);
    assert_eq!(code, 0);
}

#[test]
fn check_writes_stable_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    let json = dir.path().join("w.jsonl");
    let args = [
        "check",
        "--theorem",
        "wheel",
        "--range",
        "4..9",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ];
    assert_eq!(mrdom(&args).0, 0);
    let first = std::fs::read(&csv).unwrap();
    assert_eq!(mrdom(&args).0, 0);
    assert_eq!(std::fs::read(&csv).unwrap(), first);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("spec,predicted,cert_weight,cert_valid,optimum,verdict\nW_4,1,1,true,1,MATCH\n"));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&json)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0]["verdict"], "MATCH");
    assert_eq!(lines[0]["theorem"], "wheel");
}

#[test]
fn check_explicit_specs() {
    let (code, out, _) = mrdom(&["check", "--theorem", "delta", "--spec", "star(6)", "--spec", "cycle(5)"]);
    assert_eq!(code, 0);
    assert!(out.contains("BOUND_TIGHT"));
}

#[test]
fn gen_then_solve_file_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.el");
    let f = file.to_str().unwrap();
    let (code, out, _) = mrdom(&["--seed", "42", "gen", "--family", "tree", "--n", "10", "-o", f]);
    assert_eq!(code, 0);
    assert!(result_line(&out).contains("n=10 m=9"));
    let (code, out, _) = mrdom(&["solve", "--file", f]);
    assert_eq!(code, 0);
    assert!(result_line(&out).contains("proven=true"));
    let (code, out, _) = mrdom(&["bounds", "--tree", f, "--exact"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("tree   gamma="));
    assert!(out.contains("tree_support_leaf"));
    assert!(out.contains("stated 2n-beta0="));
    assert!(result_line(&out).contains("optimum="));
}

#[test]
fn bounds_rejects_non_tree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.el");
    std::fs::write(&file, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let (code, _, err) = mrdom(&["bounds", "--tree", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not a tree"));
}

#[test]
fn p2_reports_both_support_conventions() {
    let (code, out, _) = mrdom(&["bounds", "--spec", "path(2)"]);
    assert_eq!(code, 0);
    assert!(out.contains("(s,l)=(2,2)") && out.contains("(s,l)=(1,1)"));
}

#[test]
fn cert_validates_figure_one() {
    let (code, out, _) = mrdom(&["cert", "--theorem", "corona_k3", "--n", "1", "--validate"]);
    assert_eq!(code, 0);
    assert!(out.contains("labeling       2,2,2,1,-1,-1,-1,-1,-1,-1,-1,-1"));
    assert!(result_line(&out).contains("weight=-1") && result_line(&out).contains("valid=true"));
    let (code, out, _) = mrdom(&["cert", "--theorem", "cpath", "--n", "12", "--validate"]);
    assert_eq!(code, 0);
    assert!(result_line(&out).contains("defects=0"));
}

#[test]
fn lemma_grid() {
    let (code, out, _) = mrdom(&["lemma", "--n-max", "100", "--m-max", "100"]);
    assert_eq!(code, 0);
    assert!(out.contains("inequality holds on 100×98 grid"));
    assert!(result_line(&out).contains("failures=0"));
}

#[test]
fn floor_mode_is_marked_experimental() {
    let (code, out, _) = mrdom(&["--threshold-mode", "floor", "solve", "--family", "wheel", "--n", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("EXPERIMENTAL"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(mrdom(&["solve", "--bogus"]).0, 1);
    assert_eq!(mrdom(&[]).0, 1);
    assert_eq!(mrdom(&["solve", "--family", "nope", "--n", "3"]).0, 1);
    assert_eq!(mrdom(&["check", "--theorem", "nope", "--range", "1..3"]).0, 1);
    assert_eq!(mrdom(&["check", "--theorem", "wheel", "--range", "9..4"]).0, 1);
    assert_eq!(mrdom(&["solve", "--file", "/nonexistent/g.el"]).0, 1);
    assert_eq!(mrdom(&["--threads", "0", "solve", "--family", "path", "--n", "3"]).0, 1);
    let (code, out, _) = mrdom(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("solve") && out.contains("lemma"));
}
