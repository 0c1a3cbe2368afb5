use super::execute;

struct Run {
    code: i32,
    stdout: String,
}

fn run(args: &[&str]) -> Run {
    let f = execute(std::iter::once("bkpoles").chain(args.iter().copied()));
    Run {
        code: i32::from(f.code),
        stdout: f.stdout,
    }
}

fn stdout(o: &Run) -> String {
    o.stdout.clone()
}

fn code(o: &Run) -> i32 {
    o.code
}

fn json(o: &Run) -> serde_json::Value {
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn c4_tables_follow_the_closed_form() {
    let o = run(&["tables", "--type", "C", "--rank", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let row = |n: &str| {
        text.lines()
            .find(|l| l.starts_with(n))
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ")
    };
    assert_eq!(row("1 "), "1 {0} 3");
    assert_eq!(row("2 "), "2 {0, -1} {-3} 5/2");
    assert_eq!(row("3 "), "3 {0, -1, -2} {-2} 2");
    assert_eq!(row("4 "), "4 {0} {-1, -2} 3/2");
}

#[test]
fn g2_node1_table() {
    let o = run(&[
        "tables", "--type", "G", "--rank", "2", "--node", "1", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = json(&o);
    let row = &v[0]["rows"][0];
    assert_eq!(row["levels"]["1"], serde_json::json!(["0"]));
    assert_eq!(row["levels"]["2"], serde_json::json!(["-2"]));
    assert_eq!(row["s_k"], "3/2");
}

#[test]
fn latex_tables_use_fractions() {
    let o = run(&["tables", "--type", "C4", "--format", "latex"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("\\begin{tabular}"));
    assert!(text.contains("$\\tfrac{3}{2}$"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["tables", "--type", "G", "--rank", "2", "--node", "3"][..],
        &["verify", "--checks", "bogus"],
        &["tables", "--format", "yaml"],
        &["tables", "--rank", "3"],
        &["tables", "--type", "Q"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_g2_succeeds() {
    let o = run(&["verify", "--type", "G", "--rank", "2", "--checks", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verify_reports_a_replayable_counterexample() {
    let o = run(&[
        "verify", "--type", "D", "--rank", "5", "--node", "2", "--checks", "comb-", "--format", "json",
    ]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = json(&o);
    assert_eq!(v[0]["status"], "failed");
    assert_eq!(v[0]["stats"]["violating_edges"], 3);
    assert_eq!(v[0]["counterexample"]["new_coroot"], serde_json::json!([1, 1, 0, 0, 0]));
}

#[test]
fn verify_json_is_deterministic_across_jobs() {
    let base = ["verify", "--type", "B", "--rank", "4", "--format", "json"];
    let a = run(&[&base[..], &["--jobs", "1"]].concat());
    let b = run(&[&base[..], &["--jobs", "3"]].concat());
    let c = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn timings_are_opt_in() {
    let base = ["verify", "--type", "A", "--rank", "2", "--format", "json"];
    assert!(!stdout(&run(&base)).contains("millis"));
    assert!(stdout(&run(&[&base[..], &["--timings"]].concat())).contains("millis"));
}

#[test]
fn appendix_compare_allowlists_exceptional_sk() {
    let o = run(&["appendix-compare", "--type", "G", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = json(&o);
    assert_eq!(v["allowlisted"], 2);
    assert_eq!(v["unexpected"], 0);
    let o = run(&["appendix-compare", "--type", "E8", "--node", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = json(&o);
    assert_eq!(v["allowlisted"], 2);
}

#[test]
fn quotient_size_matches_the_index() {
    let o = run(&["quotient", "--type", "G", "--rank", "2", "--node", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("|W/W_M| = 6 (expected 6)"));
}

#[test]
fn words_reproduce_g2_tables_and_rewrite() {
    let o = run(&["words", "--type", "G2", "--node", "1", "--check-tables"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("s1s2s1s2s1"));
    let o = run(&[
        "words",
        "--type",
        "D4",
        "--node",
        "2",
        "--rewrites",
        "500",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn non_reduced_word_is_rejected() {
    let o = run(&["words", "--type", "A2", "--node", "1", "--word", "s1s1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn eisenstein_a1() {
    let o = run(&["eisenstein", "--type", "A1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = json(&o);
    let xs: Vec<&str> = v[0]["gamma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["real_part"].as_str().unwrap())
        .collect();
    assert_eq!(xs, ["0", "-1"]);
    assert_eq!(v[0]["n_max"], 1);
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("bkpoles-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.json");
    let o = run(&[
        "tables",
        "--type",
        "G2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let direct = run(&["tables", "--type", "G2", "--format", "json"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
