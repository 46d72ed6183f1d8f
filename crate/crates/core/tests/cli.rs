use std::io::Write;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn rank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank"))
        .args(args)
        .output()
        .expect("spawn rank")
}

fn rank_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn rank");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn landau_table_shows_six_digit_shares() {
    let o = rank(&["tournament", "--input-file", &data("a1_games.csv")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0.666667"), "{out}");
    // Score and share columns for players 2 and 3.
    assert_eq!(out.matches("0.166667").count(), 4, "{out}");
}

#[test]
fn methods_from_a_matrix_on_stdin() {
    let kendall = std::fs::read_to_string(data("kendall.txt")).unwrap();
    let o = rank_stdin(
        &[
            "tournament",
            "--input",
            "matrix",
            "--method",
            "iterate:2",
            "--format",
            "json",
        ],
        &kendall,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["method"], "iterate:2");
    assert_eq!(v["scores"][0]["id"], "1");
    assert_eq!(v["scores"][0]["score"], 14.25);
    assert_eq!(v["scores"][1]["score"], 11.25);
    assert_eq!(v["diagnostics"]["validation"]["valid"], false);

    let o = rank_stdin(
        &[
            "tournament",
            "--input",
            "matrix",
            "--method",
            "rowsum",
            "--format",
            "csv",
        ],
        &kendall,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 7);
}

#[test]
fn web_patent_example() {
    let o = rank(&[
        "web",
        "--alpha",
        "0",
        "--format",
        "json",
        "--input-file",
        &data("patent_edges.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let score = |id: &str| {
        v["scores"].as_array().unwrap().iter().find(|e| e["id"] == id).unwrap()["score"]
            .as_f64()
            .unwrap()
    };
    assert!((score("A") - 0.4).abs() < 1e-9);
    assert!((score("B") - 0.2).abs() < 1e-9);
    assert!((score("C") - 0.4).abs() < 1e-9);
    assert!(v["diagnostics"]["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn analyze_reducible_tournament() {
    let o = rank(&["analyze", "--format", "json", "--input-file", &data("a2_games.csv")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["scc_count"], 3);
    assert_eq!(v["dangling"], serde_json::json!(["p1"]));

    let o = rank(&[
        "analyze",
        "--input",
        "edges",
        "--format",
        "json",
        "--input-file",
        &data("patent_edges.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["irreducible"], true);
}

#[test]
fn single_participant() {
    let o = rank_stdin(&["tournament", "--input", "matrix", "--format", "json"], "0\n");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["scores"][0]["share"], 1.0);
    assert_eq!(v["scores"][0]["rank"], 1);
}

#[test]
fn duplicate_pairings_need_lenient_mode() {
    let season = "a,b,1-0\nb,a,1-0\n";
    let o = rank_stdin(&["tournament", "--method", "rowsum", "--scheme", "football"], season);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = rank_stdin(
        &[
            "tournament",
            "--method",
            "rowsum",
            "--scheme",
            "football",
            "--no-strict",
            "--format",
            "json",
        ],
        season,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["scores"][0]["score"], 3.0);
}

#[test]
fn input_errors_exit_with_one() {
    for (args, input) in [
        (&["tournament"][..], "a,a,1-0\n"),
        (&["tournament"][..], "a,b,2-0\n"),
        (&["tournament", "--input", "matrix"][..], "0 1\n0\n"),
        (&["tournament", "--input", "matrix"][..], "0 -1\n1 0\n"),
        (&["web"][..], "A B 0\n"),
        (&["web", "--alpha", "1.5"][..], "A B\n"),
        (&["tournament", "--method", "iterate:0"][..], "a,b,1-0\n"),
        (&["tournament", "--method", "bogus"][..], "a,b,1-0\n"),
        (&["frobnicate"][..], ""),
    ] {
        let o = rank_stdin(args, input);
        assert_eq!(o.status.code(), Some(1), "{args:?} on {input:?}");
    }
    let o = rank(&["tournament", "--input-file", "/nonexistent/games.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn non_convergence_exits_with_two_after_printing_the_report() {
    let o = rank_stdin(
        &[
            "tournament",
            "--input",
            "matrix",
            "--method",
            "landau",
            "--max-iter",
            "1",
            "--format",
            "json",
        ],
        "0 1 1/2\n0 0 1\n1/2 0 0\n",
    );
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["converged"], false);
    assert_eq!(v["status"], "max_iterations");

    // An ε schedule too short to stabilize at the requested limit tolerance.
    let o = rank_stdin(
        &[
            "tournament",
            "--input",
            "matrix",
            "--epsilon-schedule",
            "0.1,0.01",
            "--limit-tol",
            "1e-15",
        ],
        "0 1 1\n0 0 1\n0 0 0\n",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(rank(&["--help"]).status.code(), Some(0));
    assert_eq!(rank(&["--version"]).status.code(), Some(0));
    let help = stdout(&rank(&["web", "--help"]));
    assert!(help.contains("1 - alpha"));
}
