use assert_cmd::Command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::cargo_bin("hanoi2p")
        .unwrap()
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn golden(args: &[&str], file: &str) {
    let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
    let expected = std::fs::read_to_string(path).unwrap();
    let (code, out) = run(args);
    assert_eq!(code, 0);
    if file.ends_with(".json") {
        let a: Value = serde_json::from_str(&out).unwrap();
        let b: Value = serde_json::from_str(&expected).unwrap();
        assert_eq!(a, b, "{file}");
    }
    assert_eq!(out, expected, "{file}");
}

#[test]
fn four_peg_three_disk_game_is_drawn() {
    let (code, out) = run(&["solve", "--disks", "3", "--pegs", "4", "--ec", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Draw\n"));
    assert!(out.contains("agreement: yes"));
}

#[test]
fn solve_reports_oracle_agreement_as_json() {
    for ec in [
        "to-peg",
        "return-largest",
        "return-smallest",
        "any-largest",
        "any-smallest",
    ] {
        let (code, out) = run(&["solve", "--disks", "4", "--ec", ec, "--json"]);
        assert_eq!(code, 0, "{ec}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["agreement"], true);
        assert_eq!(v["verdict"]["outcome"], "FirstWin");
        assert_eq!(v["oracle"]["radius"], v["verdict"]["bounds"]["upper"]);
    }
}

#[test]
fn table_row_replays_under_ec2() {
    let (code, out) = run(&[
        "replay",
        "--disks",
        "2",
        "--seq",
        "13-12-13-23-12-13-12",
        "--ec",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("legal: yes"));
    assert!(out.contains("moves: 7"));
    assert!(out.contains("terminal: yes"));
}

#[test]
fn illegal_replay_is_a_verification_failure() {
    let (code, out) = run(&["replay", "--disks", "2", "--seq", "13-31"]);
    assert_eq!(code, 1);
    assert!(out.contains("failed at move 2"));
}

#[test]
fn replay_from_a_state() {
    let state = "pegs=3;disks=3;pos=3,3,1;last=3;flags=11";
    let (code, out) = run(&[
        "replay",
        "--disks",
        "3",
        "--state",
        state,
        "--seq",
        "(13-23-13-12-23-13-23-12)^2",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["legal"], true);
    assert_eq!(v["plies"], 16);
    assert_eq!(v["final_state"], state);
}

#[test]
fn region_reproduces_draw_and_win_points() {
    let (code, out) = run(&[
        "region", "--disks", "2", "--ec", "1", "--w23", "-3", "--grid", "-6:6:1",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "w12,w13,outcome");
    assert_eq!(lines.len(), 1 + 13 * 13);
    assert!(lines.contains(&"-3,-3,Draw"));
    assert!(lines.contains(&"2,2,FirstWin"));
}

#[test]
fn score_cross_checks_search() {
    let (code, out) = run(&[
        "score", "--disks", "2", "--ec", "4", "--w12", "1", "--w13", "-2", "--w23", "-2",
        "--search", "30",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("agreement: yes"), "{out}");
}

#[test]
fn json_outputs_match_golden_files() {
    golden(
        &[
            "score", "--disks", "3", "--ec", "1", "--w12", "-1", "--w13", "1/2", "--w23", "0.75",
            "--json",
        ],
        "score_n3_ec1.json",
    );
    golden(
        &[
            "strategy", "--disks", "4", "--ec", "2", "--w12", "-1", "--w13", "-2", "--w23", "1",
            "--json",
        ],
        "strategy_n4_ec2.json",
    );
    golden(
        &["minmoves", "--disks", "2", "--ec", "5", "--json"],
        "minmoves_n2_ec5.json",
    );
    golden(
        &[
            "replay",
            "--disks",
            "2",
            "--ec",
            "2",
            "--seq",
            "13-12-13-23-12-13-12",
            "--w12",
            "1",
            "--w13",
            "2",
            "--w23",
            "3",
            "--json",
        ],
        "replay_row1.json",
    );
    golden(&["graph", "--disks", "2"], "graph_n2.dot");
}

#[test]
fn dot_export_is_stable() {
    let a = run(&["graph", "--disks", "3", "--highlight"]);
    let b = run(&["graph", "--disks", "3", "--highlight"]);
    assert_eq!(a, b);
    assert_eq!(a.1.matches(" -- ").count(), 39);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["solve", "--disks", "0"][..],
        &["solve", "--ec", "9"],
        &["solve", "--start", "2", "--final", "2"],
        &["score", "--disks", "3"],
        &["score", "--w12", "1", "--w13", "2"],
        &["score", "--w12", "x", "--w13", "2", "--w23", "1"],
        &["replay", "--seq", "1-"],
        &["region", "--w23", "0", "--grid", "1:0:1"],
        &["bogus"],
    ] {
        assert_eq!(run(args).0, 2, "{args:?}");
    }
}

#[test]
fn verify_paper_itemizes_results() {
    let (code, out) = run(&["verify-paper", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let items = v["items"].as_array().unwrap();
    assert!(items.len() > 100);
    let failed: Vec<&Value> = items.iter().filter(|i| i["pass"] == false).collect();
    assert_eq!(code, if failed.is_empty() { 0 } else { 1 });
    for f in &failed {
        let name = f["name"].as_str().unwrap();
        assert!(
            name.starts_with("published minimum"),
            "unexpected failure: {f}"
        );
    }
    let (_, again) = run(&["verify-paper", "--json"]);
    assert_eq!(out, again);
}
