use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sumperfect(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sumperfect"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_k33_edge_list() {
    let mut input = String::from("6\n");
    for u in 0..3 {
        for v in 3..6 {
            input += &format!("{u} {v}\n");
        }
    }
    let o = sumperfect(&["analyze", "--format", "json", "--witness"], &input);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["alpha"], 3);
    assert_eq!(v["omega"], 2);
    assert_eq!(v["nu"], 3);
    assert_eq!(v["sum_perfect"], false);
    assert_eq!(v["forbidden_index"], 13);
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn analyze_text_and_all_witnesses() {
    let o = sumperfect(&["analyze", "--all-witnesses"], "Dhc\nC~\n");
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("copy:")).count(), 1);
    assert!(out.contains("H1:C5"));
}

#[test]
fn analyze_reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.g6");
    std::fs::write(&path, ">>graph6<<Dhc\n").unwrap();
    let o = sumperfect(&["analyze", "--format", "json", path.to_str().unwrap()], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let missing = sumperfect(&["analyze", "/nonexistent/graphs"], "");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn family_round_trips() {
    for (set, count) in [("F", 27), ("B", 24)] {
        let o = sumperfect(&["family", "--set", set, "--format", "graph6"], "");
        let lines = stdout(&o);
        assert_eq!(lines.lines().count(), count);
        let check = sumperfect(&["recognize", "--format", "json"], &lines);
        for line in stdout(&check).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["member"], false);
        }
    }
    let json = sumperfect(&["family", "--format", "json"], "");
    let first: serde_json::Value = serde_json::from_str(stdout(&json).lines().next().unwrap()).unwrap();
    assert_eq!(first["name"], "C5");
    let edges = sumperfect(&["family", "--set", "B", "--format", "edges"], "");
    assert_eq!(stdout(&edges).lines().filter(|l| l.starts_with("# H")).count(), 24);
}

#[test]
fn recognize_other_classes() {
    let o = sumperfect(&["recognize", "--class", "threshold", "--witness"], "Dhc\n");
    assert!(stdout(&o).contains("forbidden_copy"));
    let o = sumperfect(&["recognize", "--class", "perfect", "--format", "json"], "Dhc\nC~\n");
    let members: Vec<bool> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["member"].as_bool().unwrap())
        .collect();
    assert_eq!(members, vec![false, true]);
    let o = sumperfect(&["recognize", "--class", "deficiency:1"], "Dhc\n");
    assert!(stdout(&o).ends_with("yes\n"));
}

#[test]
fn mine_is_deterministic_across_jobs() {
    let a = sumperfect(&["mine", "--class", "deficiency:1", "--max-n", "7", "--jobs", "1"], "");
    let b = sumperfect(&["mine", "--class", "deficiency:1", "--max-n", "7", "--jobs", "3"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let summary = stdout(&a).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(v["class"], "deficiency:1");
    assert_eq!(v["total"], 18);
}

#[test]
fn mine_from_source_and_checkpoint() {
    let family = stdout(&sumperfect(&["family", "--format", "graph6"], ""));
    let o = sumperfect(&["mine", "--class", "sum-perfect", "--source", "-", "--format", "json"], &family);
    assert!(o.status.success());
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.contains("\"total\":27"));

    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("mine.cp");
    let args = ["mine", "--class", "threshold", "--max-n", "6", "--checkpoint", cp.to_str().unwrap()];
    let first = sumperfect(&args, "");
    assert!(cp.exists());
    let again = sumperfect(&args, "");
    assert_eq!(first.stdout, again.stdout);
    let other = sumperfect(&["mine", "--class", "perfect", "--max-n", "6", "--checkpoint", cp.to_str().unwrap()], "");
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn verify_targets() {
    let o = sumperfect(&["verify", "threshold", "--max-n", "6", "--format", "json"], "");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["threshold_by_order"]["6"], 32);
    let o = sumperfect(&["verify", "theorem27", "--max-n", "7"], "");
    assert!(stdout(&o).starts_with("theorem27: PASS"));
    let o = sumperfect(&["verify", "conjecture", "--max-n", "7"], "");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sumperfect(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(sumperfect(&["mine", "--class", "sum-perfect", "--max-n", "11"], "").status.code(), Some(2));
    let o = sumperfect(&["analyze"], "not graph6 at all ~~~\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(sumperfect(&["analyze"], "").status.code(), Some(0));
    assert_eq!(sumperfect(&["--help"], "").status.code(), Some(0));
}
