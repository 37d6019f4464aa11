use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rx3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rx3")).args(args).output().unwrap()
}

fn rx3_with_input(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rx3"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn value_prints_the_index() {
    let o = rx3(&["value", "--t", "13"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
    assert_eq!(stdout(&rx3(&["value", "--t", "43", "--format", "json"])), "{\"k\":8,\"t\":43}\n");
}

#[test]
fn interval_output() {
    assert_eq!(stdout(&rx3(&["interval", "--k", "5"])), "9 20\n");
    assert_eq!(rx3(&["interval", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn construct_pipes_into_verify() {
    for t in ["1", "9", "20", "33"] {
        let built = rx3(&["construct", "--t", t, "--format", "json"]);
        assert_eq!(built.status.code(), Some(0));
        let checked = rx3_with_input(&["verify", "--stdin"], &built.stdout);
        assert_eq!(checked.status.code(), Some(0), "t={t}");
        assert!(stdout(&checked).starts_with("{\"verdict\":\"pass\",\"failing_triple\":null,"));
    }
}

#[test]
fn construct_json_shape() {
    let o = rx3(&["construct", "--t", "3"]);
    assert_eq!(stdout(&o), "{\"t\":3,\"k\":3,\"codes\":[[1,2],[2,1],[1,3]]}\n");
}

#[test]
fn construct_dot() {
    let o = rx3(&["construct", "--t", "2", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph K2_2 {"));
    assert_eq!(dot.matches(" -- ").count(), 4);
}

#[test]
fn verify_reports_the_first_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"t":3,"k":3,"codes":[[1,2],[1,2],[1,2]]}"#).unwrap();
    let o = rx3(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "{\"verdict\":\"fail\",\"failing_triple\":[\"w1\",\"w2\",\"w3\"],\"triples_checked\":1}\n"
    );
}

#[test]
fn verify_rejects_bad_input() {
    let bad = [
        r#"{"t":2,"k":3,"codes":[[1,4]]}"#,
        r#"{"t":1,"k":3,"codes":[[1,4]]}"#,
        r#"{"t":1,"k":3,"codes":[[0,1]]}"#,
        "not json",
    ];
    for doc in bad {
        let o = rx3_with_input(&["verify", "--stdin"], doc.as_bytes());
        assert_eq!(o.status.code(), Some(2), "{doc}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(rx3(&["verify", "--file", "/nonexistent/x.json"]).status.code(), Some(2));
}

#[test]
fn verify_needs_exactly_one_source() {
    assert_eq!(rx3(&["verify"]).status.code(), Some(2));
    assert_eq!(rx3(&["verify", "--stdin", "--file", "x.json"]).status.code(), Some(2));
}

#[test]
fn table_rows_all_verify() {
    let o = rx3(&["table", "--t-min", "1", "--t-max", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 31);
    assert_eq!(lines[0], "t\tk\tverified");
    assert_eq!(lines[13], "13\t5\tyes");
    assert!(lines[1..].iter().all(|l| l.ends_with("\tyes")));
}

#[test]
fn search_records() {
    let o = rx3(&["oracle", "--t", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(record["op"], "oracle");
    assert_eq!(record["result"]["found"], 4);
    assert!(record.get("elapsed_ms").is_none());
    assert!(record["candidates_examined"].as_u64().unwrap() > 0);

    let o = rx3(&["beta", "--b", "3", "--format", "table"]);
    assert_eq!(stdout(&o), "4\n");
    let o = rx3(&["rooks", "--n", "3", "--format", "table"]);
    assert_eq!(stdout(&o), "4\n");
    let o = rx3(&["maxset", "--k", "3", "--format", "table"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn negative_search_answers_exit_one() {
    assert_eq!(rx3(&["oracle", "--t", "5", "--k-max", "3"]).status.code(), Some(1));
    assert_eq!(rx3(&["maxset", "--k", "3", "--t-cap", "3"]).status.code(), Some(1));
}

#[test]
fn budget_refusals_exit_three() {
    let o = rx3(&["oracle", "--t", "9", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert_eq!(
        rx3(&["maxset", "--k", "5", "--distinct", "--t-cap", "21", "--budget", "100"]).status.code(),
        Some(3)
    );
}

#[test]
fn output_is_deterministic() {
    let base = rx3(&["maxset", "--k", "4", "--t-cap", "9"]).stdout;
    for jobs in ["1", "2", "4", "1"] {
        assert_eq!(rx3(&["maxset", "--k", "4", "--t-cap", "9", "--jobs", jobs]).stdout, base);
    }
    let table = rx3(&["table", "--t-max", "12"]).stdout;
    assert_eq!(rx3(&["table", "--t-max", "12", "--jobs", "3"]).stdout, table);
}

#[test]
fn unsupported_format_is_invalid_input() {
    assert_eq!(rx3(&["value", "--t", "3", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(rx3(&["value", "--t", "0"]).status.code(), Some(2));
}
