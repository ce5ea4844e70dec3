use std::process::{Command, Output};

fn nlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlie"))
        .args(args)
        .env_remove("NLIE_ORACLE_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn count_prints_value_and_method() {
    let o = nlie(&[
        "count", "--n", "2", "--d", "3", "--w", "5", "--method", "WITT",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "48");
    assert!(stderr(&o).contains("method: WITT"));
}

#[test]
fn count_rejects_unknown_method() {
    let o = nlie(&[
        "count", "--n", "3", "--d", "3", "--w", "3", "--method", "BOGUS",
    ]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unknown method"));
}

#[test]
fn count_reports_inapplicable_method() {
    let o = nlie(&[
        "count", "--n", "3", "--d", "4", "--w", "5", "--method", "EQ14",
    ]);
    assert!(!o.status.success());
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn oracle_ceiling_is_an_error() {
    let o = nlie(&[
        "oracle",
        "--n",
        "3",
        "--d",
        "5",
        "--w",
        "4",
        "--ceiling",
        "50",
    ]);
    assert!(!o.status.success());
}

#[test]
fn enumerate_json_lines_round_trip() {
    let o = nlie(&[
        "enumerate",
        "--n",
        "3",
        "--d",
        "3",
        "--w",
        "4",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut count = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["weight"], 4);
        assert_eq!(v["length"], 7);
        let term = v["term"].as_str().unwrap();
        let back = nlie::parse(term, 3).unwrap();
        assert_eq!(back.to_string(), term);
        count += 1;
    }
    let c = nlie(&[
        "count",
        "--n",
        "3",
        "--d",
        "3",
        "--w",
        "4",
        "--method",
        "ENUM_FULL",
    ]);
    assert_eq!(stdout(&c).trim(), count.to_string());
}

#[test]
fn enumerate_below_arity_is_empty() {
    let o = nlie(&["enumerate", "--n", "4", "--d", "3", "--w", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn enumerate_cap_is_an_error() {
    let o = nlie(&[
        "enumerate",
        "--n",
        "2",
        "--d",
        "3",
        "--w",
        "8",
        "--cap",
        "10",
    ]);
    assert!(!o.status.success());
}

#[test]
fn rewrite_verifies_against_the_oracle() {
    let o = nlie(&["rewrite", "--n", "3", "--verify", "[[x1,x2,x3],x3,x1]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("verified: true"));
}

#[test]
fn rewrite_rejects_bad_input() {
    for expr in ["[x1,x2]", "[x1,x2,", "y1", "[x0,x1,x2]"] {
        let o = nlie(&["rewrite", "--n", "3", expr]);
        assert!(!o.status.success(), "{expr} accepted");
    }
}

#[test]
fn rewrite_budget_warns() {
    let o = nlie(&["rewrite", "--n", "2", "--budget", "0", "[[x3,x2],x1]"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn oracle_prints_a_json_cell() {
    let o = nlie(&["oracle", "--n", "3", "--d", "4", "--w", "3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["dim"], 20);
    assert_eq!(v["n"], 3);
}

#[test]
fn oracle_cache_directory_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let o = nlie(&[
        "oracle",
        "--n",
        "2",
        "--d",
        "3",
        "--w",
        "4",
        "--cache-dir",
        path,
    ]);
    assert!(o.status.success());
    let cached = std::fs::read_to_string(dir.path().join("oracle_cells.jsonl")).unwrap();
    assert_eq!(cached.lines().count(), 1);
    let again = nlie(&[
        "oracle",
        "--n",
        "2",
        "--d",
        "3",
        "--w",
        "4",
        "--cache-dir",
        path,
    ]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn table_rejects_unknown_number() {
    assert!(!nlie(&["table", "--which", "7"]).status.success());
}

#[test]
fn table3_has_eight_coefficients() {
    let o = nlie(&["table", "--which", "3"]);
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(header.split(',').count(), 9);
}

#[test]
fn breakdown_and_lcs() {
    let o = nlie(&["breakdown", "--n", "3", "--d", "4", "--w", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let get = |k: &str| {
        row.get(headers.iter().position(|h| h == k).unwrap())
            .unwrap()
            .to_string()
    };
    assert_eq!(get("basic"), "20");
    assert_eq!(get("kappa_matches"), "true");

    let o = nlie(&[
        "lcs", "--n", "3", "--d", "3", "--i", "2", "--c", "2", "--source", "LADDER",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn lcs_beyond_the_first_quotient() {
    let o = nlie(&[
        "lcs", "--n", "2", "--d", "2", "--i", "2", "--c", "3", "--source", "WITT",
    ]);
    assert_eq!(stdout(&o).trim(), "6");
}
