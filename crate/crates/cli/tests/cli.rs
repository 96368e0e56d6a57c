use std::process::{Command, Output};

fn pcore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn lambda_examples() {
    let three = pcore(&["lambda", "-p", "3", "--emit", "parts"]);
    assert_eq!(three.status.code(), Some(0));
    let text = stdout(&three);
    assert!(text.contains("parts = 4,2,2,1,1\n"));
    assert!(text.contains("size = 10\n"));

    let five = pcore(&["lambda", "-p", "5"]);
    let text = stdout(&five);
    assert!(text.contains("size = 198\n"));
    assert!(text.contains("c = 8\n"));
    assert!(text.contains("ratio_24size_p6 = 0.304128000000\n"));

    let json = pcore(&["lambda", "-p", "5", "--emit", "m,b", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["size"], "198");
    assert_eq!(value["m"], serde_json::json!([4, 2, 2, 3]));
    assert_eq!(value["b"], serde_json::json!([4, 6, 8, 11]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["lambda", "-p", "4"][..],
        &["lambda", "-p", "2"],
        &["lambda", "-p", "307", "--emit", "parts"],
        &["verify", "--min", "10", "--max", "5"],
        &["verify", "--min", "3", "--max", "5", "--checks", "nonsense"],
        &["verify", "--min", "3", "--max", "5", "--workers", "0"],
        &["oracle", "-p", "23", "--mode", "walks"],
        &["oracle", "-p", "5", "--mode", "partitions"],
        &["totient-check", "--n-max", "0"],
        &["table", "--min", "3", "--max", "5", "--format", "text"],
        &[
            "table",
            "--min",
            "3",
            "--max",
            "5",
            "--output",
            "/nonexistent/dir/t.csv",
        ],
        &["frobnicate"],
    ] {
        assert_eq!(pcore(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oracle_examples() {
    let walks = pcore(&["oracle", "-p", "5", "--mode", "walks"]);
    assert_eq!(walks.status.code(), Some(0));
    let text = stdout(&walks);
    assert!(text.contains("size = 198"));
    assert!(text.ends_with("agree\n"));

    let parts = pcore(&["oracle", "-p", "3", "--mode", "partitions"]);
    assert_eq!(parts.status.code(), Some(0));
    assert!(stdout(&parts).contains("best = (4,2,2,1,1)"));

    let dp = pcore(&["oracle", "-p", "101", "--mode", "longest-dp"]);
    assert_eq!(dp.status.code(), Some(0));
    assert!(stdout(&dp).contains("count = 1,"));
}

#[test]
fn table_csv() {
    let out = pcore(&["table", "--min", "3", "--max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "p,size,c,mcdowell_upper,mcspirit_ono,theorem_lower_ok,theorem_upper_ok,ratio_24size_p6"
    );
    assert!(lines[1].starts_with("3,10,2,10,16,"));
    assert!(lines[2].starts_with("5,198,8,289,440,"));
    assert!(lines[2].ends_with(",0.304128000000"));
    assert_eq!(lines.len(), 3);
    assert!(!text.contains('\r'));

    let empty = pcore(&["table", "--min", "24", "--max", "28"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty).lines().count(), 1);
}

#[test]
fn table_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let out = pcore(&[
        "table",
        "--min",
        "3",
        "--max",
        "13",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["meta"]["range"], serde_json::json!([3, 13]));
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1]["size"], "198");
    assert_eq!(rows[1]["mcspirit_ono"], "440");
}

#[test]
fn verify_small_range() {
    let out = pcore(&["verify", "--min", "3", "--max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("checked 45 primes, 0 failed\n"));

    let csv = pcore(&[
        "verify",
        "--min",
        "17",
        "--max",
        "2000",
        "--checks",
        "c-bounds,symmetry,identity",
        "--format",
        "csv",
    ]);
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout(&csv);
    assert!(text.starts_with("p,size,c,passed,failed_checks,not_asserted\n"));
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(3) == Some("true")));

    let json = pcore(&[
        "verify", "--min", "1000003", "--max", "1000003", "--format", "json",
    ]);
    assert_eq!(json.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let row = &value["rows"][0];
    assert_eq!(row["passed"], true);
    let theorem = row["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["name"] == "theorem_lower")
        .unwrap();
    assert_eq!(theorem["applicability"], "asserted");
    assert_eq!(theorem["holds"], true);
}

#[test]
fn totient_check() {
    let out = pcore(&["totient-check", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("min slack = 32/5 at n = 1"));
}
