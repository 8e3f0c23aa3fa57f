//! Command-line behavior: exit codes, parameter validation, output formats,
//! and golden-file stability of the table emitter.

use std::process::Command;

fn supq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supq"))
}

#[test]
fn info_reports_group_sizes() {
    let out = supq()
        .args(["-t", "sp", "-n", "2", "-q", "3", "info"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|U| = q^|Phi| = 81"));
    assert!(text.contains("supercharacters: 17"));
}

#[test]
fn info_json_schema() {
    let out = supq()
        .args([
            "-t", "o-even", "-n", "2", "-q", "3", "--format", "json", "info",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], "9");
    assert_eq!(v["classes"], 9);
    assert_eq!(v["supercharacters"], 5);
    assert_eq!(v["phi"], 2);
}

#[test]
fn rejects_even_q() {
    let out = supq().args(["-q", "4", "info"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_non_prime_power_q() {
    let out = supq().args(["-q", "15", "info"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_rank_one_even_orthogonal() {
    let out = supq()
        .args(["-t", "o-even", "-n", "1", "info"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn soft_cap_on_q_requires_force() {
    let out = supq().args(["-q", "19", "info"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = supq()
        .args(["-t", "sp", "-n", "1", "-q", "19", "--force", "info"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn restriction_rejected_beyond_ambient_cap() {
    // sp n=3 needs U_6(q); the restriction check is capped at m = 5
    let out = supq()
        .args(["-t", "sp", "-n", "3", "-q", "3", "verify", "restriction"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("m <= 5"), "stderr: {msg}");
}

#[test]
fn modulus_override() {
    // t^2 + 2t + 2 is irreducible over F_3
    let out = supq()
        .args([
            "-t",
            "sp",
            "-n",
            "1",
            "-q",
            "9",
            "--modulus",
            "2,2,1",
            "info",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("modulus 2 + 2*t + 1*t^2"));
    // a reducible modulus is rejected
    let out = supq()
        .args([
            "-t",
            "sp",
            "-n",
            "1",
            "-q",
            "9",
            "--modulus",
            "1,2,1",
            "info",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exits_zero_on_success() {
    let out = supq()
        .args(["-t", "o-even", "-n", "2", "-q", "3", "verify", "all"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("overall: PASS"));
}

#[test]
fn verify_json_includes_census() {
    let out = supq()
        .args([
            "-t", "o-even", "-n", "2", "-q", "3", "--format", "json", "verify", "formula",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let census = v[0]["census"].as_array().unwrap();
    assert_eq!(census.len(), 5);
    assert!(census.iter().all(|e| e["identity_ok"] == true));
}

#[test]
fn verify_maxdeg_json_includes_witnesses() {
    let out = supq()
        .args([
            "-t", "sp", "-n", "2", "-q", "3", "--format", "json", "verify", "maxdeg",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let md = &v[0]["maxdeg"];
    assert_eq!(md["predicted_degree"], "3");
    assert_eq!(md["predicted_count"], "8");
    assert_eq!(md["witnesses"].as_array().unwrap().len(), 8);
}

#[test]
fn remark_rejected_for_symplectic() {
    let out = supq()
        .args(["-t", "sp", "-n", "2", "-q", "3", "verify", "remark"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_matches_golden_files() {
    let out = supq()
        .args([
            "-t", "o-even", "-n", "2", "-q", "3", "--format", "json", "table",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let golden = include_bytes!("golden/table_d2_q3.json");
    assert_eq!(
        out.stdout, golden,
        "JSON table drifted from the golden file"
    );

    let out = supq()
        .args([
            "-t", "o-even", "-n", "2", "-q", "3", "--format", "csv", "table",
        ])
        .output()
        .unwrap();
    let golden = include_bytes!("golden/table_d2_q3.csv");
    assert_eq!(out.stdout, golden, "CSV table drifted from the golden file");
}

#[test]
fn table_unit_row_and_degree_column() {
    let out = supq()
        .args([
            "-t", "sp", "-n", "2", "-q", "3", "--format", "json", "table",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    // the unit character row is first and all-ones
    assert_eq!(rows[0]["pair"], "1");
    for val in rows[0]["values"].as_array().unwrap() {
        assert_eq!(val[0], "1");
        assert_eq!(val[1], "0");
    }
    // the identity column (class 0) equals the degree for every row
    for row in rows {
        let deg = row["degree"].as_str().unwrap();
        let at_identity = &row["values"][0];
        assert_eq!(at_identity[0].as_str().unwrap(), deg);
        assert_eq!(at_identity[1], "0");
    }
}

#[test]
fn table_text_format_runs() {
    let out = supq()
        .args(["-t", "o-odd", "-n", "1", "-q", "3", "table"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("supercharacter table"));
    assert!(text.contains("xi[1]"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("supq_cli_test_out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d2.json");
    let out = supq()
        .args([
            "-t",
            "o-even",
            "-n",
            "2",
            "-q",
            "3",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
            "table",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, include_bytes!("golden/table_d2_q3.json"));
    std::fs::remove_file(path).ok();
}

#[test]
fn enumeration_cap_is_enforced() {
    let out = supq()
        .args(["-t", "sp", "-n", "2", "-q", "3", "--cap", "80", "info"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("cap"), "stderr: {msg}");
}
