use std::process::{Command, Output};

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .env_remove("QUARTIC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dlm_table_csv() {
    let o = quartic(&["dlm", "table", "--m-max", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("m,l,d"));
    assert_eq!(lines.next(), Some("0,0,1/1"));
    assert!(s.contains("\n2,1,15/4\n"));
    assert_eq!(s.lines().count(), 1 + 66);
    assert!(!s.contains('\r'));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "dlm", "table", "--m-max", "12", "--format", "csv", "--jobs", "3",
    ];
    assert_eq!(quartic(&args).stdout, quartic(&args).stdout);
    let fisk = [
        "concavity",
        "fisk",
        "--samples",
        "40",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    assert_eq!(quartic(&fisk).stdout, quartic(&fisk).stdout);
}

#[test]
fn tree_formula_text() {
    let o = quartic(&["tree", "formula", "--l", "13", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 14);
    assert!(s.contains("36 + nu2((m+7)/8)  if m = 1 mod 8"));
    assert!(s.contains("40 + nu2(m/16)  if m = 0 mod 16"));
}

#[test]
fn identities_pass() {
    let o = quartic(&[
        "verify",
        "identities",
        "--ids",
        "pretty,sum1",
        "--m-max",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn tree_dot_has_split() {
    let o = quartic(&["tree", "build", "--l", "5", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("digraph T5 {"));
    assert!(s.contains("[label=\"2^3(m-1)+8\", shape=box, gamma=16"));
    assert!(s.contains("[label=\"2^2(m-1)+4\"]"));
}

#[test]
fn report_json_schema() {
    let o = quartic(&[
        "concavity",
        "probe",
        "--seq",
        "1,4,6,4,1",
        "--depth",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["id", "passed", "range", "witness", "details"]);
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn failure_prints_witness() {
    let o = quartic(&["concavity", "probe", "--seq", "1,1,5", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(v["failures"][0]["witness"]["at"], "depth=1 j=1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quartic(&["nope"]).status.code(), Some(2));
    assert_eq!(quartic(&["dlm", "table"]).status.code(), Some(2));
    assert_eq!(
        quartic(&["dlm", "value", "--l", "5", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        quartic(&[
            "valuation",
            "series",
            "--p",
            "4",
            "--l",
            "1",
            "--m-max",
            "5"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = quartic(&["dlm", "table", "--m-max", "3", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not available"));
    assert_eq!(quartic(&["--help"]).status.code(), Some(0));
}

#[test]
fn series_csv_columns() {
    let o = quartic(&[
        "valuation",
        "series",
        "--p",
        "17",
        "--l",
        "1",
        "--m-max",
        "100",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("m,nu,err_num,err_den\n1,0,-1,16\n"));
    assert_eq!(s.lines().count(), 101);
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args([
            "q",
            "gaussian",
            "--n",
            "4",
            "--k",
            "2",
            "--format",
            "csv",
            "--output",
            "sub/g.csv",
        ])
        .env("QUARTIC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(dir.path().join("sub/g.csv")).unwrap();
    assert_eq!(body, "n,k,poly\n4,2,1 + q + 2q^2 + q^3 + q^4\n");
}

#[test]
fn q_commands() {
    let o = quartic(&["q", "witness", "--n-max", "12", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,k,depth,exponent,coefficient\n2,1,2,0,-1\n");
    let o = quartic(&[
        "q", "lowdeg", "--n", "2", "--u", "2", "--v", "1", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "n,u,v,exponent,coefficient\n2,2,1,-8,-1\n");
    let o = quartic(&[
        "q",
        "probe",
        "--family",
        "diagonal:4,1,2",
        "--depth",
        "2",
        "--bound",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = quartic(&["q", "quantum", "--n", "2", "--k", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,k,poly\n2,1,q^-1 + q\n");
}

#[test]
fn integral_and_roots() {
    let o = quartic(&["integral", "check", "--a", "5/2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = quartic(&["integral", "check", "--a", "-1", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quartic(&["roots", "certify", "--l-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6 + 5 + 1);
}

#[test]
fn valuation_subcommands() {
    let o = quartic(&["valuation", "blocks", "--l-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let o = quartic(&["valuation", "reduce", "--l", "13", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"omega\": \"1,2,1\""));
    let o = quartic(&["verify", "trees", "--l-max", "3"]);
    assert_eq!(o.status.code(), Some(1));
}
