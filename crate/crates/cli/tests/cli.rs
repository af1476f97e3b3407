use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_tightsrg");

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tightsrg");
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            input.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: Option<&str>) -> i32 {
    run(args, stdin).status.code().unwrap()
}

#[test]
fn scan_csv_matches_published_rows() {
    let facts = data("facts.txt");
    let args = [
        "scan",
        "--min-v",
        "200",
        "--max-v",
        "1300",
        "--facts-file",
        &facts,
        "--format",
        "csv",
    ];
    let csv = ok(&args, None);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "v,k,lambda,mu,e+,e-,m-,s1,s2,#");
    assert_eq!(lines.len(), 26);
    assert_eq!(lines[1], "245,52,3,13,3,-13,49,1,4,2");
    assert!(lines.contains(&"266,45,0,9,3,-12,56,0,3,56"));
    assert_eq!(ok(&args, None), csv, "byte-stable");
}

#[test]
fn scan_without_facts_notes_literature() {
    let text = ok(&["scan", "--min-v", "260", "--max-v", "270"], None);
    assert!(text.contains("literature fact available"));
    let small = ok(
        &["scan", "--min-v", "1", "--max-v", "100", "--format", "csv"],
        None,
    );
    assert!(small.contains("\n76,") && small.contains("\n77,16,0,4,"));
}

#[test]
fn scan_rejects_empty_range() {
    assert_eq!(code(&["scan", "--min-v", "200", "--max-v", "199"], None), 2);
    assert_eq!(
        code(&["scan", "--max-v", "100", "--format", "xml"], None),
        2
    );
}

#[test]
fn analyze_reports_and_fails() {
    let text = ok(&["analyze", "--eplus", "2", "--eminus", "-6"], None);
    assert!(text.contains("(77,16,0,4)") && text.contains("max cocliques     22"));
    let row = ok(&["analyze", "--eplus", "3", "--eminus", "-17"], None);
    assert!(row.contains("max cocliques     0"), "{row}");
    let out = run(&["analyze", "--eplus", "2", "--eminus", "-5"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("35/3"));
    let json = ok(
        &["analyze", "--from-params", "77,16,0,4", "--format", "json"],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["bound"]["bound"], 22);
    assert_eq!(code(&["analyze", "--from-params", "77,16"], None), 2);
}

#[test]
fn kneser_cocliques_pipeline() {
    let g = ok(&["graph", "construct", "kneser2", "5"], None);
    let out = ok(&["graph", "cocliques", "-"], Some(&g));
    let lists: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lists.len(), 5);
    assert!(out.contains("# pairwise intersection sizes: 1\n"));
    assert!(out.contains("# triple intersection sizes: 0\n"));
    assert_eq!(code(&["graph", "construct", "kneser2", "3"], None), 2);
}

#[test]
fn m22_has_22_cocliques() {
    let g = ok(&["graph", "construct", "m22"], None);
    let out = ok(
        &[
            "--threads",
            "2",
            "graph",
            "cocliques",
            "-",
            "--format",
            "json",
        ],
        Some(&g),
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 22);
    assert_eq!(v["pairwise"], serde_json::json!([5]));
    assert_eq!(v["triple"], serde_json::json!([1]));
}

#[test]
fn petersen_extends_to_clebsch() {
    let g = ok(&["graph", "construct", "petersen"], None);
    let h = ok(&["graph", "extend-lemma71", "-"], Some(&g));
    let out = ok(&["graph", "verify", "-"], Some(&h));
    assert!(out.starts_with("srg (16,5,0,2)\n"), "{out}");
    let k6 = ok(&["graph", "construct", "kneser2", "6"], None);
    assert_eq!(code(&["graph", "extend-lemma71", "-"], Some(&k6)), 1);
}

#[test]
fn graph_verify_failures() {
    // path on three vertices
    assert_eq!(code(&["graph", "verify", "-"], Some("Bg\n")), 1);
    assert_eq!(code(&["graph", "verify", "-"], Some("not graph6 ~~~\n")), 2);
    assert_eq!(code(&["graph", "verify", "/nonexistent/file"], None), 2);
}

#[test]
fn design_check_fano() {
    let out = ok(&["design", "check", &data("fano.blk")], None);
    assert!(out.starts_with("2-(7,3,1)"));
    assert!(out.contains("\nsymmetric\n"));
    assert_eq!(code(&["design", "check", &data("biplane16.blk")], None), 1);
    assert_eq!(code(&["design", "check", "-"], Some("7 2\n0 1 2\n")), 2);
}

#[test]
fn design_extend_statuses() {
    let base = data("biplane16.blk");
    let out = ok(
        &[
            "design",
            "extend",
            &base,
            "--target-quasisym",
            "21,6,4,0,2,56",
            "--max-nodes",
            "1e8",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "found");
    assert!(v["design"].as_str().unwrap().starts_with("21 56\n"));
    let out = ok(
        &[
            "design",
            "extend",
            &base,
            "--target-quasisym",
            "21,6,4,0,2,56",
            "--max-nodes",
            "10",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "budget-exhausted");
    let fano = data("fano.blk");
    let args = [
        "design",
        "extend",
        &fano,
        "--target-quasisym",
        "7,3,1,0,2,7",
        "--max-nodes",
        "x",
    ];
    assert_eq!(code(&args, None), 2);
}

#[test]
fn design_params_equality_design() {
    let out = ok(
        &["design", "params", "--eplus", "5", "--eminus", "-45"],
        None,
    );
    assert!(out.contains("equality design 2-(111,11,1)"));
}
