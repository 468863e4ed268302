use std::path::PathBuf;
use std::process::{Command, Output};

fn qtrunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtrunc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

#[test]
fn expands_the_euler_product() {
    let out = qtrunc(&["expand", "euler_product", "--order", "7"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(
        lines,
        ["q^0 1", "q^1 -1", "q^2 -1", "q^5 1", "q^7 1", "O(q^8)"]
    );
}

#[test]
fn expands_partition_counts_as_json() {
    let out = qtrunc(&["expand", "partition_gf", "--order", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value = &json_lines(&out)[0];
    let text = value.to_string();
    for c in ["1", "2", "3", "5", "7", "11"] {
        assert!(text.contains(c), "{text}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        code(&qtrunc(&["verify", "--id", "andrews_merca", "--k", "0"])),
        2
    );
    assert_eq!(code(&qtrunc(&["verify", "--id", "no_such_identity"])), 2);
    assert_eq!(code(&qtrunc(&["verify"])), 2);
    assert_eq!(
        code(&qtrunc(&["verify", "--id", "kolitsch", "--m", "0"])),
        2
    );
    assert_eq!(code(&qtrunc(&["expand", "nonsense"])), 2);
    assert_eq!(
        code(&qtrunc(&["certificate", "check", "--id", "andrews_merca"])),
        2
    );
}

#[test]
fn symbolic_m_uses_the_cleared_form() {
    let out = qtrunc(&[
        "verify",
        "--id",
        "thm_infinite",
        "--m",
        "symbolic",
        "--k",
        "1..4",
        "--order",
        "60",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("PASS"))
            .count(),
        4
    );
}

#[test]
fn full_catalogue_passes() {
    let out = qtrunc(&[
        "verify", "--all", "--k", "1..6", "--m", "1..4", "--order", "120",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn reports_follow_input_order() {
    let out = qtrunc(&[
        "verify",
        "--id",
        "yao",
        "--id",
        "andrews_merca",
        "--k",
        "1..3",
        "--m",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let ids: Vec<String> = json_lines(&out)
        .iter()
        .map(|v| v["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        ids,
        [
            "yao",
            "yao",
            "yao",
            "andrews_merca",
            "andrews_merca",
            "andrews_merca"
        ]
    );
    let ks: Vec<i64> = json_lines(&out)
        .iter()
        .map(|v| v["params"]["k"].as_i64().unwrap())
        .collect();
    assert_eq!(ks, [1, 2, 3, 1, 2, 3]);
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &[
            "verify", "--all", "--k", "1..3", "--m", "symbolic", "--order", "40", "--format",
            "json",
        ][..],
        &[
            "certificate",
            "check",
            "--id",
            "thm_infinite",
            "--grid",
            "4",
            "--k",
            "1..3",
            "--format",
            "json",
        ][..],
        &[
            "expand",
            "thm_infinite.lhs",
            "--k",
            "2",
            "--m",
            "symbolic",
            "--cleared",
            "--order",
            "30",
            "--format",
            "json",
        ][..],
    ] {
        let (a, b) = (qtrunc(args), qtrunc(args));
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        json_lines(&a);
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = qtrunc(&[
        "verify",
        "--id",
        "andrews_merca",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert!(json_lines(&plain)[0]["millis"].is_null());
    let timed = qtrunc(&[
        "verify",
        "--id",
        "andrews_merca",
        "--k",
        "1",
        "--format",
        "json",
        "--timing",
    ]);
    assert!(json_lines(&timed)[0]["millis"].is_u64());
}

#[test]
fn writes_to_out_path() {
    let path = scratch("expand_out.txt");
    let out = qtrunc(&[
        "expand",
        "euler_product",
        "--order",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("q^0"));
}

#[test]
fn shipped_certificate_checks() {
    let out = qtrunc(&[
        "certificate",
        "check",
        "--id",
        "thm_naturalreplace",
        "--grid",
        "12",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("symbolic identity holds"));
}

#[test]
fn corrupted_certificate_file_fails() {
    let mut json: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../core/data/thm_naturalreplace.json"
        ))
        .unwrap(),
    )
    .unwrap();
    let first = &mut json["r_num"]["factors"][0]["lines"][0]["terms"][0][0];
    let coef = first.as_str().unwrap().to_string();
    *first = serde_json::Value::String(match coef.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None => format!("-{coef}"),
    });
    let path = scratch("corrupted.certificate.json");
    std::fs::write(&path, json.to_string()).unwrap();
    let out = qtrunc(&[
        "certificate",
        "check",
        "--id",
        "thm_naturalreplace",
        "--file",
        path.to_str().unwrap(),
        "--grid",
        "5",
        "--k",
        "1..3",
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("FAIL"));
}

#[test]
fn discovery_writes_a_checkable_certificate() {
    let path = scratch("naturalreplace.certificate.json");
    let out = qtrunc(&[
        "certificate",
        "discover",
        "--id",
        "thm_naturalreplace",
        "--order",
        "2",
        "--write",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report = &json_lines(&out)[0];
    assert_eq!(report["status"], "FOUND");
    assert_eq!(report["matches_printed"], true);
    let check = qtrunc(&[
        "certificate",
        "check",
        "--id",
        "thm_naturalreplace",
        "--file",
        path.to_str().unwrap(),
        "--grid",
        "6",
        "--k",
        "1..4",
    ]);
    assert_eq!(code(&check), 0, "{}", stdout(&check));
}

#[test]
fn first_order_search_reports_ranks() {
    let out = qtrunc(&[
        "certificate",
        "discover",
        "--id",
        "thm_infinite",
        "--order",
        "1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("NOT FOUND"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("rank"), "{stderr}");
}
