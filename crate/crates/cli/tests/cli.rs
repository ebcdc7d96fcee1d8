use std::io::Write;
use std::process::{Command, Output};

fn weylinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylinv")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = weylinv(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn error_code(out: &Output) -> String {
    assert!(!out.status.success());
    let v: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is a JSON error object");
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn tables_text_reruns_are_byte_identical() {
    let a = stdout(&["tables", "--type", "E6"]);
    let b = stdout(&["tables", "--type", "E6"]);
    assert_eq!(a, b);
    // The printed grid keeps only the four inner generators.
    assert!(a.contains("psi2  psi3  psi4  psi5"));
    assert!(a.contains("8/9"));
    let grid_rows = a.lines().filter(|l| l.trim_start().starts_with("psi")).count();
    assert_eq!(grid_rows, 10, "header plus four rows per table");
}

#[test]
fn tables_json_carries_rationals_as_strings() {
    let raw = stdout(&["tables", "--type", "A2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["exponents"], serde_json::json!([1, 2]));
    assert_eq!(v["d"][0][0][0]["coeff"], "2");
    assert_eq!(v["d"][0][1][0]["coeff"], "3");
    assert_eq!(v["d"][1][1], serde_json::json!([]));
    assert_eq!(v["c"][0][1][0]["coeff"], "1");
}

#[test]
fn tables_csv_lists_nonzero_terms() {
    let raw = stdout(&["tables", "--type", "D4", "--format", "csv"]);
    assert!(raw.starts_with("section,i,j,target,value\n"));
    assert!(raw.contains("meta,,,exponents,1 3 3 5\n"));
    assert!(raw.contains("d,2,3,4,12\n"));
    // The middle self-pairings of D4 vanish: no d,2,2 or d,3,3 rows.
    assert!(!raw.contains("\nd,2,2,"));
    assert!(!raw.contains("\nd,3,3,"));
}

#[test]
fn unsupported_type_is_a_machine_readable_error() {
    let out = weylinv(&["tables", "--type", "Q17"]);
    assert_eq!(error_code(&out), "unsupported-type");
}

#[test]
fn large_weyl_groups_need_the_flag() {
    let out = weylinv(&["tables", "--type", "E8"]);
    assert_eq!(error_code(&out), "guard");
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-large-weyl"));
}

#[test]
fn seed_override_with_bundled_seeds_is_invisible() {
    let seeds = serde_json::json!({"seeds": [
        "(1/2)*p1^2 + (3/2)*p2",
        "(11/20)*p1^5 - 6*p1^3*p2 + (27/4)*p1*p2^2 + (27/2)*p1^2*p3 \
         - (27/2)*p2*p3 - (27/2)*p1*p4 + (81/5)*p5",
        "(25/8)*p1^6 - (99/8)*p1^4*p2 - (297/8)*p1^2*p2^2 + (243/8)*p2^3 \
         + 270*p1*p2*p3 - 135*p3^2 + (135/2)*p1^2*p4 - (405/2)*p2*p4 \
         - 324*p1*p5 + 324*p6",
    ]});
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{seeds}").unwrap();
    let path = f.path().to_str().unwrap();
    let seeded = stdout(&["tables", "--type", "E6", "--format", "json", "--seed-polynomials", path]);
    let bundled = stdout(&["tables", "--type", "E6", "--format", "json"]);
    assert_eq!(seeded, bundled);
}

#[test]
fn seed_override_rejects_wrong_degrees() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", serde_json::json!({"seeds": ["p1^2", "p2", "p3"]})).unwrap();
    let out = weylinv(&[
        "tables",
        "--type",
        "E6",
        "--seed-polynomials",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(error_code(&out), "compute");
}

#[test]
fn verify_d4_passes_and_notes_the_middle_pair() {
    let raw = stdout(&["verify", "--type", "D4"]);
    assert!(raw.contains("vanishing-pattern: PASS"));
    assert!(raw.contains("bezoutiante: PASS"));
    assert!(raw.contains("vanishing self-pairings"));
    assert!(raw.trim_end().ends_with("PASS"));
}

#[test]
fn verify_e6_includes_the_milnor_mask() {
    let raw = stdout(&["verify", "--type", "E6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["pass"], true);
    let names: Vec<&str> =
        v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["vanishing-pattern", "bezoutiante", "milnor-mask"]);
}

#[test]
fn invariants_prints_every_generator_of_the_degree() {
    let raw = stdout(&["invariants", "--type", "D4", "--degree", "4"]);
    assert_eq!(raw.lines().count(), 2, "two degree-4 basics in D4");
    let out = weylinv(&["invariants", "--type", "A2", "--degree", "7"]);
    assert_eq!(error_code(&out), "bad-arguments");
}

#[test]
fn oracle_report_flag_overrides_format() {
    let raw = stdout(&["oracle", "--algebra", "sl2", "--format", "text", "--report", "json"]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["dim_a"], 2);
    assert_eq!(v["gamma_dims"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["c"][0][0], "1");
}

#[test]
fn grassmann_identities_and_power_summary() {
    let raw = stdout(&["grassmann", "--n", "2", "--verify"]);
    assert!(raw.trim_end().ends_with("PASS"));
    let raw = stdout(&["grassmann", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    let powers = v["powers"].as_array().unwrap();
    assert_eq!(powers[4]["zero"], false);
    assert_eq!(powers[5]["zero"], true);
}

#[test]
fn pair_reduces_modulo_decomposables() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "p2").unwrap();
    std::fs::write(&b, "p3").unwrap();
    let raw = stdout(&[
        "pair",
        "--type",
        "A3",
        "--file-a",
        a.to_str().unwrap(),
        "--file-b",
        b.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["decomposable"], false);
    assert_eq!(v["mod_squares"][0]["target"], 2);
    std::fs::write(&b, "p2").unwrap();
    let raw = stdout(&[
        "pair",
        "--type",
        "A3",
        "--file-a",
        a.to_str().unwrap(),
        "--file-b",
        b.to_str().unwrap(),
    ]);
    assert!(raw.contains("mod squares: 8*psi1"));
}

#[test]
fn output_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = weylinv(&[
        "tables",
        "--type",
        "B3",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["tables", "--type", "B3", "--format", "csv"]));
}

#[test]
fn thread_pinning_does_not_change_output() {
    let pinned = Command::new(env!("CARGO_BIN_EXE_weylinv"))
        .args(["tables", "--type", "F4", "--format", "json"])
        .env("WEYLINV_THREADS", "1")
        .output()
        .unwrap();
    assert!(pinned.status.success());
    let free = stdout(&["tables", "--type", "F4", "--format", "json"]);
    assert_eq!(String::from_utf8(pinned.stdout).unwrap(), free);
}
