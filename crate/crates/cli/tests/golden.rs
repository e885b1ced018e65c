//! End-to-end runs of the binary against checked-in JSON reports.
//!
//! `UPDATE_GOLDEN=1 cargo test -p derange-cli` rewrites the files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derange"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{name}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    } else {
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
        assert_eq!(text, want, "{name} differs from its golden file");
    }
    serde_json::from_str(&text).unwrap()
}

#[test]
fn check_agl1_7() {
    let v = golden("check_agl1_7", &["check", "data/agl1_7.action"]);
    assert_eq!(v["result"]["verdict"], "none");
    assert_eq!(v["result"]["group_order"], "42");
}

#[test]
fn check_transitive() {
    let v = golden("check_s4", &["check", "data/s4.group"]);
    assert_eq!(v["result"]["verdict"], "has_derangement");
    assert!(v["result"]["prime_power_derangement"]["prime"].is_u64());
}

#[test]
fn covering_yes_and_no() {
    let v = golden(
        "covering_agl1_5",
        &["covering", "data/agl1_5.group", "--subgroup", "data/c5.group", "--subgroup", "data/c4.group"],
    );
    assert_eq!(v["result"]["covered"], true);
    let v = golden(
        "covering_s4",
        &["covering", "data/s4.group", "--subgroup", "data/v4.group", "--subgroup", "data/c3.group"],
    );
    assert_eq!(v["result"]["covered"], false);
}

#[test]
fn verify_files() {
    let v = golden("verify_files", &["verify-conjecture", "data/s4.group", "data/agl1_5.group"]);
    assert_eq!(v["result"]["counterexamples"], 0);
}

#[test]
fn verify_default_catalog() {
    let v = golden("verify_catalog", &["verify-conjecture", "--catalog", "default", "--jobs", "2"]);
    assert_eq!(v["result"]["counterexamples"], 0);
    assert!(v["result"]["groups"].as_u64().unwrap() > 300);
}

#[test]
fn coset_average() {
    let v = golden("coset_average", &["coset-average", "data/s4.group", "--h", "(1 2)(3 4)"]);
    assert_eq!(v["result"]["average"], "1");
}

#[test]
fn present() {
    let v = golden("present_regular", &["present", "data/example.pres"]);
    assert_eq!(v["result"]["index"], 96);
    let v = golden("present_h2", &["present", "data/example.pres", "--subgroup", "x, y^2"]);
    assert_eq!(v["result"]["index"], 12);
    assert_eq!(v["result"]["induced_group_order"], "96");
}

#[test]
fn affine_commands() {
    let v = golden("affine_group", &["affine", "group", "--p", "2", "--d", "2", "--maximals"]);
    assert_eq!(v["result"]["affine_order"], "24");
    let v = golden(
        "affine_construct",
        &["affine", "construct", "--m", "data/c3_in_gl22.mat", "--h", "data/transvection.mat", "--v", "1,0"],
    );
    assert_eq!(v["result"]["verified"], true);
    let v = golden("affine_subfield", &["affine", "subfield", "--m", "3", "--p", "2"]);
    assert_eq!(v["result"]["all_meet_subgroup"], true);
    let v = golden("affine_congruence", &["affine", "congruence", "--p", "2", "--n", "3"]);
    assert_eq!(v["result"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn isbell() {
    let v = golden("isbell_gl32", &["isbell", "data/gl32_8.group", "--rho", "data/gl32.mat"]);
    assert_eq!(v["result"]["status"], "witness_found");
}

#[test]
fn roots() {
    let v = golden("roots", &["roots"]);
    let counts: Vec<u64> = v["result"].as_array().unwrap().iter().map(|r| r["total_roots"].as_u64().unwrap()).collect();
    assert_eq!(counts, [72, 126, 240]);
}

#[test]
fn bounds() {
    let v = golden("bounds_i_case", &["bounds", "--part", "i", "--d", "4", "--r", "4", "--p", "2"]);
    assert_eq!(v["result"]["holds"], false);
    golden("bounds_ii_case", &["bounds", "--part", "ii", "--b", "3", "--p", "3", "--f", "1"]);
    let v = golden("bounds_i_grid", &["bounds", "--part", "i", "--grid"]);
    assert_eq!(v["result"]["coprime_failures"].as_array().unwrap().len(), 0);
    let v = golden("bounds_ii_grid", &["bounds", "--part", "ii", "--grid"]);
    assert_eq!(v["result"]["holds"], true);
    golden("bounds_factorial", &["bounds", "--part", "factorial", "--m", "100", "--p", "3"]);
    let v = golden("bounds_factorial_grid", &["bounds", "--part", "factorial", "--grid"]);
    assert_eq!(v["result"]["cases"], 50025);
    let v = golden("bounds_table", &["bounds", "--part", "table", "--max", "10"]);
    assert_eq!(v["result"]["b_at_least_d_minus_2"], true);
    golden("bounds_records", &["bounds", "--part", "records"]);
}

#[test]
fn catalog() {
    let v = golden("catalog_manifest", &["catalog", "--manifest"]);
    let names: Vec<&str> = v["result"].as_array().unwrap().iter().filter_map(|i| i["name"].as_str()).collect();
    assert!(names.contains(&"agl1(7)") && names.contains(&"example_2_2"));
    golden("catalog_small", &["catalog", "--max-order", "12"]);
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["--json", "check", "data/agl1_7.action"]).stdout;
    let b = run(&["--json", "check", "data/agl1_7.action"]).stdout;
    assert_eq!(a, b);
    let a = run(&["--json", "catalog", "--manifest"]).stdout;
    let b = run(&["--json", "catalog", "--manifest"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["check", "missing.file"]).status.code(), Some(1));
    assert_eq!(run(&["check", "data/example.pres"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--cap-enum", "0", "roots"]).status.code(), Some(1));
    // AGL1(7) has no derangement, so sampling cannot rescue the cap
    assert_eq!(run(&["--cap-enum", "10", "check", "data/agl1_7.action"]).status.code(), Some(2));
    assert_eq!(run(&["--cap-lattice", "10", "verify-conjecture", "data/s4.group"]).status.code(), Some(2));
    // intransitive input to the coset average is invalid input
    assert_eq!(run(&["coset-average", "data/c3.group", "--h", "()"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn text_mode() {
    let out = run(&["check", "data/agl1_7.action"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: none"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("timing"));
}
