use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use avk_core::morsify;
use avk_core::SymmetricForm;

fn avk(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_avk"));
    cmd.args(args).env_remove("AVK_OUTPUT");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn avk")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("avk-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_scratch(name: &str, contents: &str) -> String {
    let path = scratch(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const LINES4: &str =
    r#"{"schema":"avk-1","d":2,"hyperplanes":[[2,-1,-1],[4,-1,-4],[6,-1,-9],[8,-1,-16]]}"#;

#[test]
fn selftest_table54_passes_and_is_deterministic() {
    let first = avk(&["selftest", "table54"], &[]);
    assert!(first.status.success(), "{first:?}");
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.contains("26 entries, 0 failing"), "{text}");
    let second = avk(&["selftest", "table54"], &[]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn arrangement_phi_checks_pass_and_json_round_trips() {
    let input = write_scratch("lines4.json", LINES4);
    let out = avk(
        &[
            "arrangement",
            "phi",
            "--input",
            &input,
            "--route",
            "all",
            "--check-6-1-2",
            "-o",
            "json",
        ],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "avk-1");
    assert_eq!(v["m"], 4);
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["pass"], true, "{check}");
    }
    // Printed forms re-parse into real forms.
    let phi = SymmetricForm::from_json(&v["form"]).unwrap();
    assert_eq!(phi.dim(), 7);
    let reprinted: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(reprinted, v);
}

#[test]
fn form_inertia_prints_the_signature_tuple() {
    let input = write_scratch(
        "zero2.json",
        r#"{"schema":"avk-1","basis":["a","b"],"gram":[["0","0"],["0","0"]]}"#,
    );
    let out = avk(&["form", "inertia", "--input", &input], &[]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(0,0,2)\n");
}

#[test]
fn catalog_diagram_json_feeds_the_residue_command() {
    let entry = morsify::catalog("A2-").unwrap();
    let input = write_scratch("a2.json", &entry.diagram.to_json().to_string());
    let out = avk(
        &["singularity", "residue", "--diagram", &input, "-o", "json"],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let q = SymmetricForm::from_json(&v["q"]).unwrap();
    let direct = entry.diagram.boundary_residue().unwrap();
    assert_eq!(q, direct.q);
}

#[test]
fn failed_bound_names_the_row_and_exits_one() {
    let iv = write_scratch(
        "iv_bad.json",
        r#"{"k":3,"mu_plus":0,"mu_minus":19,"chi_rx":-4,"r":2,"nu":1,
            "sigma_zero":1,"sigma_plus":5,"sigma_minus":-3}"#,
    );
    let out = avk(
        &["bounds", "--invariants", &iv, "--which", "arnold-viro:1.3.2"],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1.3.2:sigma_plus"), "{err}");
}

#[test]
fn lhs_from_injects_the_measured_signature() {
    let input = write_scratch("lines4b.json", LINES4);
    let phi_out = avk(
        &["arrangement", "phi", "--input", &input, "-o", "json"],
        &[],
    );
    assert!(phi_out.status.success());
    let phi_path = write_scratch("phi4.json", &String::from_utf8(phi_out.stdout).unwrap());
    let iv = write_scratch(
        "iv_arr.json",
        r#"{"n":1,"b_d_plus_cx":1,"b_d_minus_cx":1,"chi_rx":0,"delta":3}"#,
    );
    let out = avk(
        &[
            "bounds",
            "--invariants",
            &iv,
            "--which",
            "arnold-viro:3.1.1",
            "--lhs-from",
            &phi_path,
            "--side",
            "plus",
            "-o",
            "json",
        ],
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_hold"], true);
    let rows = v["sections"][0]["report"]["rows"].as_array().unwrap();
    for row in rows {
        assert_eq!(row["slack"], "0/1", "{row}");
    }
}

#[test]
fn malformed_json_and_unknown_flags_exit_two() {
    let path = write_scratch("broken.json", "{\"k\": 3,");
    let out = avk(&["bounds", "--invariants", &path, "--which", "smith"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"), "{err}");

    let out = avk(&["selftest", "unknown-suite"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_format_env_and_flag_interact() {
    let input = write_scratch(
        "one.json",
        r#"{"schema":"avk-1","basis":["a"],"gram":[["3"]]}"#,
    );
    let json_out = avk(
        &["form", "inertia", "--input", &input],
        &[("AVK_OUTPUT", "json")],
    );
    assert!(json_out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(v["inertia"]["plus"], 1);

    // The flag wins over the environment.
    let table_out = avk(
        &["form", "inertia", "--input", &input, "-o", "table"],
        &[("AVK_OUTPUT", "json")],
    );
    assert_eq!(String::from_utf8(table_out.stdout).unwrap(), "(1,0,0)\n");

    let bad = avk(
        &["form", "inertia", "--input", &input],
        &[("AVK_OUTPUT", "csv")],
    );
    assert_eq!(bad.status.code(), Some(2));
}
