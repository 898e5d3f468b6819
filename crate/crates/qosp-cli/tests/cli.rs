//! End-to-end tests of the qosp binary: exit codes, output formats, and
//! the round-trip contract for scalar strings in JSON dumps.

use qosp::scalar::QScalar;
use std::process::{Command, Output};

fn qosp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn roots_prints_casimir_shift() {
    let out = qosp(&["roots", "--m", "3", "--n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("C(Lambda_0) = 0"));

    let out = qosp(&["roots", "--m", "5", "--n", "2"]);
    assert!(stdout(&out).contains("C(Lambda_0) = 2"));
}

#[test]
fn roots_rejects_small_m_with_exit_2() {
    let out = qosp(&["roots", "--m", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m must exceed 2"));
}

#[test]
fn casimir_trivial_module_rows() {
    let out = qosp(&[
        "casimir", "--m", "3", "--n", "2", "--weight", "e:0|d:0", "--lmax", "3",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["chi"], "1");
    for row in &rows[1..] {
        assert_eq!(row["chi"], "0");
        assert_eq!(row["oracle_agrees"], true);
    }
}

#[test]
fn casimir_numeric_matches_symbolic_eval() {
    let sym = qosp(&[
        "casimir", "--m", "3", "--n", "2", "--weight", "e:0|d:1", "--lmax", "1",
    ]);
    let num = qosp(&[
        "casimir", "--m", "3", "--n", "2", "--weight", "e:0|d:1", "--lmax", "1", "--q", "2",
    ]);
    let sym: serde_json::Value = serde_json::from_str(&stdout(&sym)).unwrap();
    let num: serde_json::Value = serde_json::from_str(&stdout(&num)).unwrap();
    for l in 0..=1 {
        let s = QScalar::parse(sym["rows"][l]["chi"].as_str().unwrap()).unwrap();
        let expect = s.eval_f64(2.0).unwrap();
        let got: f64 = num["rows"][l]["chi"].as_str().unwrap().parse().unwrap();
        assert!(
            (got - expect).abs() <= 1e-12 * (1.0 + expect.abs()),
            "l={l}: {got} vs {expect}"
        );
    }
}

#[test]
fn casimir_csv_has_header_and_rows() {
    let out = qosp(&[
        "casimir", "--m", "4", "--n", "2", "--weight", "e:1,0|d:0", "--lmax", "2", "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "l,chi");
    assert_eq!(lines.len(), 4);
}

#[test]
fn casimir_rejects_malformed_weight() {
    let out = qosp(&[
        "casimir", "--m", "3", "--n", "2", "--weight", "nonsense", "--lmax", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_3_2() {
    let out = qosp(&[
        "verify", "--m", "3", "--n", "2", "--checks", "relations,gammabeta,oracle",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["seed"], 1);
}

#[test]
fn verify_rejects_unknown_check() {
    let out = qosp(&["verify", "--m", "3", "--n", "2", "--checks", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rep_dump_scalars_round_trip() {
    let out = qosp(&["rep", "dump", "--m", "3", "--n", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["dim"], 5);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    let mut seen = 0;
    for gen in gens {
        for key in ["e", "f", "h"] {
            for triple in gen[key].as_array().unwrap() {
                let s = triple[2].as_str().unwrap();
                let parsed = QScalar::parse(s).unwrap();
                assert_eq!(parsed.to_string(), s);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn lax_build_dump_r_round_trips() {
    let out = qosp(&["lax", "build", "--m", "3", "--n", "2", "--dump", "r"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for triple in doc["R"].as_array().unwrap() {
        let s = triple[2].as_str().unwrap();
        assert_eq!(QScalar::parse(s).unwrap().to_string(), s);
    }
}

#[test]
fn lax_verify_subset_passes() {
    let out = qosp(&[
        "lax", "verify", "--m", "3", "--n", "2", "--checks", "intertwine,polyid,recursion",
    ]);
    assert!(out.status.success());
}

#[test]
fn thread_cap_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_qosp"))
        .args(["verify", "--m", "3", "--n", "2", "--checks", "relations,gammabeta"])
        .env("QOSP_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
