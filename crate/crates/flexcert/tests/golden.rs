//! Reports frozen after their values were checked independently. Set
//! `FLEXCERT_UPDATE_GOLDEN=1` to rewrite the files after a deliberate change.

use std::path::PathBuf;

use flexcert::cli::run;
use flexcert::formats::PolynomialJson;
use flexcert_core::flex::build_h;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name)
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("FLEXCERT_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("failed to read golden file {}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file; rerun with FLEXCERT_UPDATE_GOLDEN=1 if intended");
}

fn json_of(args: &[&str]) -> String {
    let mut full = vec!["flexcert", "--format", "json"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

#[test]
fn certificate_report() {
    let json = json_of(&["certificate"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let minor = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "minor.(01)").unwrap();
    assert_eq!(minor["computed"], "672");
    check_golden("certificate.json", &json);
}

#[test]
fn tables_report() {
    check_golden("tables.json", &json_of(&["tables"]));
}

#[test]
fn sample_report_mod_7() {
    check_golden("sample-7.json", &json_of(&["sample", "--prime", "7", "--count", "5", "--seed", "42"]));
}

#[test]
fn hessian_of_generic_cubic() {
    let h = build_h();
    let mut json = serde_json::to_string(&PolynomialJson::from_poly(&h)).unwrap();
    json.push('\n');
    check_golden("h.json", &json);
    let back: PolynomialJson = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_poly().unwrap(), h);
    assert_eq!(back.terms.len(), 73);
}
