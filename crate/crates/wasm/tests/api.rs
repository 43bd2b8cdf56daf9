use bfree_wasm::api;
use serde_json::Value;

fn b1() -> String {
    api::bundled_spec("b1").unwrap()
}

#[test]
fn names_include_bundled_specs() {
    let names: Vec<String> = serde_json::from_str(&api::bundled_names().unwrap()).unwrap();
    assert!(names.iter().any(|n| n == "gh"));
    assert!(api::bundled_spec("missing").is_err());
}

#[test]
fn eta_window_matches_cli_texture() {
    let v: Value = serde_json::from_str(&api::eta_window(&b1(), -3, 3).unwrap()).unwrap();
    assert_eq!(v["bits"].as_str().unwrap().len(), 7);
    assert_eq!(v["bits"].as_str().unwrap().as_bytes()[3], b'0');
    assert!(api::eta_window(&b1(), 5, 1).is_err());
}

#[test]
fn holes_report_for_gh() {
    let gh = api::bundled_spec("gh").unwrap();
    let v: Value = serde_json::from_str(&api::holes_report(&gh, 2).unwrap()).unwrap();
    assert_eq!(v["levels"][0]["essential_residues"], serde_json::json!([3]));
    assert_eq!(v["levels"][1]["tau_tilde"], "32");
    assert!(api::holes_report(&gh, 0).is_err());
}

#[test]
fn rho_curve_counts() {
    let v: Value = serde_json::from_str(&api::rho_curve(&b1(), 4, 1000).unwrap()).unwrap();
    assert_eq!(v[0]["rho"], 2);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(api::rho_curve("family = \"nope\"", 4, 10).is_err());
}
