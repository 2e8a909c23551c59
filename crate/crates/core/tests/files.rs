use std::fs;

use wreath_core::io::{self, load_params, parse_elements};
use wreath_core::samples::diagonal_state;
use wreath_core::verify::{suite_from_file, SuiteConfig};
use wreath_core::{C64, Params};

const SIGN_STATE: &str = r#"{
  "kind": "state",
  "group": "group.json",
  "pm": {"A": [[0.6]], "rho": {"dim": 1, "mats": [[[1]], [[-1]]]}},
  "reg": {"rho11": {"dim": 1, "mats": [[[1]], [[1]]]}, "xi": [1], "copies": 4}
}"#;

const GROUP: &str = r#"{"order": 2, "names": ["e", "a"], "mul": [[0, 1], [1, 0]]}"#;

#[test]
fn group_file_resolves_relative_to_params() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("group.json"), GROUP).unwrap();
    let path = dir.path().join("state.json");
    fs::write(&path, SIGN_STATE).unwrap();
    let params = load_params(&path).unwrap();
    assert_eq!(params.kind(), "state");
    let elements = parse_elements("# colored singleton\n[a@1]\n(1 2)[a@1]\n", params.group()).unwrap();
    let values: Vec<C64> = elements.iter().map(|g| params.eval(g)).collect();
    assert!((values[0] - C64::new(-0.2, 0.0)).norm() < 1e-12);
    assert!((values[1] - C64::new(-0.36, 0.0)).norm() < 1e-12);
}

#[test]
fn written_state_reloads_with_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let params = diagonal_state(&[0.5, 0.25, -0.125]);
    let path = dir.path().join("thoma.json");
    fs::write(&path, serde_json::to_string_pretty(&io::state_params_to_file(&params)).unwrap()).unwrap();
    let loaded = load_params(&path).unwrap();
    let Params::State(state) = loaded else { panic!("expected a state") };
    assert_eq!(state.eigenvalues().len(), 3);
}

#[test]
fn suite_runs_from_file_and_reports_invalid_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("group.json"), GROUP).unwrap();
    let good = dir.path().join("state.json");
    fs::write(&good, SIGN_STATE).unwrap();
    let config = SuiteConfig {
        trials: 10,
        ..SuiteConfig::default()
    };
    let reports = suite_from_file(&good, &config);
    assert!(reports.iter().all(|r| r.passed), "{reports:?}");

    let bad = dir.path().join("bad.json");
    fs::write(&bad, SIGN_STATE.replace("0.6", "1.4")).unwrap();
    let reports = suite_from_file(&bad, &config);
    assert_eq!(reports.len(), 1);
    assert!(!reports[0].passed);
    assert!(reports[0].details[0].contains("Tr|A| = 1.4"), "{:?}", reports[0].details);
}
