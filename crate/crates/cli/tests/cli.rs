use std::process::{Command, Output};

fn wclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("single JSON document on stdout")
}

#[test]
fn state_document_for_w123() {
    let o = wclass(&["state", "--state", "w123", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let amps = doc["amplitudes"].as_array().unwrap();
    assert_eq!(amps.len(), 8);
    let re = |k: usize| amps[k][0].as_f64().unwrap();
    assert!((re(4) - 0.5).abs() < 1e-12);
    assert!((re(2) - 0.5).abs() < 1e-12);
    assert!((re(1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
}

#[test]
fn state_out_file_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.json");
    let o = wclass(&[
        "state",
        "--state",
        "omega",
        "--n-qubits",
        "3",
        "--d",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("norm  1.000000"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["amplitudes"].as_array().unwrap().len(), 27);

    let w = dir.path().join("w.json");
    wclass(&[
        "state",
        "--state",
        "w-n-family",
        "--n-param",
        "2",
        "--gamma",
        "-0.5",
        "--out",
        w.to_str().unwrap(),
    ]);
    let o = wclass(&["classify", "--amplitudes-file", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness cut   01|2"));
}

#[test]
fn ghz_state_endpoints() {
    let doc = json(&wclass(&["state", "--state", "ghz", "--json"]));
    let amps = doc["amplitudes"].as_array().unwrap();
    for k in [0, 7] {
        assert!((amps[k][0].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(
        wclass(&["state", "--state", "w-tilde-n", "--n-qubits", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wclass(&["state", "--state", "nope"]).status.code(), Some(2));
    assert_eq!(
        wclass(&["teleport", "--protocol", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wclass(&["scan", "--state", "zero", "--n-qubits", "21"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn scan_csv_and_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = wclass(&[
        "scan",
        "--state",
        "w-tilde-n",
        "--n-qubits",
        "4",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size 2  1.000000 ebits"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n_wires,subset,size,entanglement_ebits");
    assert_eq!(lines[1], "4,0,1,0.811278124459133");
    assert_eq!(lines[2], "4,0-1,2,1");
    assert_eq!(lines.len(), 8);

    let doc = json(&wclass(&["scan", "--state", "w123", "--json"]));
    assert_eq!(doc["maximum"]["subset"], "2");
    let zero = json(&wclass(&[
        "scan",
        "--state",
        "zero",
        "--n-qubits",
        "5",
        "--max-size",
        "2",
        "--json",
    ]));
    let rows = zero["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows
        .iter()
        .all(|r| r["entanglement_ebits"].as_f64().unwrap() == 0.0));
}

#[test]
fn teleport_w_n_qubit() {
    let o = wclass(&[
        "teleport",
        "--protocol",
        "w-n-qubit",
        "--n-qubits",
        "5",
        "--trials",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("worst fidelity             1.000000"));
}

#[test]
fn teleport_json_is_reproducible() {
    let args = [
        "teleport",
        "--protocol",
        "ghz",
        "--trials",
        "3",
        "--seed",
        "9",
        "--json",
    ];
    let a = wclass(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&wclass(&args)));
    let doc = json(&a);
    assert_eq!(doc["protocol"], "ghz");
    assert_eq!(doc["bits"].as_f64(), Some(2.0));
    assert_eq!(doc["outcomes"].as_array().unwrap().len(), 4);
    assert!(doc["worst_fidelity"].as_f64().unwrap() >= 1.0 - 1e-9);
    let one = wclass(&["teleport", "--protocol", "ghz", "--trials", "1"]);
    assert_eq!(one.status.code(), Some(0));
}

#[test]
fn teleport_pair_protocol() {
    let o = wclass(&["teleport", "--protocol", "wtilde4-pair", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("realized outcomes per run  4..4"));
    assert!(out.contains("classical bits             3.000000"));
}

#[test]
fn teleport_w_n_family() {
    let o = wclass(&[
        "teleport",
        "--protocol",
        "w-n-family",
        "--n-param",
        "3",
        "--gamma",
        "1",
        "--delta",
        "-2",
        "--trials",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn densecode_protocols() {
    let o = wclass(&["densecode", "--protocol", "w123-3bit", "--all-messages"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("decoded  8/8"));
    assert!(out.contains("bits     3.000000"));
    assert!(out.contains("     111      111"));

    let o = wclass(&[
        "densecode",
        "--protocol",
        "omega",
        "--n-qubits",
        "4",
        "--d",
        "3",
    ]);
    assert!(stdout(&o).contains("decoded  9/9"));
    assert!(stdout(&o).contains("bits     3.169925"));

    let doc = json(&wclass(&["densecode", "--protocol", "epr", "--json"]));
    assert_eq!(doc["decoded"], 4);
    assert_eq!(doc["bits"].as_f64(), Some(2.0));
}

#[test]
fn classify_verdicts() {
    let o = wclass(&["classify", "--state", "w123"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness cut   01|2"));

    let o = wclass(&["classify", "--state", "w-tilde123"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("max cut E     0.918296"));

    let doc = json(&wclass(&["classify", "--state", "ghz", "--json"]));
    assert_eq!(doc["suitable"], true);
    assert_eq!(doc["w_class"], false);

    assert_eq!(
        wclass(&["classify", "--state", "epr"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dims": [2, 2, 2], "amplitudes": [[1, 0]]}"#).unwrap();
    assert_eq!(
        wclass(&["classify", "--amplitudes-file", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(
        wclass(&["classify", "--amplitudes-file", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        wclass(&["classify", "--amplitudes-file", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn entropy_single_cut() {
    let doc = json(&wclass(&[
        "entropy", "--state", "w123", "--cut", "0,1", "--json",
    ]));
    assert_eq!(doc["cuts"][0]["cut"], "01|2");
    assert_eq!(doc["cuts"][0]["entanglement_ebits"].as_f64(), Some(1.0));
    assert_eq!(
        wclass(&["entropy", "--state", "w123", "--cut", "0,1,2"])
            .status
            .code(),
        Some(2)
    );
}
