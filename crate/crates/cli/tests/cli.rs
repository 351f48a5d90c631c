use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = artin(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let expect = fs::read_to_string(&path).unwrap();
    let out = artin(args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expect, "{name}");
}

#[test]
fn golden_reports() {
    golden("beta_det.json", &["beta-det", "--r", "2", "--n", "3"]);
    golden(
        "witness_det.json",
        &[
            "witness", "--kind", "det", "--k", "2", "--l", "2", "--r", "2", "--n", "2", "--ring",
            "Fpt(2,8)",
        ],
    );
    golden(
        "oracle_xy.json",
        &[
            "oracle",
            "--ring",
            "Fpt(2,6)",
            "--kind",
            "monomial",
            "--system",
            "tests/data/xy.sys",
            "--n",
            "2",
            "--beta-max",
            "6",
        ],
    );
    golden(
        "lift_sqrt2.json",
        &[
            "lift",
            "--ring",
            "Zp(7,10)",
            "--system",
            "tests/data/sqrt2.sys",
            "--point",
            "3",
        ],
    );
    golden(
        "solve_linear.json",
        &[
            "solve-linear",
            "--ring",
            "Fpt(3,9)",
            "--system",
            "tests/data/linear.sys",
            "--point",
            "1 - t + t^5, 1 + t^4",
            "--n",
            "2",
        ],
    );
    golden(
        "repair_mono.csv",
        &[
            "repair-mono",
            "--ring",
            "Fpt(2,8)",
            "--alphas",
            "(1,1);(1,0)",
            "--n",
            "2",
            "--point",
            "t^2 + t^3, 1 + t",
            "--format",
            "csv",
        ],
    );
}

#[test]
fn documented_examples() {
    let (code, v) = json(&["beta-det", "--r", "2", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["beta"], 5);
    let (_, v) = json(&["beta-mono", "--alphas", "(1,1)", "--n", "2"]);
    assert_eq!(v["outputs"]["beta"], 3);
    let (_, v) = json(&[
        "witness", "--kind", "det", "--k", "2", "--l", "2", "--r", "2", "--n", "2", "--ring",
        "Fpt(2,8)",
    ]);
    assert_eq!(v["outputs"]["matrix"], "[[t,0];[0,t]]");
    assert_eq!(v["outputs"]["order"], 2);
}

#[test]
fn lifted_root_is_a_root() {
    let (code, v) = json(&[
        "lift",
        "--ring",
        "Zp(7,10)",
        "--system",
        "tests/data/sqrt2.sys",
        "--point",
        "3",
    ]);
    assert_eq!(code, 0);
    let b: i128 = v["outputs"]["result"][0].as_str().unwrap().parse().unwrap();
    let m = 7i128.pow(10);
    assert_eq!((b * b - 2).rem_euclid(m), 0);
    assert_eq!(b % 7, 3);
    assert_eq!(
        v["outputs"]["residual_vals"]
            .as_array()
            .unwrap()
            .last()
            .unwrap(),
        "inf"
    );

    let (code, v) = json(&[
        "lift",
        "--ring",
        "Fpt(3,12)",
        "--system",
        "tests/data/square.sys",
        "--point",
        "t + t^5",
        "--method",
        "tougeron",
        "--h",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["result"][0], "t");
}

#[test]
fn report_keys_and_determinism() {
    let args = [
        "oracle", "--ring", "Fpt(2,5)", "--kind", "monomial", "--alphas", "(2,1)", "--n", "2",
        "--jobs", "3",
    ];
    let a = artin(&args);
    let b = artin(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "args",
            "command",
            "inputs_digest",
            "outputs",
            "ring",
            "version"
        ]
    );
    assert_eq!(v["outputs"]["beta"], 4);

    let (_, v) = json(&["beta-det", "--r", "2", "--timings"]);
    assert!(v["timings"]["elapsed_ms"].is_number());
}

#[test]
fn digest_tracks_file_contents() {
    let dir = std::env::temp_dir().join(format!("artin-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let file = dir.join("f.sys");
    let path = file.to_str().unwrap();
    fs::write(&file, "X1*X2\n").unwrap();
    let args = [
        "oracle", "--ring", "Fpt(2,4)", "--kind", "monomial", "--system", path, "--n", "1",
    ];
    let (_, first) = json(&args);
    fs::write(&file, "X1^2*X2\n").unwrap();
    let (_, second) = json(&args);
    assert_ne!(first["inputs_digest"], second["inputs_digest"]);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // hypothesis failures exit 1
    let (code, v) = json(&[
        "lift",
        "--ring",
        "Zp(7,10)",
        "--system",
        "tests/data/sqrt2.sys",
        "--point",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "HypothesisNotMet");
    let (code, v) = json(&[
        "repair-det",
        "--ring",
        "Fpt(2,8)",
        "--r",
        "2",
        "--n",
        "2",
        "--matrix",
        "[[1,0];[0,t]]",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "HypothesisNotMet");
    let (code, v) = json(&[
        "witness", "--kind", "det", "--ring", "Fpt(2,3)", "--k", "2", "--l", "2", "--r", "2",
        "--n", "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "PrecisionExhausted");
    let (code, v) = json(&[
        "oracle",
        "--ring",
        "Fpt(2,20)",
        "--kind",
        "determinantal",
        "--k",
        "3",
        "--l",
        "3",
        "--r",
        "2",
        "--n",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "BudgetExceeded");

    // malformed input exits 2
    let (code, v) = json(&[
        "repair-mono",
        "--ring",
        "Fpt(2,3",
        "--alphas",
        "(1)",
        "--n",
        "1",
        "--point",
        "0",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "InvalidRing");
    let (code, v) = json(&[
        "oracle",
        "--ring",
        "Fpt(2,4)",
        "--kind",
        "monomial",
        "--system",
        "tests/data/missing.sys",
        "--n",
        "1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Io");
    let (code, v) = json(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "UnknownSuite");
    let (code, v) = json(&[
        "oracle",
        "--ring",
        "Fpt(2,4)",
        "--kind",
        "linear",
        "--system",
        "tests/data/xy.sys",
        "--n",
        "1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "UnsupportedKind");
    assert_eq!(artin(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn general_kind_and_stability() {
    let (code, v) = json(&[
        "oracle",
        "--ring",
        "Fpt(3,4)",
        "--kind",
        "general",
        "--system",
        "tests/data/x_minus_t.sys",
        "--n",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["beta"], 2);
    assert_eq!(v["outputs"]["stable"], true);
}

#[test]
fn verify_suites_pass() {
    for suite in ["formulas", "witnesses", "linear", "enlarge"] {
        let (code, v) = json(&["verify", suite, "--seed", "3"]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["outputs"]["failed"], 0);
    }
}
