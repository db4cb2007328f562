use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_besselzeta"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Runs `verify` with a report path and returns (exit code, report bytes).
fn verify_report(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut cmd = bin();
    cmd.arg("verify").args(args).arg("--output").arg(&path);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    let json = std::fs::read_to_string(&path).unwrap();
    (out.status.code().unwrap(), json, stdout(&out))
}

#[test]
fn inert_univariate_exits_zero() {
    let out = run(&[
        "verify",
        "--case",
        "inert",
        "--mode",
        "univariate",
        "--samples",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("all 60 checks passed\n"));
}

#[test]
fn hilbert_examples() {
    assert_eq!(stdout(&run(&["hilbert", "5", "2", "5"])), "-1\n");
    assert_eq!(stdout(&run(&["hilbert", "-1", "-1", "2"])), "-1\n");
    assert_eq!(stdout(&run(&["hilbert", "-1", "-1", "real"])), "-1\n");
    assert_eq!(stdout(&run(&["hilbert", "2", "7", "7"])), "1\n");
    assert_eq!(run(&["hilbert", "0", "7", "7"]).status.code(), Some(2));
    assert_eq!(run(&["hilbert", "3", "7", "9"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[
            "verify",
            "--case",
            "split",
            "--mode",
            "symbolic",
            "--badflag",
        ][..],
        &["verify", "--mode", "symbolic"],
        &["verify", "--case", "inert", "--samples", "0"],
        &["verify", "--case", "inert", "--q", "8"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_and_coset_index() {
    assert_eq!(stdout(&run(&["classify", "2", "3"])), "inert\n");
    assert_eq!(stdout(&run(&["classify", "2", "7"])), "split\n");
    assert_eq!(stdout(&run(&["classify", "-3", "3"])), "ramified\n");
    let out = run(&["coset-index", "--p", "5", "--rho", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "brute-force 30\nformula 30\n");
}

#[test]
fn lfactor_and_bessel_output() {
    let l = stdout(&run(&[
        "lfactor", "--twist", "1", "--c", "1", "--a", "1", "--b", "1",
    ]));
    assert_eq!(l, "-1 / (t - 1)^5\n");
    let out = run(&["bessel-coeffs", "--case", "inert", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("phi(h(0, 0)) = 1\n"));
    let out = run(&["bessel-coeffs", "--case", "split", "--q", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--case",
        "split",
        "--mode",
        "univariate",
        "--samples",
        "6",
        "--seed",
        "42",
    ];
    let (c1, a, _) = verify_report(&args, &[("RAYON_NUM_THREADS", "1")]);
    let (c2, b, _) = verify_report(&args, &[("RAYON_NUM_THREADS", "4")]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn golden_reports() {
    let cases: [(&[&str], &str, i32); 3] = [
        (
            &["--case", "inert", "--samples", "3", "--seed", "7"],
            "inert_univariate_seed7.json",
            0,
        ),
        (
            &[
                "--case",
                "split",
                "--mode",
                "series",
                "--samples",
                "3",
                "--order",
                "6",
            ],
            "split_series_seed0.json",
            0,
        ),
        (
            &[
                "--case",
                "split",
                "--samples",
                "2",
                "--seed",
                "1",
                "--tamper",
                "2",
            ],
            "split_tampered_seed1.json",
            1,
        ),
    ];
    for (args, file, code) in cases {
        let (got_code, json, _) = verify_report(args, &[]);
        assert_eq!(got_code, code, "{file}");
        assert_eq!(
            json,
            std::fs::read_to_string(golden(file)).unwrap(),
            "{file}"
        );
    }
    let (_, _, text) = verify_report(
        &[
            "--case",
            "split",
            "--mode",
            "series",
            "--samples",
            "3",
            "--order",
            "6",
        ],
        &[],
    );
    assert_eq!(
        text,
        std::fs::read_to_string(golden("split_series_seed0.txt")).unwrap()
    );
}

#[test]
fn report_schema() {
    let (code, json, _) =
        verify_report(&["--case", "split", "--samples", "2", "--tamper", "4"], &[]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["case", "mode", "order", "seed", "params", "checks"]);
    assert_eq!(v["params"]["s0.q"].as_str().unwrap().split('/').count(), 2);
    let failing = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["pass"] == false)
        .unwrap();
    assert!(failing["first_mismatch"]["t_power"].as_u64().unwrap() <= 2);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["pass"].as_bool().unwrap(), c["first_mismatch"].is_null());
    }
}

#[test]
fn convention_can_be_forced() {
    let base = [
        "--case",
        "split",
        "--mode",
        "series",
        "--samples",
        "2",
        "--order",
        "4",
    ];
    let mut proof = base.to_vec();
    proof.extend(["--convention", "proof"]);
    let (code, json, _) = verify_report(&proof, &[]);
    assert_eq!(code, 0);
    assert!(json.contains("\"convention\": \"proof\""));
    let mut doubled = base.to_vec();
    doubled.extend(["--convention", "paper-A"]);
    let (code, json, _) = verify_report(&doubled, &[]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["checks"][0]["first_mismatch"]["t_power"], 0);
    assert_eq!(v["checks"][0]["first_mismatch"]["lhs"], "2");
}

#[test]
fn library_entry_point() {
    let mut buf = Vec::new();
    let code = besselzeta::run_with(["besselzeta", "hilbert", "3", "5", "5"], &mut buf);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(buf).unwrap(), "-1\n");
}
