use std::process::{Command, Output};

fn qdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdouble")).args(args).env_remove("QDOUBLE_OUTPUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn help_lists_subcommands() {
    let o = qdouble(&["--help"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for sub in ["tables", "verify", "shor"] {
        assert!(s.contains(sub));
    }
    let s = stdout(&qdouble(&["shor", "run", "--help"]));
    for flag in ["--nu", "--realizations", "--seed", "--backend", "--out", "--output", "--threads"] {
        assert!(s.contains(flag), "{flag}");
    }
    let s = stdout(&qdouble(&["tables", "--help"]));
    for flag in ["--pairing", "--arity", "--catalog", "--format"] {
        assert!(s.contains(flag), "{flag}");
    }
}

#[test]
fn fusion_csv_has_phi_sigma_row() {
    let o = qdouble(&["tables", "fusion", "--format", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("a,b,c,N\n"));
    assert!(s.lines().any(|l| l == "Φ_i,Σ_i,Δ,1"));
    assert!(s.lines().any(|l| l == "Φ_i,Σ_i,Δ̄,1"));
}

#[test]
fn shor_run_csv() {
    let o = qdouble(&["shor", "run", "--nu", "0", "--realizations", "1000", "--seed", "7"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "nu,y,mean_prob,stderr,discarded");
    assert_eq!(lines.len(), 5);
    let p: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!((p[0] - 0.5).abs() < 1e-9 && (p[2] - 0.5).abs() < 1e-9 && p[1].abs() < 1e-9 && p[3].abs() < 1e-9);
}

#[test]
fn shor_json_echoes_config() {
    let o = qdouble(&["shor", "sweep", "--nu", "0,0.5", "--realizations", "20", "--seed", "3", "--out", "json", "--backend", "braided"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["config"]["backend"], "braided");
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    assert_eq!(v["postprocessing"][2]["factors"], serde_json::json!([3, 5]));
}

#[test]
fn errors_are_json_on_stderr() {
    for args in [&["shor", "run", "--nu", "-0.5"][..], &["tables", "nope"], &["tables", "braids", "--pairing", "XX"], &["shor", "run", "--realizations", "0"]] {
        let o = qdouble(args);
        assert!(!o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(v["error"], "usage", "{args:?}");
        assert!(v["message"].is_string());
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("qdouble-cli-test-{}", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_qdouble"))
        .args(["tables", "tmatrix", "--format", "csv"])
        .env("QDOUBLE_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(dir.join("tmatrix.csv")).unwrap();
    assert!(body.starts_with("label,t,spin\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_braids_reports_failures_with_exit_code() {
    let o = qdouble(&["verify", "braids", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suites"][0]["suite"], "braids");
    assert_eq!(v["suites"][0]["status"], "fail");
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "1-qubit ΦΦ adjacent relations" && c["pass"] == true));
}

#[test]
fn braid_table_entries() {
    let o = qdouble(&["tables", "braids", "--pairing", "PP", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("1,1,1,i,2,0,")));
    let o = qdouble(&["tables", "braids", "--pairing", "ΣΣ", "--arity", "2", "--catalog", "amended", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrices"].as_array().unwrap().len(), 5);
}
