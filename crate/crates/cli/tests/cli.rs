use std::path::Path;
use std::process::{Command, Output};

fn gbf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV with '#' comments and a header line.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn eval_one(args: &[&str]) -> f64 {
    let out = gbf(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    rows(&stdout(&out))[0][1].parse().unwrap()
}

#[test]
fn eval_examples() {
    assert!((eval_one(&["eval", "M", "--a", "2", "--b", "1", "--x", "1"]) - 0.5).abs() < 1e-14);
    assert!((eval_one(&["eval", "eta", "--a", "1.7", "--b", "1.6", "--x", "2.6"]) - 0.07).abs() < 1e-13);
    assert!((eval_one(&["eval", "xi", "--a", "2", "--b", "1", "--x", "3.7"]) - 1.0).abs() < 1e-15);
    assert!((eval_one(&["eval", "g_lambda", "--a", "2", "--b", "1", "--x", "1"]) - 0.5).abs() < 1e-14);
    assert!((eval_one(&["eval", "g_lambda", "--a", "3", "--b", "0.5", "--x", "2"]) - 1.0 / 3.0).abs() < 1e-14);
}

#[test]
fn eval_echoes_inputs_and_covers_registry() {
    let names = [
        "M", "logM", "dlogM", "L", "F", "beta_f", "Phi", "PhiPrime", "xi", "eta", "Theta", "w",
        "wPrime", "W", "varphi", "q", "p", "g_lambda",
    ];
    for name in names {
        let out = gbf(&["eval", name, "--a", "3.5", "--b", "1", "--grid", "0.5:4:3"]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        assert!(text.starts_with(&format!("# eval {name} a=3.5 b=1 x=0.5:4:3\nx,value\n")));
        assert_eq!(rows(&text).len(), 3);
    }
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(code(&gbf(&["eval", "Gamma", "--a", "2", "--b", "1", "--x", "1"])), 2);
    assert_eq!(code(&gbf(&["eval", "M", "--a", "1", "--b", "2", "--x", "1"])), 2);
    assert_eq!(code(&gbf(&["eval", "xi", "--a", "0.9", "--b", "0.5", "--x", "1"])), 2);
    assert_eq!(code(&gbf(&["verify", "--identities", "R4", "--params", "1.0:0.5"])), 2);
    assert_eq!(code(&gbf(&["verify", "--identities", "R99", "--params", "2:1"])), 2);
    assert_eq!(code(&gbf(&["verify", "--suites", "witness", "--params", "2:1"])), 2);
    assert_eq!(code(&gbf(&["dump-kernels", "--a", "1.0", "--b", "0.5"])), 2);
    assert_eq!(code(&gbf(&["frobnicate"])), 2);
}

#[test]
fn io_errors_exit_3() {
    let out = gbf(&["dump-kernels", "--a", "1.7", "--b", "1.6", "--out", "/nonexistent-dir/k.csv"]);
    assert_eq!(code(&out), 3);
    assert_eq!(code(&gbf(&["report", "/nonexistent-dir/r.json"])), 3);
}

#[test]
fn verify_identities_pass() {
    let out = gbf(&["verify", "--identities", "R4,R5,R6", "--params", "1.7:1.6"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["version"], 1);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for (c, id) in checks.iter().zip(["R4", "R5", "R6"]) {
        assert_eq!(c["id"], id);
        assert_eq!(c["params"]["a"], 1.7);
        assert_eq!(c["passed"], true);
        assert!(c["max_rel_err"].as_f64().unwrap() <= 1e-8);
        assert!(c["worst_point"].is_number());
    }
}

#[test]
fn failing_check_exits_1() {
    let out = gbf(&["verify", "--identities", "R1", "--params", "2.5:0.5", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn witness_for_l_outside_b1() {
    let out = gbf(&["verify", "--suites", "witness", "--target", "L", "--class", "B1", "--params", "3.5:1.0"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let check = &v["checks"][0];
    assert_eq!(check["passed"], true);
    assert!(check["details"]["witness"]["x"].as_f64().unwrap() > 0.0);
}

#[test]
fn class_suites_and_closure_pass() {
    let out = gbf(&[
        "verify", "--suites", "cm,bernstein,stieltjes,logconvex,logcm,closure", "--params", "3.5:1.0",
        "--jobs", "2",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn output_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str, name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let out = gbf(&[
            "verify", "--identities", "all", "--suites", "cm,closure", "--params", "2.5:0.5,3.5:1.0",
            "--jobs", jobs, "--seed", "7", "--out", p,
        ]);
        assert_eq!(code(&out), 0);
        std::fs::read(path).unwrap()
    };
    let one = run("1", "a.json");
    assert_eq!(one, run("4", "b.json"));
    assert_eq!(one, run("4", "c.json"));
    assert!(!one.contains(&b'\r'));
}

#[test]
fn report_summarizes_verify_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&gbf(&["verify", "--identities", "R1,R2", "--params", "2:1", "--out", p])), 0);
    let out = gbf(&["report", p]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("PASS R1 (2, 1)"));
    assert!(text.ends_with("2 checks, 2 passed, 0 failed\n"));

    let failing = dir.path().join("f.json");
    assert_eq!(
        code(&gbf(&["verify", "--identities", "R1", "--params", "2:1", "--tol", "1e-40", "--out", failing.to_str().unwrap()])),
        1
    );
    assert_eq!(code(&gbf(&["report", failing.to_str().unwrap()])), 1);

    let garbage = dir.path().join("g.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(code(&gbf(&["report", garbage.to_str().unwrap()])), 2);
}

fn dump(a: &str, b: &str, dir: &Path) -> Vec<[f64; 3]> {
    let path = dir.join(format!("k{a}_{b}.csv"));
    let out = gbf(&["dump-kernels", "--a", a, "--b", b, "--smax", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.lines().nth(1) == Some("s,xi,eta"));
    rows(&text)
        .iter()
        .map(|r| [r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap()])
        .collect()
}

#[test]
fn dump_kernels_values() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dump("1.7", "1.6", dir.path());
    let at = |s: f64| rows.iter().find(|r| r[0] == s).unwrap();
    assert!((at(1.0)[1] - 0.1).abs() < 1e-13);
    assert!((at(1.7)[2] - 0.16).abs() < 1e-13);
    assert!((at(2.6)[2] - 0.07).abs() < 1e-13);
    assert_eq!(rows.first().unwrap()[0], 0.0);
    assert_eq!(rows.last().unwrap()[0], 10.0);

    for r in dump("2", "1", dir.path()) {
        assert!((r[1] - r[0].min(1.0)).abs() < 1e-13, "{r:?}");
    }
}
