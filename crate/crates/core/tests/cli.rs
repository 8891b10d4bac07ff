use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpattern"))
        .args(args)
        .env_remove("SUPERPATTERN_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "1213121"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("1213121,3,true,true,true,true,"));

    let miss = run(&["check", "123123", "--format", "json"]);
    assert_eq!(miss.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&miss.stdout).unwrap();
    assert_eq!(v["flags"]["is_superpattern"], false);
    assert!(v["missing"].as_array().unwrap().contains(&"111".into()));

    assert_eq!(run(&["check", "12x"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let seven = stdout(&run(&[
        "enumerate",
        "--n",
        "7",
        "--filter",
        "strict-minimal",
        "--scope",
        "upto-iso",
    ]));
    let words: Vec<&str> = seven.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(words.len(), 7);
    assert_eq!(words[0], "1213121");
    assert_eq!(seven.lines().last(), Some("# count 7"));

    let full = stdout(&run(&[
        "enumerate",
        "--n",
        "7",
        "--filter",
        "strict-minimal",
        "--scope",
        "full",
    ]));
    assert_eq!(full.lines().filter(|l| !l.starts_with('#')).count(), 42);

    let none = stdout(&run(&["enumerate", "--n", "6", "--filter", "strict-minimal"]));
    assert_eq!(none, "# count 0\n");
}

#[test]
fn budget_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_superpattern"))
        .args(["enumerate", "--n", "10", "--filter", "all"])
        .env("SUPERPATTERN_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        run(&["--budget", "1000", "pmf", "--mode", "brute", "--n", "12"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn counts_csv() {
    let text = stdout(&run(&["counts", "--n-from", "7", "--n-to", "8"]));
    assert_eq!(
        text,
        "n,gamma_total,s_mu,s_a,s_total,beta_a,beta_b,beta_total\n7,7,7,7,42,14,11,25\n8,28,14,56,336,22,14,36\n"
    );
    assert_eq!(run(&["counts", "--n-from", "5", "--n-to", "8"]).status.code(), Some(2));
}

#[test]
fn pmf_and_gf() {
    let text = stdout(&run(&["pmf", "--d", "3", "--n", "10", "--mode", "both"]));
    assert!(text.starts_with("n,probability_exact,probability_decimal,cumulative_exact,probability_brute,agree\n"));
    assert!(text.contains("7,14/729,0.019204389575,14/729,14/729,true\n"));
    assert!(text.lines().last().unwrap().starts_with("tail,"));
    assert!(!text.contains(",false"));

    let gf = stdout(&run(&["gf", "--d", "3", "--n", "10"]));
    assert!(gf.starts_with("n,coefficient\n0,0/1\n"));
    // 42/2187 in lowest terms
    assert!(gf.contains("\n7,14/729\n"));
    assert_eq!(gf.lines().count(), 12);
}

#[test]
fn moments_output() {
    let text = stdout(&run(&["moments", "--d", "3"]));
    assert!(text.contains("217/16,13.562500000000"));
    let text = stdout(&run(&["moments", "--d", "2", "--format", "plain"]));
    assert!(text.starts_with("mean 5/1 = 5.000000000000\nvariance 4/1"));
}

#[test]
fn verify_suites() {
    for suite in ["section4", "quaternary-example", "oeis"] {
        let out = run(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert!(!stdout(&out).contains(",fail\n"));
    }
    let out = run(&["verify", "--suite", "lemmas", "--n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lemmas,flanking-pairs,10,6012,0,pass"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("sim{i}.json"))).collect();
    for p in &paths {
        let out = run(&[
            "simulate",
            "--d",
            "3",
            "--k",
            "3",
            "--trials",
            "30000",
            "--seed",
            "42",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["trials"], 30000);
    assert_eq!(v["seed"], 42);

    let csv1 = run(&["simulate", "--d", "2", "--k", "2", "--trials", "5000", "--seed", "1"]);
    let csv2 = run(&["simulate", "--d", "2", "--k", "2", "--trials", "5000", "--seed", "1"]);
    assert_eq!(csv1.stdout, csv2.stdout);
    assert!(stdout(&csv1).starts_with("n,count\n3,"));
}

#[test]
fn coupons_row() {
    let text = stdout(&run(&["coupons", "--d", "3", "--k", "3"]));
    assert!(text.ends_with("3,3,11/2,5.500000000000,33/2,16.500000000000\n"));
}
