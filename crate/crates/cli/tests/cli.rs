use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genbessel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[track_caller]
fn exit(o: &Output, code: i32) {
    assert_eq!(
        o.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(o),
        stderr(o)
    );
}

#[test]
fn eval_prints_one_json_object() {
    let o = run(&["eval", "--z", "0.25", "--w", "0.5", "--x", "1", "--json"]);
    exit(&o, 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // --x is the x of K_{z,w}(2x)
    let got = v["value_re"].as_f64().unwrap();
    assert!((got - 0.08284128459789250135).abs() < 1e-13);
    assert_eq!(v["method"], "double_sum");
    assert_eq!(v["converged"], true);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "z_re",
            "z_im",
            "w_re",
            "w_im",
            "x_re",
            "x_im",
            "value_re",
            "value_im",
            "err_est",
            "method",
            "work",
            "converged"
        ]
    );
}

#[test]
fn w_zero_is_the_ordinary_bessel_function() {
    let o = run(&["eval", "--z", "0.3", "--w", "0", "--x", "2", "--json"]);
    exit(&o, 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // K_0.3(4)
    assert!((v["value_re"].as_f64().unwrap() - 0.011273168760268).abs() < 1e-14);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["eval", "--z", "0.25", "--w", "0.3+0.2i", "--x", "1", "--json"][..],
        &["eval", "--z", "0.25", "--w", "0.5", "--x", "lin:0.5:2:3", "--json"][..],
        &["verify", "dde", "--z", "0.3", "--w", "0.5", "--x", "0.5", "--json"][..],
        &["compare", "--z", "0", "--w", "0.5", "--x", "1", "--json"][..],
    ] {
        let o = run(args);
        exit(&o, 0);
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--z", "0.4", "--w", "0.5", "--x", "log:-2:1:12", "--csv"];
    let a = run(&args);
    let b = run(&args);
    exit(&a, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn csv_has_a_header_and_one_row_per_point() {
    let o = run(&["eval", "--z", "0,0.25", "--w", "0.5", "--x", "1,2,3", "--csv"]);
    exit(&o, 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "z_re,z_im,w_re,w_im,x_re,x_im,value_re,value_im,err_est,method,work,converged"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    // z slowest, x fastest
    assert!(rows[0].starts_with("0.0,0.0,0.5,0.0,1.0,"));
    assert!(rows[2].starts_with("0.0,0.0,0.5,0.0,3.0,"));
    assert!(rows[3].starts_with("0.25,0.0,0.5,0.0,1.0,"));
}

#[test]
fn table_sweeps_one_parameter() {
    let o = run(&["table", "--z", "0.4", "--w", "0.5", "--x", "log:-4:1:50", "--csv"]);
    exit(&o, 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "parameter,param_re,param_im,value_re,value_im,err_est,method,converged"
    );
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    assert_eq!(rows.len(), 50);
    let first: f64 = rows[0][1].parse().unwrap();
    let last: f64 = rows[49][1].parse().unwrap();
    assert!((first - 1e-4).abs() < 1e-18 && (last - 10.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[0] == "x" && r[7] == "true"));
    // decreasing until the cos(2w√x) oscillation sets in
    let values: Vec<f64> = rows.iter().take(40).map(|r| r[3].parse().unwrap()).collect();
    assert!(values.windows(2).all(|p| p[1] < p[0]));

    let o = run(&["table", "--z", "lin:-0.4:0.4:5", "--w", "0.5", "--x", "1"]);
    exit(&o, 0);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn compare_lists_every_applicable_method() {
    let o = run(&["compare", "--z", "0", "--w", "0.5", "--x", "1", "--csv"]);
    exit(&o, 0);
    let text = stdout(&o);
    let methods: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert!(methods.contains(&"basset_z0") && methods.contains(&"integral"));
    assert!(methods.len() >= 6);
    let spread: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(spread < 1e-7);
}

#[test]
fn every_identity_verifies() {
    let cases: &[&[&str]] = &[
        &[
            "verify",
            "reciprocity",
            "--z",
            "0.2",
            "--w",
            "0.4",
            "--alpha",
            "1",
            "--x",
            "0.5",
        ],
        &[
            "verify",
            "rg-general",
            "--z",
            "0.3",
            "--w",
            "0.4",
            "--a",
            "1.5707963267948966",
        ],
        &["verify", "rg-modular", "--z", "0.3", "--w", "0.3i", "--alpha", "1,2"],
        &["verify", "koshliakov-w", "--w", "0.4", "--alpha", "2"],
        &["verify", "dde", "--z", "0.3", "--w", "0.5", "--x", "0.5"],
        &["verify", "lemma-inteq", "--w", "1", "--x", "0.5"],
        &["verify", "xi-thm", "--z", "0.25", "--w", "0.4", "--alpha", "1"],
        &["verify", "xi-corollary", "--w", "0.3", "--alpha", "2"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.push("--csv");
        let o = run(&full);
        exit(&o, 0);
        let text = stdout(&o);
        assert!(text.starts_with("identity,"), "{args:?}");
        assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{args:?}\n{text}");
    }
}

#[test]
fn reciprocity_reports_both_directions() {
    let o = run(&[
        "verify",
        "reciprocity",
        "--z",
        "0.2",
        "--w",
        "0",
        "--alpha",
        "1",
        "--x",
        "0.5",
        "--csv",
    ]);
    exit(&o, 0);
    let text = stdout(&o);
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, ["reciprocity", "reciprocity-back"]);
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["eval", "--z", "0.3", "--w", "0.5"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "-1"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "1i"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "1", "--alpha", "2"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "1..2"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "lin:0:1:0"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "1", "--rel-tol", "0"],
        &["eval", "--z", "0.3", "--w", "0.5", "--x", "1", "--json", "--csv"],
        &["verify", "bogus", "--z", "0.3"],
        &["verify", "rg-modular", "--z", "0.3", "--w", "0.4", "--alpha", "-1"],
        &["verify", "rg-modular", "--z", "1", "--w", "0.4", "--alpha", "1"],
        &[
            "verify",
            "reciprocity",
            "--z",
            "0.2",
            "--w",
            "0.4",
            "--alpha",
            "1",
            "--x",
            "1+1i",
        ],
        &["table", "--z", "0,0.1", "--w", "0.5", "--x", "1,2"],
        &["table", "--z", "0.1", "--w", "0.5", "--x", "1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = run(args);
        exit(&o, 1);
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_two() {
    let o = run(&[
        "verify",
        "koshliakov-w",
        "--w",
        "0.4",
        "--alpha",
        "1",
        "--max-terms",
        "3",
    ]);
    exit(&o, 2);
    assert!(stderr(&o).contains("did not converge"));
    // the points that did converge are still reported
    let o = run(&[
        "verify",
        "rg-modular",
        "--z",
        "0.3",
        "--w",
        "0.4",
        "--alpha",
        "0.1,2",
        "--max-terms",
        "30",
        "--csv",
    ]);
    exit(&o, 2);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn help_and_version_exit_zero() {
    let o = run(&["--help"]);
    exit(&o, 0);
    let text = stdout(&o);
    assert!(text.contains("K_{z,w}(2x)") && text.contains("Exit status"));
    exit(&run(&["--version"]), 0);
    exit(&run(&["verify", "--help"]), 0);
}

#[test]
fn verbose_goes_to_stderr_only() {
    let quiet = run(&["eval", "--z", "0.3", "--w", "0.5", "--x", "1", "--csv"]);
    let loud = run(&["eval", "--z", "0.3", "--w", "0.5", "--x", "1", "--csv", "--verbose"]);
    exit(&loud, 0);
    assert_eq!(quiet.stdout, loud.stdout);
    assert!(stderr(&loud).contains("rel_tol"));
}
