//! Acceptance gate, CLI side: every command run twice on the fixture
//! set yields byte-identical payloads, and the documented exit codes and
//! example values hold.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotokernel"))
        .args(args)
        .output()
        .expect("failed to launch the binary")
}

/// Canonical payload bytes of one invocation, plus its exit code.
fn payload(args: &[&str]) -> (String, i32) {
    let out = run(args);
    let code = out.status.code().expect("no exit code");
    assert!(
        code == 0 || code == 3,
        "command {args:?} failed (exit {code}): {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is not a run report");
    assert!(
        report.get("wall_time_ms").is_some(),
        "missing wall time field"
    );
    (serde_json::to_string(&report["payload"]).unwrap(), code)
}

#[test]
fn criterion_10_payloads_are_deterministic() {
    let square = fixture("square.json");
    let nt = fixture("nt.json");
    let lp = fixture("lp.json");
    let dn = fixture("dn.json");
    let plus = fixture("plus.json");
    let tmp = std::env::temp_dir();
    let svg1 = tmp.join("accept-render-1.svg");
    let svg2 = tmp.join("accept-render-2.svg");
    let svg1 = svg1.to_str().unwrap();
    let svg2 = svg2.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["kernel", "--theta", "0.3", "--set", "double", &square],
        vec!["kernel", "--theta", "0", "--set", "single", &dn],
        vec!["kernel", "--theta", "0", "--set", "single", &nt],
        vec!["kernel", "--theta", "0.7", "--set", "double", &plus],
        vec!["kernel", "--theta", "-0.4", "--set", "single", &lp],
        vec!["intervals", &square],
        vec!["intervals", &nt],
        vec!["intervals", &dn],
        vec!["intervals", &lp],
        vec!["optimize", "--objective", "area", "--sense", "max", &lp],
        vec![
            "optimize",
            "--objective",
            "perimeter",
            "--sense",
            "max",
            &square,
        ],
        vec!["optimize", "--objective", "area", "--sense", "min", &plus],
        vec!["optimize", "--objective", "area", "--sense", "max", &dn],
        vec!["render", "--theta", "0", "--out", svg1, &dn],
        vec!["render", "--theta", "0.3926990816987", "--out", svg1, &nt],
        vec![
            "render", "--theta", "0.5", "--set", "double", "--out", svg1, &lp,
        ],
        vec!["render", "--show", "intervals", "--out", svg1, &dn],
        vec!["oracle", "scan", "--samples", "200", "--set", "single", &lp],
        vec![
            "oracle",
            "scan",
            "--samples",
            "100",
            "--set",
            "double",
            &plus,
        ],
        vec![
            "oracle", "gen", "--kind", "family-q", "--n", "16", "--seed", "11",
        ],
    ];

    let mut compared = 0usize;
    for args in &commands {
        let (first, code1) = payload(args);
        // The second render writes elsewhere so the on-disk artifacts can
        // be compared too; the payload echoes the output path in its
        // "out" field, so normalize it before comparing.
        let rerun: Vec<&str> = args
            .iter()
            .map(|a| if *a == svg1 { svg2 } else { *a })
            .collect();
        let (second, code2) = payload(&rerun);
        let first_net = first.replace(svg1, "OUT");
        let second_net = second.replace(svg2, "OUT");
        assert_eq!(first_net, second_net, "payload drift for {args:?}");
        assert_eq!(code1, code2, "exit-code drift for {args:?}");
        if args[0] == "render" {
            let a = std::fs::read(svg1).unwrap();
            let b = std::fs::read(svg2).unwrap();
            assert_eq!(a, b, "SVG drift for {args:?}");
        }
        compared += 1;
    }
    println!(
        "[PASS] criterion 10: {compared} commands, byte-identical payloads across consecutive runs"
    );
}

#[test]
fn documented_exit_codes_and_examples() {
    let (p, code) = payload(&[
        "kernel",
        "--theta",
        "0.3",
        "--set",
        "double",
        &fixture("square.json"),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&p).unwrap();
    assert!((v["area"].as_f64().unwrap() - 1.0).abs() <= 1e-12);

    let (_, code) = payload(&[
        "kernel",
        "--theta",
        "0",
        "--set",
        "single",
        &fixture("dn.json"),
    ]);
    assert_eq!(code, 3, "empty kernel must exit 3");

    let (p, code) = payload(&[
        "kernel",
        "--theta",
        "0",
        "--set",
        "single",
        &fixture("nt.json"),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&p).unwrap();
    assert!((v["area"].as_f64().unwrap() - 8.0 / 3.0).abs() <= 1e-9);

    let out = run(&[
        "optimize",
        "--objective",
        "area",
        "--sense",
        "max",
        &fixture("nt.json"),
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "non-orthogonal input must exit 2"
    );

    let out = run(&["kernel", "--theta", "0", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2), "missing file must exit 2");

    let (p, _) = payload(&["oracle", "scan", "--samples", "10", &fixture("square.json")]);
    let v: Value = serde_json::from_str(&p).unwrap();
    assert_eq!(v["rows"].as_u64(), Some(10));
    for line in v["csv"].as_str().unwrap().lines().skip(1) {
        assert_eq!(
            line.split(',').nth(2),
            Some("1"),
            "square kernel area drifted in scan"
        );
    }
}
