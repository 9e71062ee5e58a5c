use std::process::Command;

use subgroup_bounds::verify::Check;
use subgroup_bounds_cli::{run, Report, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn sg(args: &[&str]) -> subgroup_bounds_cli::Outcome {
    run(std::iter::once("sgbound").chain(args.iter().copied()))
}

fn text(args: &[&str]) -> String {
    let out = sg(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn golden_lines() {
    assert_eq!(text(&["minkowski", "--n", "8"]), "1393459200 = 2^15·3^5·5^2·7\n");
    assert_eq!(text(&["minkowski", "--n", "8", "--ell", "3"]), "M(8, 3) = 5\n");
    assert_eq!(text(&["invariants", "--field", "F:9", "--ell", "2"]), "t=1 m=3 type=a\n");
    assert_eq!(text(&["invariants", "--field", "F:3", "--ell", "2"]), "t=2 m=2 type=b\n");
    assert_eq!(text(&["schur", "--n", "4", "--ell", "2", "--field", "Q"]), "M_k(4, 2) = 7\n");
    let e8 = text(&["bound", "--kind", "m", "--root", "E8", "--field", "Q", "--ell", "all"]);
    assert!(e8.starts_with("154705492508859411569049600000 = 2^30·3^13·5^5·7^4·11^2·13^2·19·31\n"), "{e8}");
    assert_eq!(text(&["bound", "--kind", "s", "--root", "E8", "--field", "Q", "--ell", "11"]), "2 (S)\n");
    assert_eq!(
        text(&["bound", "--kind", "achievable", "--root", "A:2", "--field", "Q", "--ell", "2"]),
        "3 (achievable, not optimal)\n"
    );
    assert_eq!(text(&["bound", "--kind", "corank", "--root", "E6", "--field", "R", "--ell", "3"]), "4 (Corank)\n");
}

#[test]
fn infinite_bounds_name_the_criterion() {
    assert_eq!(
        text(&["bound", "--kind", "m", "--root", "E8", "--field", "Qbar", "--ell", "5"]),
        "inf (M: m = ∞ and a(1) = 8 ≥ 1)\n"
    );
    assert_eq!(
        text(&["bound", "--kind", "torus", "--root", "A:2", "--field", "R", "--ell", "3"]),
        "inf (Torus: m = ∞ and [2/φ(2)] = 2 ≥ 1)\n"
    );
    // t = 4 divides no degree of A_2, so the bound is 0 even though m = ∞.
    assert_eq!(text(&["bound", "--kind", "m", "--root", "A:2", "--field", "explicit:t=4,m=inf", "--ell", "5"]), "0 (M)\n");
}

#[test]
fn minkowski8_table() {
    let expected = "\
n  M(n)        factored
1  2           2
2  24          2^3·3
3  48          2^4·3
4  5760        2^7·3^2·5
5  11520       2^8·3^2·5
6  2903040     2^10·3^4·5·7
7  5806080     2^11·3^4·5·7
8  1393459200  2^15·3^5·5^2·7
";
    assert_eq!(text(&["table", "--name", "minkowski8"]), expected);
}

#[test]
fn e8_table() {
    let out = text(&["table", "--name", "e8"]);
    assert!(out.contains("\n5   5   6\n"), "{out}");
    assert!(out.contains("\n17  0   1\n"), "{out}");
    assert!(out.contains("M   = 154705492508859411569049600000 = 2^30·3^13·5^5·7^4·11^2·13^2·19·31\n"));
    assert!(out.contains("M_S = 92049768042771349883584512000000 = 2^30·3^13·5^6·7^5·11^2·13^2·17·19·31\n"));
    assert!(out.contains("M_S / M = 5·7·17\n"));
}

#[test]
fn f4_mass_table() {
    let out = text(&["table", "--name", "f4mass"]);
    assert!(out.starts_with("mass(F4)  691/(2^15·3^6·5^2·7^2·13)\n"), "{out}");
    assert!(out.ends_with("class 1 + class 2 = mass(F4): holds\n"));
}

#[test]
fn mass_output() {
    assert_eq!(
        text(&["mass", "--root", "G2"]),
        "mass(G2) = 1/12096\ndenominator = 12096 = 2^6·3^3·7\n"
    );
    let out = text(&["mass", "--root", "E8", "--ell", "5"]);
    assert!(out.ends_with("v_5(denominator) = 5, M-bound over Q = 5\n"), "{out}");
}

#[test]
fn witnesses() {
    assert_eq!(text(&["witness", "--kind", "wreath", "--n", "4", "--ell", "3"]), "order = 72 = 2^3·3^2\nv_3 = 2\n");
    assert_eq!(
        text(&["witness", "--kind", "schur", "--n", "2", "--ell", "5", "--field", "explicit:t=4,m=1"]),
        "N = 2\nv(A_N) = 2\nv(A_N^1) = 1\n"
    );
    assert_eq!(text(&["witness", "--kind", "gl2", "--p", "5", "--ell", "2"]), "|GL_2(F_5)| = 480 (enumerated)\nv_2 = 5\n");
}

#[test]
fn json_round_trips_to_identical_text() {
    let commands: &[&[&str]] = &[
        &["minkowski", "--n", "8"],
        &["minkowski", "--n", "5", "--ell", "2"],
        &["schur", "--n", "3", "--ell", "3", "--field", "explicit:t=1,m=2"],
        &["invariants", "--field", "QzN:12", "--ell", "2"],
        &["invariants", "--field", "R", "--ell", "7"],
        &["bound", "--kind", "m", "--root", "E8", "--field", "Q", "--ell", "all"],
        &["bound", "--kind", "s", "--root", "F4", "--field", "F:4", "--ell", "all"],
        &["bound", "--kind", "m", "--root", "E7", "--field", "R", "--ell", "3"],
        &["bound", "--kind", "achievable", "--root", "E8", "--field", "Q", "--ell", "2"],
        &["bound", "--kind", "corank", "--root", "E8", "--field", "Qbar", "--ell", "5"],
        &["mass", "--root", "F4", "--ell", "691"],
        &["witness", "--kind", "wreath", "--n", "4", "--ell", "2"],
        &["witness", "--kind", "gl2", "--p", "7", "--ell", "3"],
        &["verify", "--suite", "mass"],
        &["table", "--name", "e8"],
        &["table", "--name", "f4mass"],
        &["table", "--name", "minkowski8"],
    ];
    for args in commands {
        let direct = text(args);
        let mut with_json = args.to_vec();
        with_json.push("--json");
        let json = text(&with_json);
        let report: Report = serde_json::from_str(&json).unwrap_or_else(|e| panic!("{args:?}: {e}\n{json}"));
        assert_eq!(report.render_text(), direct, "{args:?}");
    }
}

#[test]
fn json_schema_for_bounds_and_factored_integers() {
    let json = text(&["bound", "--kind", "m", "--root", "E8", "--field", "Qbar", "--ell", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["bound"], serde_json::json!({"value": "inf", "source": "M"}));
    let json = text(&["minkowski", "--n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["value"], serde_json::json!({"value": "5760", "factors": [[2, 7], [3, 2], [5, 1]]}));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--kind", "m", "--root", "X9", "--field", "Q", "--ell", "2"][..],
        &["invariants", "--field", "F:", "--ell", "2"],
        &["invariants", "--field", "Q", "--ell", "two"],
        &["bound", "--kind", "q", "--root", "E8", "--field", "Q", "--ell", "2"],
        &["frobnicate"],
        &["verify", "--suite", "nope"],
    ] {
        let out = sg(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn domain_errors_exit_1() {
    for args in [
        &["invariants", "--field", "Q", "--ell", "4"][..],
        &["schur", "--n", "3", "--ell", "3", "--field", "Qbar"],
        &["mass", "--root", "E6"],
        &["bound", "--kind", "s", "--root", "GL:3", "--field", "Q", "--ell", "3"],
        &["bound", "--kind", "m", "--root", "E8", "--field", "R", "--ell", "all"],
        &["bound", "--kind", "corank", "--root", "E8", "--field", "Q", "--ell", "3"],
        &["witness", "--kind", "gl2", "--p", "11", "--ell", "2"],
        &["invariants", "--field", "F:9", "--ell", "3"],
    ] {
        let out = sg(args);
        assert_eq!(out.code, EXIT_DOMAIN, "{args:?}: {}", out.stdout);
        assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    }
}

#[test]
fn failing_check_exits_3() {
    let failing = Report::Verify {
        checks: vec![
            Check { suite: "a".into(), name: "ok".into(), passed: true, detail: "1 case".into() },
            Check { suite: "a".into(), name: "bad".into(), passed: false, detail: "fails at 3".into() },
        ],
    };
    assert_eq!(failing.exit_code(), EXIT_VERIFY);
    assert_eq!(failing.render_text(), "PASS  a/ok   1 case\nFAIL  a/bad  fails at 3\n1 passed, 1 failed\n");
    let out = sg(&["verify", "--suite", "root_data"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("2 passed, 0 failed\n"));
}

#[test]
fn binary_prints_and_exits() {
    let out = Command::new(env!("CARGO_BIN_EXE_sgbound")).args(["minkowski", "--n", "6"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2903040 = 2^10·3^4·5·7\n");
    let out = Command::new(env!("CARGO_BIN_EXE_sgbound")).args(["mass", "--root", "A:3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    assert!(String::from_utf8(out.stderr).unwrap().contains("odd degree 3"));
}
