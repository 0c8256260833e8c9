//! End-to-end tests of the command-line interface: output formats, exit
//! codes, and the documented flag surface.

use std::io::Write;
use std::process::{Command, Output};

fn grothkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args(args)
        .env_remove("GROTHKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn computes_single_box_families() {
    let out = grothkit(&["compute", "GP", "1", "--n", "1", "--deg", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "x1");

    let out = grothkit(&["compute", "GQ", "1", "--n", "1", "--deg", "2"]);
    assert_eq!(stdout_of(&out).trim(), "2*x1+b*x1^2");

    let out = grothkit(&["compute", "L", "1", "--n", "2", "--deg", "2"]);
    assert_eq!(stdout_of(&out).trim(), "x1+x2+b*x1*x2");
}

#[test]
fn expands_the_doubled_family_into_its_shifted_basis() {
    let out = grothkit(&["expand", "GQ", "2,1", "--basis", "GP", "--max-size", "5"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("4*GP(2,1)"), "got {text}");
}

#[test]
fn json_output_is_machine_readable() {
    let out = grothkit(&["--json", "compute", "K", "1", "--n", "1", "--deg", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(v.get("terms").is_some(), "got {v}");
}

#[test]
fn latex_output_renders_beta() {
    let out = grothkit(&["--latex", "compute", "GQ", "1", "--n", "1", "--deg", "2"]);
    let text = stdout_of(&out);
    assert_eq!(text.trim(), r"2\,x_{1} + \beta\,x_{1}^{2}");
    // Powers of beta must substitute in one pass, not twice.
    let out = grothkit(&["--latex", "compute", "GQ", "1", "--n", "2", "--deg", "3"]);
    let text = stdout_of(&out);
    assert!(text.contains(r"\beta^2"), "got {text}");
    assert!(!text.contains("betaeta"), "got {text}");
}

#[test]
fn enumerates_multiextensions_of_the_two_element_antichain() {
    let out = grothkit(&[
        "enumerate",
        "multiext",
        "--poset",
        "antichain2",
        "--maxlen",
        "3",
        "--count",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "4");
}

#[test]
fn enumerates_assignments_with_rendered_sets() {
    let out = grothkit(&[
        "enumerate",
        "svp",
        "--poset",
        "chain2",
        "--n",
        "2",
        "--max-total",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.lines().count() >= 3, "got {text}");
    assert!(text.contains("{1},{2}"), "got {text}");

    let out = grothkit(&[
        "enumerate",
        "esvp",
        "--poset",
        "chain1",
        "--n",
        "1",
        "--max-total",
        "2",
        "--count",
    ]);
    assert_eq!(stdout_of(&out).trim(), "3");
}

#[test]
fn enumerates_tableaux_of_small_shapes() {
    // Ordinary (2,1) has two standard tableaux; the shifted diagram is a
    // three-cell chain with exactly one.
    let out = grothkit(&[
        "enumerate",
        "tableaux",
        "--shape",
        "2,1",
        "--max-entries",
        "3",
        "--count",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "2");
    let out = grothkit(&[
        "enumerate",
        "tableaux",
        "--shape",
        "2,1",
        "--shifted",
        "--max-entries",
        "3",
        "--count",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1");
    let out = grothkit(&[
        "enumerate",
        "tableaux",
        "--shape",
        "2,1",
        "--shifted",
        "--max-entries",
        "3",
    ]);
    assert_eq!(stdout_of(&out).trim(), "(1,1)={1} (1,2)={2} (2,2)={3}");
}

#[test]
fn reads_posets_from_json_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let p = grothkit::posets::named_poset("vee").unwrap();
    write!(file, "{}", p.to_json()).unwrap();
    let arg = format!("@{}", file.path().display());
    let out = grothkit(&[
        "enumerate",
        "multiext",
        "--poset",
        &arg,
        "--maxlen",
        "3",
        "--count",
    ]);
    assert!(out.status.success());
    let direct = p.linear_multiextensions(3).len();
    assert_eq!(stdout_of(&out).trim(), direct.to_string());
}

#[test]
fn verifies_a_single_check_and_reports_pass() {
    let out = grothkit(&["verify", "yang-baxter", "--size", "6"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("yang-baxter: PASS"), "got {text}");
}

#[test]
fn verify_json_is_deterministic_across_runs() {
    let args = [
        "--json",
        "verify",
        "doubling",
        "--poset-size",
        "2",
        "--n",
        "3",
        "--deg",
        "3",
    ];
    let a = stdout_of(&grothkit(&args));
    let b = stdout_of(&grothkit(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert!(v[0].get("millis").is_none());
}

#[test]
fn conjecture_reports_are_labeled_and_do_not_fail_the_run() {
    let out = grothkit(&["verify", "dewitt-conjecture", "--size", "1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("CONSISTENT"), "got {text}");
    assert!(text.contains("not a proof"), "got {text}");
}

#[test]
fn lists_the_check_registry() {
    let out = grothkit(&["verify", "list"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 21, "got {text}");
    assert!(text.contains("gq-to-gp-conjecture:"), "got {text}");
}

#[test]
fn applies_algebra_maps() {
    let out = grothkit(&["apply", "rho", "L", "2,1", "--n", "3", "--deg", "3"]);
    assert!(out.status.success());
    let rho = stdout_of(&out);
    let direct = grothkit(&["compute", "L", "1,2", "--n", "3", "--deg", "3"]);
    assert_eq!(rho, stdout_of(&direct));

    let out = grothkit(&["apply", "theta", "L", "1,2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "K(3)");

    let out = grothkit(&["apply", "theta", "L", "2,1"]);
    assert_eq!(stdout_of(&out).trim(), "K(2,1)");
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["compute", "Z", "1"],
        &["compute", "G", "2,1", "--shifted"],
        &["compute", "K", "1,1"],
        &["compute", "GP", "1,2"],
        &["expand", "GQ", "2,1", "--basis", "Q"],
        &[
            "enumerate",
            "multiext",
            "--poset",
            "nosuch",
            "--maxlen",
            "2",
        ],
        &[
            "enumerate",
            "esvp",
            "--poset",
            "chain2",
            "--valleys",
            "1",
            "--n",
            "1",
            "--max-total",
            "2",
        ],
        &["verify", "no-such-check"],
        &["apply", "antipode", "K", "2"],
        &["apply", "twist", "L", "2"],
    ];
    for args in cases {
        let out = grothkit(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(
            !String::from_utf8_lossy(&out.stderr).is_empty(),
            "args {args:?}"
        );
    }
}

#[test]
fn thread_cap_is_validated_and_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args([
            "verify",
            "doubling",
            "--poset-size",
            "2",
            "--n",
            "3",
            "--deg",
            "3",
        ])
        .env("GROTHKIT_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = Command::new(env!("CARGO_BIN_EXE_grothkit"))
        .args(["compute", "L", "1"])
        .env("GROTHKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
