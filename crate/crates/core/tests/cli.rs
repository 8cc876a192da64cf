use std::process::{Command, Output};

use meadowlab::report::{validate_example_report, validate_report, ReportVerdict};

fn meadowlab(args: &[&str], env: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meadowlab"))
        .args(args)
        .env_clear()
        .envs(env.iter().copied())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn residues_and_f() {
    let o = meadowlab(&["residues", "19"], &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 4 5 6 7 9 11 16 17\n");

    let o = meadowlab(&["f", "17", "20"], &[]);
    assert_eq!(stdout(&o), "17 1\n18 0\n19 2\n20 0\n");

    let o = meadowlab(&["f", "1", "8", "--by-prime-index"], &[]);
    assert_eq!(stdout(&o), "1 1\n2 2\n3 1\n4 3\n5 2\n6 1\n7 1\n8 2\n");
}

#[test]
fn eval_in_models() {
    let o = meadowlab(&["eval", "x * inv(y)", "-b", "x=1/2", "-b", "y=3"], &[]);
    assert_eq!(stdout(&o), "1/6\n");
    let o = meadowlab(&["eval", "inv(0)"], &[]);
    assert_eq!(stdout(&o), "0\n");
    let o = meadowlab(&["--model", "fp:7", "eval", "inv(3)"], &[]);
    assert_eq!(stdout(&o), "5\n");
    let o = meadowlab(&["eval", "inv(1 + i)", "--model", "qi"], &[]);
    assert_eq!(stdout(&o), "1/2 - (1/2)i\n");
}

#[test]
fn environment_overrides_defaults() {
    let o = meadowlab(&["eval", "inv(3)"], &[("MEADOWLAB_MODEL", "fp:7")]);
    assert_eq!(stdout(&o), "5\n");
    // flags win over the environment
    let o = meadowlab(&["eval", "inv(3)", "--model", "fp:11"], &[("MEADOWLAB_MODEL", "fp:7")]);
    assert_eq!(stdout(&o), "4\n");

    let o = meadowlab(&["speccheck", "L:2"], &[("MEADOWLAB_BOUND", "50")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NoWitnessBelow(50)\n"), "{}", stdout(&o));

    let o = meadowlab(&["speccheck", "L:1"], &[("MEADOWLAB_OUTPUT", "json")]);
    let r = validate_report(&stdout(&o)).unwrap();
    assert_eq!(r.verdict, ReportVerdict::NotASpec);
    assert_eq!(r.witness_prime, Some(3));
}

#[test]
fn json_reports_validate() {
    let o = meadowlab(&["hfamily", "1", "--output", "json"], &[]);
    assert!(o.status.success());
    let r = validate_report(&stdout(&o)).unwrap();
    assert_eq!(r.verdict, ReportVerdict::WitnessFound);
    assert_eq!(r.witness_prime, Some(7));

    let o = meadowlab(&["proposition", "2", "--output", "json"], &[]);
    assert!(o.status.success());
    let r = validate_report(&stdout(&o)).unwrap();
    assert_eq!(r.verdict, ReportVerdict::Confirmed);
    assert!(r.f_value.unwrap() > 3);

    let o = meadowlab(&["example", "--bound", "1000", "--samples", "200", "--output", "json"], &[]);
    assert!(o.status.success());
    let r = validate_example_report(&stdout(&o)).unwrap();
    assert!(r.holds);
    assert_eq!(r.bound, 1000);
}

#[test]
fn check_model_falsifies_and_satisfies() {
    let o = meadowlab(&["check-model", "x * inv(x) = 1", "--model", "fp:5"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("falsified"), "{}", stdout(&o));
    let o = meadowlab(&["check-model", "inv(inv(x)) = x", "--model", "fp:13"], &[]);
    assert_eq!(stdout(&o), "satisfied\n");
}

#[test]
fn failures_exit_nonzero() {
    let o = meadowlab(&["hfamily", "20", "--bound", "100"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NoWitnessBelow(100)"), "{}", stdout(&o));

    let o = meadowlab(&["eval", "x +"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"), "{}", stderr(&o));

    let o = meadowlab(&["residues", "21"], &[]);
    assert_eq!(o.status.code(), Some(2));

    let o = meadowlab(&["frobnicate"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let o = meadowlab(&["speccheck", "L:1", "--bound", "1"], &[]);
    assert_eq!(o.status.code(), Some(2));

    let o = meadowlab(&["eval", "1"], &[("MEADOWLAB_SAMPLES", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version() {
    let o = meadowlab(&["--help"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("speccheck"));
    let o = meadowlab(&["--version"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(env!("CARGO_PKG_VERSION")));
}
