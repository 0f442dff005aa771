use std::path::PathBuf;
use std::process::{Command, Output};

use starpi::analysis::{codim_table, CodimTable, Target};
use starpi::staralg::mk_exchange;
use starpi::tideal::TidealOptions;
use tempfile::TempDir;

fn starpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starpi"))
        .args(args)
        .env_remove("STARPI_PRIME")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn spec(dir: &TempDir, name: &str, json: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn codim_columns() {
    let dir = TempDir::new().unwrap();
    let t1 = spec(&dir, "t1.json", r#"{"kind":"transpose","k":1}"#);
    let o = starpi(&["codim", "--spec", &t1, "--n-max", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let table = CodimTable::from_csv(&stdout(&o)).unwrap();
    assert!((1..=4).all(|n| table.cell(0, n).value() == Some(1)));

    let ex = spec(&dir, "ex.json", r#"{"kind":"exchange","h":1}"#);
    let o = starpi(&["codim", "--spec", &ex, "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(rows, ["2", "4", "8"]);

    let single = starpi(&["codim", "--spec", &ex, "--n", "3", "--format", "csv"]);
    let table = CodimTable::from_csv(&stdout(&single)).unwrap();
    assert_eq!((table.degrees.clone(), table.cell(0, 3).value()), (vec![3], Some(8)));
}

#[test]
fn csv_round_trips() {
    let dir = TempDir::new().unwrap();
    let ex = spec(&dir, "ex.json", r#"{"kind":"exchange","h":1}"#);
    let out = dir.path().join("table.csv");
    let o = starpi(&[
        "codim",
        "--spec",
        &ex,
        "--gamma",
        "2,1",
        "--n-max",
        "3",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = CodimTable::from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let targets = [
        Target::Algebra(mk_exchange(1).unwrap()),
        Target::Ideal {
            name: "Gamma(2,1)".into(),
            gens: starpi::tideal::gamma_generators(2, 1).unwrap(),
        },
    ];
    let direct = codim_table(&targets, 3, &TidealOptions::default()).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn spec_errors_and_refusals() {
    let dir = TempDir::new().unwrap();
    let bad = spec(&dir, "bad.json", r#"{"kind":"transpose","k":0}"#);
    let o = starpi(&["codim", "--spec", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let garbled = spec(&dir, "garbled.json", r#"{"kind":"tranpose","k":1}"#);
    assert_eq!(starpi(&["codim", "--spec", &garbled]).status.code(), Some(1));
    assert_eq!(starpi(&["codim", "--bogus-flag"]).status.code(), Some(1));

    let m2 = spec(&dir, "m2.json", r#"{"kind":"transpose","k":2}"#);
    let o = starpi(&["codim", "--spec", &m2, "--n-max", "4", "--budget", "2000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("refused"));
}

#[test]
fn identity_verdicts() {
    let dir = TempDir::new().unwrap();
    let t1 = spec(&dir, "t1.json", r#"{"kind":"transpose","k":1}"#);
    let t2 = spec(&dir, "t2.json", r#"{"kind":"transpose","k":2}"#);
    let o = starpi(&["identity", "--spec", &t1, "z1"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let o = starpi(&["identity", "--spec", &t2, "y1*y2-y2*y1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("false\nwitness: y1 = "), "{text}");
    assert_eq!(stdout(&starpi(&["identity", "--spec", &t2, "y1*y2-y2*y1"])), text);
    assert_eq!(starpi(&["identity", "--spec", &t1, "y1*y1"]).status.code(), Some(1));
}

#[test]
fn capelli_printer() {
    let o = starpi(&["capelli", "--m", "2", "--kind", "symmetric"]);
    assert_eq!(stdout(&o), "y1*x1*y2 - y2*x1*y1\n");
    assert_eq!(stdout(&starpi(&["capelli", "--m", "1", "--kind", "skew"])), "z1\n");
    let o = starpi(&["capelli", "--m", "3", "--deleted"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn verify_suites() {
    let dir = TempDir::new().unwrap();
    let ut = spec(
        &dir,
        "ut.json",
        r#"{"kind":"ut_star","components":[{"kind":"transpose","k":1}]}"#,
    );
    let o = starpi(&["verify", "thresholds", "--spec", &ut]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(starpi(&["verify", "tideal-containment"]).status.code(), Some(0));
    assert_eq!(starpi(&["verify", "exponents"]).status.code(), Some(0));
    assert_eq!(starpi(&["verify", "simple-witnesses"]).status.code(), Some(0));
    assert_eq!(starpi(&["verify", "direct-sum", "--n-max", "3"]).status.code(), Some(0));

    // the ideal of the 1x1 case is not inside Id*(M_2, t)
    let m2 = spec(&dir, "m2.json", r#"{"kind":"transpose","k":2}"#);
    let o = starpi(&[
        "verify",
        "tideal-containment",
        "--m",
        "2",
        "--l",
        "1",
        "--spec",
        &m2,
        "--n-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[FAIL]"));

    let not_ut = spec(&dir, "t.json", r#"{"kind":"transpose","k":1}"#);
    assert_eq!(
        starpi(&["verify", "thresholds", "--spec", &not_ut]).status.code(),
        Some(1)
    );
}

#[test]
fn prime_from_environment() {
    let dir = TempDir::new().unwrap();
    let t1 = spec(&dir, "t1.json", r#"{"kind":"transpose","k":1}"#);
    let run = |extra: &[&str]| {
        let mut args = vec!["codim", "--spec", t1.as_str(), "--n-max", "2"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_starpi"))
            .args(&args)
            .env("STARPI_PRIME", "4")
            .output()
            .unwrap()
    };
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["--prime", "1000003"]).status.code(), Some(0));
}

#[test]
fn exponent_command() {
    let dir = TempDir::new().unwrap();
    let ut = spec(
        &dir,
        "ut.json",
        r#"{"kind":"ut_star","components":[{"kind":"exchange","h":1},{"kind":"symplectic","m":1}]}"#,
    );
    let o = starpi(&["exponent", "--spec", &ut]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exp* = 6"));
}
