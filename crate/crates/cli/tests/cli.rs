use std::process::{Command, Output};

use csf_core::Poly;

fn csf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn poly_of(args: &[&str]) -> Poly {
    let o = csf(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim().parse().unwrap()
}

#[test]
fn rho_examples() {
    let o = csf(&["rho", "--n", "1", "--word", "xy"]);
    assert_eq!(o.status.code(), Some(0));
    // canonical order puts xxy before xyy
    assert_eq!(stdout(&o), "-1*xxy + 1*xyy\n");
    assert_eq!(poly_of(&["rho", "--n", "2", "--word", "xy"]), "xyyy - xxxy".parse().unwrap());
    assert_eq!(poly_of(&["rhobar", "--n", "1", "--word", "xy"]), "xyy - 2*xxy".parse().unwrap());
    assert_eq!(poly_of(&["del", "--n", "1", "--word", "yxy"]), "-xyxy + yxyy - yxxy".parse().unwrap());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(csf(&["rho", "--n", "0", "--word", "xy"]).status.code(), Some(2));
    assert_eq!(csf(&["rho", "--n", "1", "--word", "xz"]).status.code(), Some(2));
    assert_eq!(csf(&["map", "--name", "d", "--input", "yx"]).status.code(), Some(2));
    assert_eq!(csf(&["zeta", "--index", "1,2"]).status.code(), Some(2));
    assert_eq!(csf(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(csf(&["keyprop", "--n", "3", "--ks", "2,1"]).status.code(), Some(2));
}

#[test]
fn maps_and_products() {
    assert_eq!(poly_of(&["map", "--name", "gamma", "--input", "y"]), "x + y".parse().unwrap());
    assert_eq!(poly_of(&["map", "--name", "phi", "--input", "xy"]), "-xy - yy".parse().unwrap());
    assert_eq!(poly_of(&["map", "--name", "alpha-tilde", "--input", "xxy"]), "yyy".parse().unwrap());
    assert_eq!(poly_of(&["star", "--left", "2", "--right", "y"]), "xyy + yxy + xxy".parse().unwrap());
    assert_eq!(poly_of(&["star", "--bar", "--left", "y", "--right", "y"]), "2*yy - xy".parse().unwrap());
    assert_eq!(poly_of(&["cderiv", "--variant", "c", "--word", "xy"]), "xxy".parse().unwrap());
    assert_eq!(poly_of(&["cderiv", "--variant", "cbar", "--word", "xy"]), "xyy".parse().unwrap());
}

#[test]
fn structured_terms() {
    let o = csf(&["--format", "structured", "rho", "--n", "1", "--word", "xy"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"terms": [{"coeff": "-1", "word": "xxy"}, {"coeff": "1", "word": "xyy"}]})
    );
}

#[test]
fn text_output_round_trips() {
    for w in ["xy", "yxy", "xxyxy", "yyxxy"] {
        for cmd in ["rho", "rhobar", "del"] {
            let p = poly_of(&[cmd, "--n", "2", "--word", w]);
            let again = poly_of(&["map", "--name", "gamma", "--input", &p.to_string()]);
            let back = poly_of(&["map", "--name", "gamma-inv", "--input", &again.to_string()]);
            assert_eq!(back, p);
        }
    }
}

#[test]
fn membership_and_key_prop() {
    let o = csf(&["member", "--n", "2", "--word", "yxy"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("member\n"));
    assert_eq!(csf(&["member", "--bar", "--n", "1", "--word", "xxyy"]).status.code(), Some(0));
    let o = csf(&["keyprop", "--n", "1", "--ks", "1,1"]);
    assert_eq!(stdout(&o), "lhs: 1*xy + 2*yy\nrhs: 1*xy + 2*yy\nequal: true\n");
}

#[test]
fn dims_small() {
    let o = csf(&["dims", "--max-weight", "5"]);
    assert_eq!(
        stdout(&o),
        "weight d+n  3  4  5\nn=1         1  2  4\nn=2            1  3\nn=3               1\n"
    );
    let o = csf(&["dims", "--max-weight", "4", "--format", "structured"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"entries":[{"weight":3,"n":1,"dim":1},{"weight":4,"n":1,"dim":2},{"weight":4,"n":2,"dim":1}]}"#
    );
}

#[test]
fn numeric_commands() {
    let o = csf(&["check-csf", "--star", "--ks", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = csf(&["--format", "structured", "zeta", "--index", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-5);
    assert_eq!(csf(&["check-csf", "--ks", "1,1"]).status.code(), Some(2));
}

#[test]
fn verify_reports_and_exit() {
    let o = csf(&["verify", "keyprop", "--max-weight", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("keyprop: "));
    assert!(stdout(&o).contains(" 0 failed"));
    let o = csf(&["verify", "numeric", "--max-weight", "6", "--M", "100000"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_csf"))
            .args(["verify", "prop5", "--max-degree", "5"])
            .env("CSF_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
    let dims = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_csf"))
            .args(["dims", "--max-weight", "9"])
            .env("CSF_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(dims("1"), dims("3"));
}
