//! End-to-end checks of the command-line surface: exact text output,
//! JSON-line structure, exit codes and byte-for-byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "command failed: {args:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_split_fiber() {
    assert_eq!(stdout(&["classify", "--eta", "3,4,-4,3"]), "SingularSplit λ=5\n");
    assert_eq!(stdout(&["classify", "--eta", "1,5,0,3"]), "Nonsingular\n");
    assert_eq!(
        stdout(&["classify", "--eta", "1,1,1,-1"]),
        "SingularPointless\n"
    );
}

#[test]
fn torsion_verdicts() {
    assert_eq!(stdout(&["torsion", "--r", "0", "--s", "2"]), "Order2\n1*(-1,0) = (-1, 0)\n2*(-1,0) = O\n");
    let out = stdout(&["torsion", "--r", "-7/2", "--s", "-1/2"]);
    assert_eq!(out, "NonTorsion\n");
    // Order-8 chain has eight multiples ending at O.
    let out = stdout(&["torsion", "--r", "15/4", "--s", "4"]);
    assert!(out.starts_with("Order8\n"));
    assert_eq!(out.lines().count(), 9);
    assert!(out.trim_end().ends_with("= O"));
}

#[test]
fn reduce_prints_witness() {
    let out = stdout(&["reduce", "--eta", "0,1,2,-7", "--point", "0:2:1"]);
    assert_eq!(
        out,
        "r = -7/2\ns = -1/2\nr1 = 0,1,-1,0\nr2 = 1,0,0,1\nscale = 1/2\n"
    );
}

#[test]
fn verify_reports_witnesses_and_degeneracy() {
    let out = stdout(&["verify", "--eta", "1,5,0,3", "--point", "0:1:1"]);
    assert!(out.contains("alpha1 = (0:1) hyp = 1"));
    assert!(out.contains("alpha2 = (1:0) hyp = 1"));
    assert!(out.contains("degenerate = true"));
}

#[test]
fn three_distance_json_lines_verify() {
    let out = stdout(&["three-distance", "--t", "2", "--n-max", "5", "--json"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() >= 4, "expected at least 4 defined solutions");
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let rat = |key: &str| ratdist::arith::parse_rat(v[key].as_str().unwrap()).unwrap();
        let (x, y) = (rat("x"), rat("y"));
        let (d1, d2, d3) = (rat("d1"), rat("d2"), rat("d3"));
        assert_eq!(&d1 * &d1, &x * &x + &y * &y);
        let one = ratdist::arith::rat_i(1);
        let ym = &one - &y;
        assert_eq!(&d2 * &d2, &x * &x + &ym * &ym);
        let xm = &one - &x;
        assert_eq!(&d3 * &d3, &xm * &xm + &ym * &ym);
        assert_eq!(v["t"].as_str().unwrap(), "2");
    }
}

#[test]
fn three_distance_respects_cap() {
    let out = run(&["three-distance", "--t", "2", "--n-max", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let ok = run(&["three-distance", "--t", "2", "--n-max", "6", "--n-cap", "6"]);
    assert!(ok.status.success());
}

#[test]
fn decompose_sum_lines() {
    let out = stdout(&["decompose", "--mode", "sum", "--target", "3/4", "--count", "2", "--json"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let slopes = v["slopes"].as_array().unwrap();
        let sum: ratdist::Rat = slopes
            .iter()
            .map(|s| ratdist::arith::parse_rat(s.as_str().unwrap()).unwrap())
            .sum();
        assert_eq!(sum, ratdist::arith::rat(3, 4));
    }
}

#[test]
fn census_summary_echoes_seed() {
    let out = stdout(&[
        "census", "--x", "2", "--prime-bound", "20", "--sample", "50", "--seed", "7", "--json",
    ]);
    let last = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["summary"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["considered"], 50);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["census", "--x", "2", "--prime-bound", "30", "--sample", "100", "--seed", "11", "--json"],
        vec!["three-distance", "--t", "1/2", "--n-max", "6", "--json"],
        vec!["decompose", "--mode", "three-product", "--target", "1", "--count", "2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }
}

#[test]
fn exit_codes_distinguish_failures() {
    // Precondition violation: excluded torsion parameters.
    assert_eq!(run(&["torsion", "--r", "0", "--s", "1"]).status.code(), Some(1));
    // Precondition violation: off-curve point.
    assert_eq!(
        run(&["reduce", "--eta", "1,5,0,3", "--point", "0:2:1"]).status.code(),
        Some(1)
    );
    // Usage: malformed rational and unknown command.
    assert_eq!(run(&["classify", "--eta", "1,x,0,3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    // Zero determinant is rejected as a precondition of the domain type.
    assert_eq!(run(&["classify", "--eta", "1,2,2,4"]).status.code(), Some(1));
}

#[test]
fn rational_round_trip_through_output() {
    let out = stdout(&["reduce", "--eta", "0,1,2,-5", "--point", "0:2:1"]);
    for line in out.lines() {
        if let Some((_, val)) = line.split_once(" = ") {
            if !val.contains(',') {
                let q = ratdist::arith::parse_rat(val).unwrap();
                assert_eq!(ratdist::arith::format_rat(&q), val);
            }
        }
    }
}
