use std::process::Command;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use s2degree_cli::{run, CliConfig, EXIT_HYPOTHESIS, EXIT_OK, EXIT_USAGE};

fn config(args: &[&str]) -> CliConfig {
    CliConfig::try_parse_from(std::iter::once("s2degree").chain(args.iter().copied())).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = run(&config(&all));
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn worked_example_three_uses_root_count() {
    let (code, v) = json(&["--f", "z*conj(z)^4+z*conj(z)^2+3", "--g", "z^3*conj(z)+z"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["degree"], -3);
    assert_eq!(v["method"], "theorem2");
    assert_eq!(v["d"], 5);
    assert_eq!(v["roots_inside"], 2);
    assert_eq!(v["diagnostics"]["common_zero_certified"], true);
}

#[test]
fn worked_example_four_with_oracle() {
    let (code, v) = json(&[
        "--f",
        "z^2*conj(z)^3+2*z^4*conj(z)+3*z^2+2",
        "--g",
        "3*z^3+conj(z)",
        "--oracle",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["degree"], 3);
    let oracle = v["diagnostics"]["oracle_value"].as_f64().unwrap();
    assert!((oracle - 3.0).abs() < 0.1, "{oracle}");
    // z^4 + 2 z^8 as [re, im] pairs.
    let coeffs = v["tilde_T_coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 9);
    assert_eq!(coeffs[4], serde_json::json!([1.0, 0.0]));
    assert_eq!(coeffs[8], serde_json::json!([2.0, 0.0]));
}

#[test]
fn worked_example_five_numeric() {
    let (code, v) = json(&[
        "--f",
        "z^3+conj(z)^3+z",
        "--g",
        "1",
        "--method",
        "numeric",
        "--radius",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["method"], "numeric_winding");
    assert_eq!(v["M"], 1.0);
}

#[test]
fn exact_mode_agrees() {
    let (_, a) = json(&[
        "--f",
        "z*conj(z)^4+z*conj(z)^2+3",
        "--g",
        "z^3*conj(z)+z",
        "--exact",
    ]);
    assert_eq!(a["degree"], -3);
    let (_, b) = json(&["--f", "z^2 + 1/3", "--g", "conj(z)", "--exact"]);
    assert_eq!(b["degree"], 2);
}

#[test]
fn hypothesis_failures_exit_two() {
    let (code, v) = json(&["--f", "z-1", "--g", "conj(z)-1"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_HYPOTHESIS, "CommonZeroSuspected")
    );
    let (code, v) = json(&["--f", "z+conj(z)", "--g", "z-conj(z)+1"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_HYPOTHESIS, "LimitDoesNotExist")
    );
    let (code, v) = json(&["--f", "z-conj(z)", "--g", "1"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_HYPOTHESIS, "TDominanceFailure")
    );
}

#[test]
fn unchecked_common_zero_still_computes() {
    let (code, v) = json(&[
        "--f",
        "z-1",
        "--g",
        "conj(z)-1",
        "--check-common-zeros",
        "false",
    ]);
    // Formally 1/R = (z-1)/(conj(z)-1) has modulus one; the pipeline does
    // not see the common zero without the check.
    assert_eq!(code, EXIT_HYPOTHESIS, "{v}");
    assert_eq!(v["error"], "LimitDoesNotExist");
}

#[test]
fn auto_falls_back_to_winding_with_radius() {
    // T = z - conj(z) vanishes on the circle; the given radius rescues it.
    let (code, v) = json(&[
        "--f",
        "z*conj(z)*(z-conj(z)) + 1",
        "--g",
        "1",
        "--radius",
        "2",
    ]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["method"], "numeric_winding");
    assert_eq!(v["diagnostics"]["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn parse_and_usage_errors_exit_one() {
    let (code, v) = json(&["--f", "z+", "--g", "1"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_USAGE, "ParseError")
    );
    let (code, v) = json(&["--f", "z", "--g", "q"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_USAGE, "ParseError")
    );
    let (code, v) = json(&["--f", "0", "--g", "0"]);
    assert_eq!(
        (code, v["error"].as_str().unwrap()),
        (EXIT_USAGE, "BothZero")
    );
    let (code, _) = json(&["--f", "z", "--g", "1", "--radius=-1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(CliConfig::try_parse_from(["s2degree", "--f", "z"]).is_err());
}

#[test]
fn overrides_reach_the_winding_route() {
    let (code, v) = json(&[
        "--f",
        "z^3+conj(z)^3+z",
        "--g",
        "1",
        "--method",
        "numeric",
        "--radius",
        "1",
        "--samples",
        "8",
        "--max-depth",
        "5",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["degree"], 1);
    assert!(v["diagnostics"]["refinement_depth"].as_u64().unwrap() > 0);
}

#[test]
fn json_is_byte_stable_and_matches_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let atoms = [
        "z",
        "conj(z)",
        "z*conj(z)",
        "2",
        "i",
        "z^2",
        "conj(z)^3",
        "(1+i)*z^3",
    ];
    for _ in 0..20 {
        let mut pick = |n: usize| {
            (0..n)
                .map(|_| atoms[rng.gen_range(0..atoms.len())])
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let f = pick(3);
        let g = pick(2);
        let mut cfg = CliConfig::new(&f, &g);
        cfg.output = s2degree_cli::OutputFormat::Json;
        let a = run(&cfg);
        let b = run(&cfg);
        assert_eq!(a, b, "{f} / {g}");
        cfg.output = s2degree_cli::OutputFormat::Text;
        let t = run(&cfg);
        assert_eq!(a.code, t.code);
        if a.code == EXIT_OK {
            let v: Value = serde_json::from_str(&a.stdout).unwrap();
            let line = t.stdout.lines().next().unwrap();
            assert_eq!(line, format!("degree: {}", v["degree"]));
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_s2degree");
    let out = Command::new(bin)
        .args(["--f", "z^2+1", "--g", "z", "--output", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 2);

    let out = Command::new(bin)
        .args(["--f", "z-1", "--g", "conj(z)-1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("common zero"));

    let out = Command::new(bin).args(["--f", "z"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["--f", "z", "--g", "1", "--method", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
