use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    json: Option<Value>,
    stdout: String,
    stderr: String,
}

fn modft(args: &[&str]) -> Run {
    modft_stdin(args, None)
}

fn modft_stdin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_modft"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        json: serde_json::from_str(&stdout).ok(),
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn result(run: &Run) -> &Value {
    &run.json.as_ref().expect("stdout is JSON")["result"]
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

const GOLDEN_IN: &str = "0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15";
const GOLDEN_OUT: [u64; 16] = [1, 8, 2, 15, 7, 4, 6, 5, 9, 13, 12, 14, 11, 3, 16, 10];

#[test]
fn cyclic_dft_golden_vector_and_inverse() {
    let fwd = modft(&["cyclic-dft", "--n", "16", "--p", "17", "--input", GOLDEN_IN]);
    assert_eq!(fwd.code, 0, "{}", fwd.stderr);
    let env = fwd.json.as_ref().unwrap();
    assert_eq!(env["command"], "cyclic-dft");
    assert!(env["timing_ms"].is_number());
    assert_eq!(u64s(&result(&fwd)["output"]), GOLDEN_OUT);
    assert_eq!(result(&fwd)["alpha"], 3);

    let csv: Vec<String> = GOLDEN_OUT.iter().map(u64::to_string).collect();
    let inv = modft(&["cyclic-dft", "--n", "16", "--p", "17", "--inverse", "--input", &csv.join(",")]);
    assert_eq!(u64s(&result(&inv)["output"]), (0..16).collect::<Vec<_>>());
}

#[test]
fn cyclic_dft_reads_stdin() {
    let run = modft_stdin(&["cyclic-dft", "--n", "16", "--p", "17", "--input", "-"], Some("0 1 2 3 4 5 6 7\n8 9 10 11 12 13 14 15\n"));
    assert_eq!(u64s(&result(&run)["output"]), GOLDEN_OUT);
}

#[test]
fn cyclic_dft_precondition_errors() {
    let run = modft(&["cyclic-dft", "--n", "16", "--p", "7"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("N does not divide p-1"), "{}", run.stderr);
    let run = modft(&["cyclic-dft", "--n", "7", "--p", "7"]);
    assert_eq!(run.code, 2);
    let run = modft(&["cyclic-dft", "--n", "16", "--p", "17", "--alpha", "2"]);
    assert_eq!(run.code, 2, "2 has order 8 mod 17");
    let run = modft(&["cyclic-dft", "--n", "4", "--p", "17", "--input", "1,2,3"]);
    assert_eq!(run.code, 2);
    let run = modft(&["cyclic-dft", "--n", "4", "--p", "15"]);
    assert_eq!(run.code, 2);
}

#[test]
fn factor_xn1_examples() {
    let run = modft(&["factor-xn1", "--n", "10", "--p", "7"]);
    let factors = result(&run)["factors"].as_array().unwrap().clone();
    assert_eq!(factors.len(), 4);
    let quartics: Vec<&Value> = factors.iter().filter(|f| f["coefficients"].as_array().unwrap().len() == 5).collect();
    assert_eq!(quartics.len(), 2);
    for q in quartics {
        assert_eq!((q["f"].as_u64(), q["g"].as_u64()), (Some(4), Some(1)));
    }

    let run = modft(&["factor-xn1", "--n", "6", "--p", "7"]);
    let factors = result(&run)["factors"].as_array().unwrap().clone();
    assert_eq!(factors.len(), 6);
    assert!(factors.iter().all(|f| f["coefficients"].as_array().unwrap().len() == 2));

    let run = modft(&["factor-xn1", "--n", "6", "--p", "2", "--splitting-field"]);
    let r = result(&run);
    assert!(r["factors"].as_array().unwrap().iter().all(|f| f["multiplicity"] == 2));
    assert_eq!(r["reconstruction_ok"], true);
    assert_eq!(r["splitting_field"]["degree"], 2);
}

#[test]
fn crt_dft_examples() {
    let zero = modft(&["crt-dft", "--n", "12", "--p", "2", "--input", "0,0,0,0,0,0,0,0,0,0,0,0"]);
    for r in result(&zero)["residues"].as_array().unwrap() {
        assert!(u64s(r).iter().all(|&x| x == 0));
    }

    let delta = modft(&["crt-dft", "--n", "10", "--p", "7", "--input", "1,0,0,0,0,0,0,0,0,0"]);
    for r in result(&delta)["residues"].as_array().unwrap() {
        let r = u64s(r);
        assert_eq!(r[0], 1);
        assert!(r[1..].iter().all(|&x| x == 0));
    }

    for (n, p, signal) in [("10", "7", "3,1,4,1,5,9,2,6,5,3"), ("6", "2", "1,0,1,1,0,1"), ("9", "3", "2,7,1,8,2,8,1,8,2")] {
        let fwd = modft(&["crt-dft", "--n", n, "--p", p, "--input", signal]);
        assert_eq!(result(&fwd)["total_length"].as_u64().unwrap().to_string(), n);
        let flat: Vec<String> = result(&fwd)["residues"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(u64s)
            .map(|x| x.to_string())
            .collect();
        let inv = modft(&["crt-dft", "--n", n, "--p", p, "--inverse", "--input", &flat.join(",")]);
        let pm: u64 = p.parse().unwrap();
        let want: Vec<u64> = signal.split(',').map(|x| x.parse::<u64>().unwrap() % pm).collect();
        assert_eq!(u64s(&result(&inv)["output"]), want);
    }

    let bad = modft(&["crt-dft", "--n", "10", "--p", "7", "--inverse", "--input", "1,2,3"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn sn_idempotents_and_modular_dft() {
    let run = modft(&["sn", "idempotents", "--n", "3", "--p", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r = result(&run);
    assert_eq!(r["count"], 2);
    assert_eq!(r["count_matches_p_cores"], true);
    for check in ["central", "idempotent", "orthogonal", "sum_is_one", "primitive"] {
        assert_eq!(r["checks"][check], true, "{check}");
    }

    let run = modft(&["sn", "modular-dft", "--n", "4", "--p", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r = result(&run);
    assert_eq!(r["block_diagonal"], true);
    assert_eq!(r["basis"].as_array().unwrap().len(), 24);
    assert_eq!(r["layout"].as_array().unwrap().len(), 3);
}

#[test]
fn sn_matrix_order_on_stored_matrices() {
    let run = modft(&["sn", "matrix-order", "--fixture", "stored-3-4"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(result(&run)["order"], "488488");
    let run = modft(&["sn", "matrix-order", "--fixture", "stored-2-3"]);
    assert_eq!(result(&run)["order"], "4");
    let run = modft(&["sn", "matrix-order", "--fixture", "nope"]);
    assert_eq!(run.code, 2);
    let run = modft(&["sn", "matrix-order", "--n", "3", "--p", "2"]);
    assert_eq!(run.code, 0);
    assert!(result(&run)["order"].is_string());
}

#[test]
fn sn_dft_idft_round_trip() {
    let dft = modft(&["sn", "dft", "--n", "3", "--input", "1/2,-3,0,4,5/7,1"]);
    assert_eq!(dft.code, 0, "{}", dft.stderr);
    let flat: Vec<String> = result(&dft)["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|b| b["matrix"].as_array().unwrap().clone())
        .flat_map(|row| row.as_array().unwrap().clone())
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(flat.len(), 6);
    let idft = modft(&["sn", "idft", "--n", "3", "--input", &flat.join(",")]);
    let out: Vec<&str> = result(&idft)["output"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(out, ["1/2", "-3", "0", "4", "5/7", "1"]);

    let modular = modft(&["sn", "idft", "--n", "3", "--p", "3", "--input", "1,0,0,0,0,0"]);
    assert_eq!(modular.code, 2);
    assert!(modular.stderr.contains("divides"), "{}", modular.stderr);
}

#[test]
fn sn_unitary_and_guards() {
    let run = modft(&["sn", "unitary", "--n", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(result(&run)["unitarity_defect"].as_f64().unwrap() <= 1e-10);
    assert_eq!(modft(&["sn", "unitary", "--n", "6"]).code, 2);
    assert_eq!(modft(&["sn", "idempotents", "--n", "7", "--p", "2"]).code, 2);
    assert_eq!(modft(&["sn", "idempotents", "--n", "3"]).code, 2);
    assert_eq!(modft(&["sn", "unitary", "--n", "4", "--verify-fixture"]).code, 2);
}

#[test]
fn verify_fixture_reports_each_check() {
    // The stored g and eigenvalues belong to f(-x); (d) and (e) fail and the
    // command exits with the verification-failure code.
    let run = modft(&["sn", "unitary", "--n", "3", "--verify-fixture"]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    let r = result(&run);
    let pass: Vec<bool> = r["checks"].as_array().unwrap().iter().map(|c| c["pass"].as_bool().unwrap()).collect();
    assert_eq!(pass, [true, true, true, false, false, true]);
    assert_eq!(r["diagnostics"]["stored_g_is_norm_at_minus_x"], true);
    assert_eq!(r["diagnostics"]["stored_eigenvalues_are_negated"], true);
}

#[test]
fn identical_seed_gives_identical_payload() {
    for args in [
        vec!["sn", "idempotents", "--n", "4", "--p", "2", "--seed", "11"],
        vec!["sn", "modular-dft", "--n", "3", "--p", "3", "--seed", "5"],
        vec!["sn", "dft", "--n", "3", "--seed", "9"],
        vec!["factor-xn1", "--n", "21", "--p", "2", "--seed", "3"],
    ] {
        let a = modft(&args);
        let b = modft(&args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(result(&a), result(&b));
    }
}

#[test]
fn pretty_output_is_valid_json_with_rows_on_lines() {
    let run = modft(&["--pretty", "sn", "unitary", "--n", "2"]);
    assert!(run.json.is_some());
    assert!(run.stdout.lines().any(|l| l.trim().starts_with("[0.7071067811865476,0.7071067811865476]")));
}
