//! End-to-end checks of the `affdim` binary: output values, exit codes,
//! JSON config round trip, and agreement with direct library calls.

use affdim::digits::parse_spec;
use affdim::luroth::dim_f_finite;
use std::process::{Command, Output};

fn affdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn last_json(out: &Output) -> serde_json::Value {
    let text = stdout(out);
    serde_json::from_str(text.lines().last().expect("non-empty stdout")).expect("JSON tail")
}

#[test]
fn dim_1d_example() {
    let out = affdim(&["dim-1d", "--digits", "0:3;1:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.386852"), "{}", stdout(&out));
}

#[test]
fn dim_2d_telescoping_example() {
    let out = affdim(&["dim-2d", "--i", "2..inf", "--p", "0.5", "--tol", "1e-7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1.9999999") || text.contains("2.000000"), "{text}");
}

#[test]
fn spectrum_example() {
    let out = affdim(&["spectrum", "--target", "1.5", "--two-d", "--tol", "1e-3", "--json"]);
    assert!(out.status.success());
    let doc = last_json(&out);
    let achieved = doc["result"]["achieved"]["value"].as_f64().unwrap();
    assert!((achieved - 1.5).abs() <= 1e-3, "achieved {achieved}");
}

#[test]
fn cli_matches_library() {
    let out = affdim(&["dim-1d", "--digits", "0:3,7;1:4", "--json"]);
    assert!(out.status.success());
    let cli_value = last_json(&out)["result"]["hausdorff"]["value"].as_f64().unwrap();
    let lib_value = dim_f_finite(&parse_spec("0:3,7;1:4").unwrap(), 1e-9).unwrap().value;
    assert_eq!(cli_value.to_bits(), lib_value.to_bits());
}

#[test]
fn json_config_round_trip_is_bit_identical() {
    let out = affdim(&["dim-2d", "--digits", "0:2,3;1:3", "--p", "0.31", "--json"]);
    assert!(out.status.success());
    let first = last_json(&out);

    let dir = std::env::temp_dir().join(format!("affdim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string(&first["config"]).unwrap()).unwrap();

    let replay = affdim(&["run", "--config", path.to_str().unwrap(), "--json"]);
    assert!(replay.status.success());
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&last_json(&replay)).unwrap()
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes_follow_the_contract() {
    // invalid input → 1
    let out = affdim(&["dim-1d", "--digits", "0:1"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown flag → 1 (also invalid input)
    let out = affdim(&["dim-1d", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    // enumeration budget → 2
    let out = affdim(&["cover", "--digits", "*:2..9", "--depth", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // success → 0
    let out = affdim(&["eval", "--digits", "0:3,0:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.3888888888888888"), "{}", stdout(&out));
}

#[test]
fn render_writes_a_valid_pgm() {
    let dir = std::env::temp_dir().join(format!("affdim-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("attractor.pgm");
    let out = affdim(&[
        "render",
        "--digits",
        "*:2",
        "--resolution",
        "128",
        "--depth",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n128 128\n255\n"));
    assert_eq!(bytes.len(), 15 + 128 * 128);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn boxcount_writes_csv_with_header() {
    let dir = std::env::temp_dir().join(format!("affdim-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.csv");
    let out = affdim(&[
        "boxcount",
        "--fixture",
        "cantor-product",
        "--depth",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("delta,count,log2_delta,log2_count\n"), "{text}");
    assert_eq!(text.lines().count(), 10); // header + default 9-rung ladder
    std::fs::remove_dir_all(&dir).ok();
}
