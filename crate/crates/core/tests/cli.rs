//! Command-line behaviour: exit codes and schema-stable JSON output.

use std::path::Path;

use interlace_core::cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use jsonschema::JSONSchema;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
}

fn interlace(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("interlace").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
    }
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{schema_name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).unwrap_or_else(|e| panic!("{schema_name}: {e}"));
    if let Err(errors) = compiled.validate(doc) {
        let messages: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("{schema_name} rejected output:\n{}", messages.join("\n"));
    };
}

fn json_of(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

const LOW: [&str; 8] = ["--a", "-3", "--b", "-5", "--c", "0.8", "--d", "-1"];
const HIGH: [&str; 8] = ["--a", "-3", "--b", "-5", "--c", "10", "--d", "-1"];
const OUTSIDE: [&str; 8] = ["--a", "-0.3", "--b", "-1", "--c", "20", "--d", "-60"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn help_on_every_subcommand() {
    assert_eq!(interlace(&["--help"]).code, EXIT_OK);
    for sub in [
        "seq",
        "landmarks",
        "roots",
        "verify",
        "scan",
        "repro",
        "cstar",
    ] {
        let o = interlace(&[sub, "--help"]);
        assert_eq!(o.code, EXIT_OK, "{sub}");
        assert!(o.stdout.contains("Usage"), "{sub}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(interlace(&[]).code, EXIT_USAGE);
    assert_eq!(interlace(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(interlace(&["seq", "--n", "3"]).code, EXIT_USAGE);
    assert_eq!(interlace(&with(&LOW, &["seq"])[..]).code, EXIT_USAGE);
    assert_eq!(
        interlace(&["seq", "--n", "3", "--a", "x", "--b", "-5", "--c", "1", "--d", "-1"]).code,
        EXIT_USAGE
    );
    assert_eq!(interlace(&["repro", "7.7"]).code, EXIT_USAGE);
    assert_eq!(interlace(&["repro"]).code, EXIT_USAGE);
    assert_eq!(
        interlace(&["cstar", "--a", "-1", "--b", "-5", "--d", "-1"]).code,
        EXIT_USAGE
    );
    let gap = ["verify", "--a", "-3", "--b", "-5", "--c", "5", "--d", "-1"];
    assert_eq!(interlace(&gap).code, EXIT_USAGE);
    let outside_regime = ["verify", "--a", "3", "--b", "-5", "--c", "5", "--d", "-1"];
    assert_eq!(interlace(&outside_regime).code, EXIT_USAGE);
}

#[test]
fn seq_prints_w3_and_validates() {
    let o = interlace(&with(&["seq", "--n", "3"], &HIGH));
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("9z³ + 10z² - 23z + 5"));
    let o = interlace(&with(&["seq", "--n", "3", "--json"], &HIGH));
    let v = json_of(&o);
    assert_valid("seq", &v);
    assert_eq!(
        v["polys"][3]["coeffs"],
        serde_json::json!(["5", "-23", "10", "9"])
    );
}

#[test]
fn landmarks_validate_in_all_regimes() {
    for params in [
        LOW,
        HIGH,
        OUTSIDE,
        ["--a", "-3", "--b", "-5", "--c", "5", "--d", "-1"],
    ] {
        let o = interlace(&with(&["landmarks"], &params));
        assert_eq!(o.code, EXIT_OK);
        assert_valid("landmarks", &json_of(&o));
    }
    let v = json_of(&interlace(&with(&["landmarks", "--digits", "3"], &HIGH)));
    assert_eq!(v["x_g_minus"]["exact"], "1/4");
    assert_eq!(v["c_plus"]["approx"], "9.000");
}

#[test]
fn roots_json_and_csv() {
    let o = interlace(&with(&["roots", "--n", "4"], &LOW));
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    assert_valid("roots", &v);
    assert_eq!(v["real_roots"].as_array().unwrap().len(), 4);

    let o = interlace(&with(&["roots", "--n", "4", "--format", "csv"], &LOW));
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().count(), 5);

    let o = interlace(&with(&["roots", "--n", "5", "--csv-per-n"], &LOW));
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().count(), 1 + 1 + 2 + 3 + 4 + 5);

    assert_eq!(
        interlace(&with(&["roots", "--n", "4", "--eps", "-1"], &LOW)).code,
        EXIT_USAGE
    );
}

#[test]
fn verify_low_regime_passes() {
    let o = interlace(&with(&["verify", "--n-max", "20", "--json"], &LOW));
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    assert_valid("verify", &v);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_high_and_outside() {
    for params in [HIGH, OUTSIDE] {
        let o = interlace(&with(&["verify", "--n-max", "9", "--json"], &params));
        assert_eq!(o.code, EXIT_OK);
        assert_valid("verify", &json_of(&o));
    }
}

#[test]
fn repro_exit_codes_follow_table() {
    for id in ["3.1a", "5.3a", "5.3b"] {
        let o = interlace(&["repro", id, "--json"]);
        assert_eq!(o.code, EXIT_OK, "{id}");
        assert_valid("repro", &json_of(&o));
    }
    // reference values inconsistent with the exact zeros
    for id in ["3.1b", "3.2"] {
        assert_eq!(interlace(&["repro", id]).code, EXIT_CHECK_FAILED, "{id}");
    }
    let o = interlace(&["repro", "--all", "--json"]);
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let v = json_of(&o);
    assert_valid("repro", &v);
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn cstar_validates() {
    let o = interlace(&[
        "cstar", "--a", "-3", "--b", "-5", "--d", "-1", "--n-max", "8", "--json",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    assert_valid("cstar", &v);
    assert_eq!(v["attained_by"], "discriminant_root");
}

#[test]
fn scan_summary_and_records_validate() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.conf");
    std::fs::write(
        &config,
        "# small sweep\nsamples = 20\nn_max = 6\nseed = 11\n",
    )
    .unwrap();
    let log = dir.path().join("records.jsonl");
    let args = [
        "scan",
        "--config",
        config.to_str().unwrap(),
        "--out",
        log.to_str().unwrap(),
    ];
    let o = interlace(&args);
    assert_eq!(o.code, EXIT_OK);
    let summary = json_of(&o);
    assert_valid("scan_summary", &summary);
    assert_eq!(summary["samples"], 20);
    assert_eq!(summary["seed"], 11);

    let first = std::fs::read_to_string(&log).unwrap();
    assert_eq!(first.lines().count(), 20);
    for line in first.lines() {
        assert_valid("scan_record", &serde_json::from_str(line).unwrap());
    }

    assert_eq!(interlace(&args).code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&log).unwrap(), first);

    let overridden = interlace(&[
        "scan",
        "--config",
        config.to_str().unwrap(),
        "--samples",
        "5",
        "--seed",
        "3",
    ]);
    assert_eq!(json_of(&overridden)["samples"], 5);

    std::fs::write(&config, "samples = 5\nbogus = 1\n").unwrap();
    assert_eq!(
        interlace(&["scan", "--config", config.to_str().unwrap()]).code,
        EXIT_USAGE
    );
}
