use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn aprog(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_aprog")).args(args).output().expect("spawn aprog");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let v: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {text}"));
    (out.status.code().expect("exit code"), v)
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::options().with_draft(jsonschema::Draft::Draft202012).compile(&v).expect("schema compiles")
}

fn assert_valid(s: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errs) = s.validate(v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn envelope_matches_schema_and_exit_code() {
    let s = schema("command_result.schema.json");
    for args in [vec!["errata"], vec!["verify-identities"], vec!["twist-check", "--k1", "12345", "--k2", "12641280", "--m", "5"], vec!["family-odd", "--bogus"]] {
        let (code, v) = aprog(&args);
        assert_valid(&s, &v);
        assert_eq!(v["exit_code"], code, "{args:?}");
    }
}

#[test]
fn verify_identities_all_pass() {
    let (code, v) = aprog(&["verify-identities"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["failed"], 0);
    assert!(v["results"]["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn errata_counts() {
    let (code, v) = aprog(&["errata"]);
    assert_eq!(code, 0);
    let n = v["errata"].as_array().unwrap().len() as u64;
    let r = &v["results"];
    assert_eq!(r["confirmed"].as_u64().unwrap() + r["typo"].as_u64().unwrap() + r["inconsistent"].as_u64().unwrap(), n);
}

#[test]
fn usage_errors_exit_two() {
    for args in [vec!["no-such-command"], vec!["family-odd", "--n", "x"], vec!["heights", "--curve", "1,2,3", "--points", "/nonexistent"], vec!["family-cubic", "--recipe", "Q"]] {
        let (code, v) = aprog(&args);
        assert_eq!(code, 2, "{args:?}: {v}");
        assert_eq!(v["exit_code"], 2);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["family-cubic", "--t", "1"], vec!["family-even", "--n", "2"], vec!["sextic-search", "--bound", "6"]] {
        let (_, a) = aprog(&args);
        let (_, b) = aprog(&args);
        assert_eq!(without_timings(a), without_timings(b), "{args:?}");
    }
}

#[test]
fn witness_roundtrip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let ap = schema("ap_witness.schema.json");
    for (cmd, extra) in [("family-odd", vec!["--n", "2"]), ("family-even", vec!["--n", "2"]), ("family-cubic", vec![])] {
        let path = dir.path().join(format!("{cmd}.json"));
        let p = path.to_str().unwrap();
        let mut args = vec![cmd, "--out", p];
        args.extend(&extra);
        let (code, _) = aprog(&args);
        assert_eq!(code, 0, "{cmd}");
        let mut w: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        if cmd != "family-cubic" {
            assert_valid(&ap, &w);
        }
        let (code, v) = aprog(&[cmd, "--verify-only", p]);
        assert_eq!(code, 0, "{cmd}: {v}");
        assert_eq!(v["results"]["witnesses"][0]["verified"], true);

        // perturb k: every point falls off the curve
        let k = w["k"].clone();
        w["k"] = match &k {
            Value::String(s) if s.starts_with('-') => Value::String(s[1..].to_string()),
            Value::String(s) => Value::String(format!("-{s}")),
            _ => {
                // polynomial k, coefficients lowest degree first
                let mut k = k.clone();
                let c0 = k[0].as_str().unwrap().to_string();
                k[0] = Value::String(format!("{c0}1"));
                k
            }
        };
        std::fs::write(&path, serde_json::to_string(&w).unwrap()).unwrap();
        let (code, v) = aprog(&[cmd, "--verify-only", p]);
        assert_eq!(code, 1, "{cmd} tampered: {v}");
    }
}

#[test]
fn heights_reproduces_printed_determinant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    std::fs::write(&path, "487080 62833320\n974160 901585080\n1461240 1734491880\n1948320 2698910280\n").unwrap();
    let (code, v) = aprog(&["heights", "--curve", "-111610206808689600", "--points", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["independence"], "Independent");
    let dets: Vec<f64> = v["results"]["given_model"]["conventions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["det"].as_str().unwrap().parse().unwrap())
        .collect();
    assert!(dets.iter().any(|d| ((d - 266.618020487005) / 266.618020487005).abs() < 1e-6), "{dets:?}");
}

#[test]
fn sextic_search_bound_ten() {
    let (code, v) = aprog(&["sextic-search", "--bound", "10", "--threads", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["nontrivial"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["complete"], true);
}

#[test]
fn sextic_check_classifies() {
    let (_, v) = aprog(&["sextic-check", "--point", "1,1,1,7,7"]);
    assert_eq!(v["results"]["class"], "L1");
    assert_eq!(v["results"]["on_threefold"], true);
    let (_, v) = aprog(&["sextic-check", "--point", "1,2,3,4,5"]);
    assert_eq!(v["results"]["class"], "H");
}
