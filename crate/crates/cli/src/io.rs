use std::fs;

use aprog::arith::rat::parse_rat;
use aprog::arith::Rat;
use aprog::ec::serial::point_from_json;
use aprog::ec::{Curve, Point};
use aprog::family_cubic::verify_poly_witness_json;
use aprog::witness::APWitness;
use serde_json::Value;

use crate::Failure;

pub fn rat_arg(what: &str, s: &str) -> Result<Rat, Failure> {
    parse_rat(s).ok_or_else(|| Failure::usage(format!("{what}: not a rational number: {s:?}")))
}

/// `k` or `A,B`.
pub fn curve_arg(s: &str) -> Result<Curve<Rat>, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    let (a, b) = match parts.as_slice() {
        [k] => (Rat::from_integer(0.into()), rat_arg("curve", k)?),
        [a, b] => (rat_arg("curve", a)?, rat_arg("curve", b)?),
        _ => return Err(Failure::usage("curve: expected k or A,B")),
    };
    Curve::new(a, b).ok_or_else(|| Failure::usage("curve is singular"))
}

pub fn points_file(path: &str) -> Result<Vec<Point<Rat>>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        let arr = v.as_array().ok_or_else(|| Failure::usage("points: expected a JSON array"))?;
        return arr.iter().map(|p| point_from_json(p).ok_or_else(|| Failure::usage(format!("points: bad entry {p}")))).collect();
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            match f.as_slice() {
                [x, y] => Ok(Point::Affine(rat_arg("x", x)?, rat_arg("y", y)?)),
                _ => Err(Failure::usage(format!("points: bad line {l:?}"))),
            }
        })
        .collect()
}

pub fn write_json(path: &str, v: &Value) -> Result<(), Failure> {
    fs::write(path, serde_json::to_string_pretty(v).expect("json") + "\n").map_err(|e| Failure::resource(format!("{path}: {e}")))
}

/// Re-verifies every witness in a file (one object or an array), using only the file.
pub fn verify_witness_file(path: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let items = match &v {
        Value::Array(a) => a.clone(),
        o => vec![o.clone()],
    };
    let mut checked = Vec::new();
    for (i, w) in items.iter().enumerate() {
        let polynomial = w.get("t").and_then(Value::as_str) == Some("t");
        let res = if polynomial { verify_poly_witness_json(w) } else { APWitness::from_json(w).map(|_| ()).map_err(|e| e.to_string()) };
        if let Err(e) = res {
            return Err(Failure::verify(format!("witness {i}: {e}")));
        }
        checked.push(serde_json::json!({"index": i, "kind": if polynomial { "polynomial" } else { "rational" }, "verified": true}));
    }
    Ok(serde_json::json!({"file": path, "witnesses": checked}))
}
