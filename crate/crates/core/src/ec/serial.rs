use serde_json::{json, Value};

use super::curve::{Curve, Point};
use crate::arith::rat::{parse_rat, rat_to_string};
use crate::arith::{Rat, RatFunc, UniPoly};

pub fn rat_json(x: &Rat) -> Value {
    Value::String(rat_to_string(x))
}

pub fn rat_from_json(v: &Value) -> Option<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n.as_i64().map(|i| Rat::from_integer(i.into())),
        _ => None,
    }
}

pub fn poly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn poly_from_json(v: &Value) -> Option<UniPoly> {
    let cs = v.as_array()?.iter().map(rat_from_json).collect::<Option<Vec<_>>>()?;
    Some(UniPoly::new(cs))
}

pub fn ratfunc_json(f: &RatFunc) -> Value {
    json!({"num": poly_json(f.num()), "den": poly_json(f.den())})
}

pub fn point_json(p: &Point<Rat>) -> Value {
    match p {
        Point::Infinity => Value::String("infinity".into()),
        Point::Affine(x, y) => json!({"x": rat_json(x), "y": rat_json(y)}),
    }
}

pub fn point_from_json(v: &Value) -> Option<Point<Rat>> {
    if v.as_str() == Some("infinity") {
        return Some(Point::Infinity);
    }
    if let Some(arr) = v.as_array() {
        if arr.len() == 2 {
            return Some(Point::Affine(rat_from_json(&arr[0])?, rat_from_json(&arr[1])?));
        }
        return None;
    }
    Some(Point::Affine(rat_from_json(v.get("x")?)?, rat_from_json(v.get("y")?)?))
}

pub fn ratfunc_point_json(p: &Point<RatFunc>) -> Value {
    match p {
        Point::Infinity => Value::String("infinity".into()),
        Point::Affine(x, y) => json!({"x": ratfunc_json(x), "y": ratfunc_json(y)}),
    }
}

pub fn curve_json(c: &Curve<Rat>) -> Value {
    json!({"A": rat_json(&c.a), "B": rat_json(&c.b)})
}

pub fn ratfunc_curve_json(c: &Curve<RatFunc>) -> Value {
    json!({"A": ratfunc_json(&c.a), "B": ratfunc_json(&c.b)})
}
