use num_bigint::BigInt;
use serde_json::{json, Value};

use super::curve::{Curve, Point};
use super::serial::point_json;
use crate::arith::Rat;
use crate::heights::{canonical_height, HeightOptions};

/// Heights above this certify infinite order.
pub const HEIGHT_THRESHOLD: f64 = 1e-4;
/// Safety margin on the computed height.
pub const HEIGHT_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Infinite,
    Torsion(u32),
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// m*P on the integral model has a non-integral coordinate.
    NonIntegral { m: u32, point: Point<Rat> },
    /// m*P is the identity.
    Cycle { m: u32 },
    /// All multiples up to 12 integral; canonical height bounded away from 0.
    Height { value: f64, error: f64 },
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderCertificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// Scale d taking the input model to the integral one: (x, y) -> (d^2 x, d^3 y).
    pub model_scale: BigInt,
}

impl OrderCertificate {
    /// Re-derives the evidence under exact arithmetic.
    pub fn recheck(&self, c: &Curve<Rat>, p: &Point<Rat>) -> bool {
        let u = Rat::from_integer(self.model_scale.clone());
        let model = c.scaled(&u);
        let pp = Curve::scale_point(p, &u);
        if !model.is_integral() || !model.on_curve(&pp) {
            return false;
        }
        match (&self.verdict, &self.evidence) {
            (Verdict::Infinite, Evidence::NonIntegral { m, point }) => {
                let q = model.mul(*m as i64, &pp);
                &q == point && !Curve::point_is_integral(&q)
            }
            (Verdict::Torsion(n), Evidence::Cycle { m }) => {
                n == m && model.mul(*m as i64, &pp).is_infinity() && (1..*m).all(|k| !model.mul(k as i64, &pp).is_infinity())
            }
            (Verdict::Infinite, Evidence::Height { value, error }) => *value - *error > HEIGHT_THRESHOLD,
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::Infinite => json!("infinite"),
            Verdict::Torsion(n) => json!({"torsion": n}),
            Verdict::Indeterminate => json!("indeterminate"),
        };
        let evidence = match &self.evidence {
            Evidence::NonIntegral { m, point } => json!({"kind": "non-integral multiple", "m": m, "point": point_json(point)}),
            Evidence::Cycle { m } => json!({"kind": "cycle", "m": m}),
            Evidence::Height { value, error } => json!({"kind": "height", "value": value, "error_bound": error}),
            Evidence::None => Value::Null,
        };
        json!({"verdict": verdict, "evidence": evidence, "model_scale": self.model_scale.to_string()})
    }
}

/// Multiples checked before falling back on the canonical height.
pub const MAX_MULTIPLE: u32 = 12;

/// Nagell-Lutz over multiples 1..=12 on the integral model, then a height fallback.
pub fn certify_order(c: &Curve<Rat>, p: &Point<Rat>) -> OrderCertificate {
    certify_order_upto(c, p, MAX_MULTIPLE)
}

/// As [`certify_order`], scanning multiples 1..=max_m only.
pub fn certify_order_upto(c: &Curve<Rat>, p: &Point<Rat>, max_m: u32) -> OrderCertificate {
    let (model, d) = c.integral_model();
    let u = Rat::from_integer(d.clone());
    let pp = Curve::scale_point(p, &u);
    let cert = |verdict, evidence| OrderCertificate { verdict, evidence, model_scale: d.clone() };
    if pp.is_infinity() {
        return cert(Verdict::Torsion(1), Evidence::Cycle { m: 1 });
    }
    let mut q = Point::Infinity;
    for m in 1..=max_m {
        q = model.add(&q, &pp);
        if q.is_infinity() {
            return cert(Verdict::Torsion(m), Evidence::Cycle { m });
        }
        if !Curve::point_is_integral(&q) {
            return cert(Verdict::Infinite, Evidence::NonIntegral { m, point: q });
        }
    }
    match canonical_height(&model, &pp, &HeightOptions::default()) {
        Ok(h) => {
            let (v, e) = (h.value_f64(), h.error_bound_f64() + HEIGHT_MARGIN);
            if v - e > HEIGHT_THRESHOLD {
                cert(Verdict::Infinite, Evidence::Height { value: v, error: e })
            } else {
                cert(Verdict::Indeterminate, Evidence::Height { value: v, error: e })
            }
        }
        Err(_) => cert(Verdict::Indeterminate, Evidence::None),
    }
}
