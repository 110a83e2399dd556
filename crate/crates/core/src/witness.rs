//! Rational points in arithmetic progression on y^2 = x^n + k, with exact re-verification.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::rat::rat_pow;
use crate::arith::Rat;
use crate::ec::serial::{rat_from_json, rat_json};

#[derive(Clone, Debug, PartialEq)]
pub struct APWitness {
    /// Full exponent of x.
    pub n: u32,
    pub k: Rat,
    /// Points listed in progression order.
    pub points: Vec<(Rat, Rat)>,
    pub start: Rat,
    pub step: Rat,
    /// Twist or scale applied to reach this model; 1 if none.
    pub scale: Rat,
    pub recipe: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("k is zero")]
    ZeroK,
    #[error("step is zero")]
    ZeroStep,
    #[error("point {0} is not on the curve")]
    OffCurve(usize),
    #[error("x-coordinate of point {0} breaks the progression")]
    NotProgression(usize),
    #[error("malformed witness JSON: {0}")]
    Malformed(String),
}

impl APWitness {
    pub fn new(n: u32, k: Rat, points: Vec<(Rat, Rat)>, scale: Rat, recipe: impl Into<String>) -> Result<Self, WitnessError> {
        if points.len() < 2 {
            return Err(WitnessError::Malformed("fewer than two points".into()));
        }
        let start = points[0].0.clone();
        let step = &points[1].0 - &points[0].0;
        let w = APWitness { n, k, points, start, step, scale, recipe: recipe.into() };
        w.verify()?;
        Ok(w)
    }

    pub fn verify(&self) -> Result<(), WitnessError> {
        if self.k.is_zero() {
            return Err(WitnessError::ZeroK);
        }
        if self.step.is_zero() {
            return Err(WitnessError::ZeroStep);
        }
        for (i, (x, y)) in self.points.iter().enumerate() {
            if *x != &self.start + &self.step * Rat::from_integer(i.into()) {
                return Err(WitnessError::NotProgression(i));
            }
            if y * y != rat_pow(x, self.n) + &self.k {
                return Err(WitnessError::OffCurve(i));
            }
        }
        Ok(())
    }

    /// Rational points counted with (x, -y).
    pub fn point_count(&self) -> usize {
        self.points.iter().map(|(_, y)| if y.is_zero() { 1 } else { 2 }).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.k.is_integer() && self.points.iter().all(|(x, y)| x.is_integer() && y.is_integer())
    }

    /// Image under x -> l^2 x, y -> l^n y, k -> l^(2n) k.
    pub fn twisted(&self, l: &Rat) -> APWitness {
        let l2 = l * l;
        let ln = rat_pow(l, self.n);
        APWitness {
            n: self.n,
            k: &self.k * rat_pow(&l2, self.n),
            points: self.points.iter().map(|(x, y)| (x * &l2, y * &ln)).collect(),
            start: &self.start * &l2,
            step: &self.step * &l2,
            scale: &self.scale * l,
            recipe: self.recipe.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": rat_json(&self.k),
            "points": self.points.iter().map(|(x, y)| json!([rat_json(x), rat_json(y)])).collect::<Vec<_>>(),
            "start": rat_json(&self.start),
            "step": rat_json(&self.step),
            "scale": rat_json(&self.scale),
            "recipe": self.recipe,
        })
    }

    /// Parses and re-verifies; nothing from the producing pipeline is needed.
    pub fn from_json(v: &Value) -> Result<Self, WitnessError> {
        let bad = |what: &str| WitnessError::Malformed(what.to_string());
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("n"))? as u32;
        let field = |name: &str| v.get(name).and_then(rat_from_json).ok_or_else(|| bad(name));
        let points = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("points"))?
            .iter()
            .map(|p| {
                let a = p.as_array().filter(|a| a.len() == 2)?;
                Some((rat_from_json(&a[0])?, rat_from_json(&a[1])?))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("points"))?;
        let w = APWitness {
            n,
            k: field("k")?,
            points,
            start: field("start")?,
            step: field("step")?,
            scale: v.get("scale").and_then(rat_from_json).unwrap_or_else(Rat::one),
            recipe: v.get("recipe").and_then(Value::as_str).unwrap_or("").to_string(),
        };
        w.verify()?;
        Ok(w)
    }
}
