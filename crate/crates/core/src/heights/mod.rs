//! Canonical heights over Q, pairing matrices and independence tests.

mod local;
pub mod matrix;
pub mod real;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::factor::{factor_integer, FactorBudget};
use crate::arith::Rat;
use crate::ec::curve::short_cubic_roots;
use crate::ec::{Curve, Point};
pub use matrix::{certify_independent, pairing_matrix, HeightMatrix, Independence};
use real::Real;

/// Which scaling of the canonical height is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// h(P) = lim log H(x(2^N P)) / 4^N.
    XHeight,
    /// Half of `XHeight`; local heights start from (1/2) log |x|.
    HalfXHeight,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::XHeight => "x-height (lim h(x(2^N P))/4^N)",
            Normalization::HalfXHeight => "half x-height",
        }
    }

    fn factor(self) -> i64 {
        match self {
            Normalization::XHeight => 2,
            Normalization::HalfXHeight => 1,
        }
    }
}

/// Non-archimedean correction at primes where the point is singular on the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalRule {
    /// Model-independent: correction through a multiple that reduces to a smooth point.
    Canonical,
    /// Valuation formulas for minimal models applied to the given model as is.
    /// Differs from `Canonical` when the model is not minimal.
    GivenModel,
}

#[derive(Clone, Copy, Debug)]
pub struct HeightOptions {
    pub precision_bits: usize,
    pub rule: LocalRule,
    pub budget: FactorBudget,
}

impl Default for HeightOptions {
    fn default() -> Self {
        HeightOptions { precision_bits: 128, rule: LocalRule::Canonical, budget: FactorBudget::default() }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("discriminant factorization incomplete; composite cofactor {0}")]
    Factorization(String),
    #[error("no multiple up to {0} reduces to a smooth point at {1}")]
    NoSmoothMultiple(u32, String),
}

/// ĥ(P) in the half x-height normalization, with an error bound.
#[derive(Clone, Debug)]
pub struct CanonicalHeight {
    pub value: Real,
    pub precision_bits: usize,
    pub error_bound: f64,
    pub rule: LocalRule,
}

impl CanonicalHeight {
    pub fn value_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }

    pub fn error_bound_f64(&self) -> f64 {
        self.error_bound
    }

    pub fn in_normalization(&self, n: Normalization) -> Real {
        &self.value * real::from_i64(n.factor(), self.precision_bits)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "half_x_height": real::to_decimal_string(&self.value, 30),
            "x_height": real::to_decimal_string(&self.in_normalization(Normalization::XHeight), 30),
            "precision_bits": self.precision_bits,
            "error_bound": self.error_bound,
            "local_rule": format!("{:?}", self.rule),
        })
    }
}

/// Per-curve data reused across many height evaluations.
pub struct HeightContext {
    model: Curve<Rat>,
    scale: Rat,
    primes: Vec<BigInt>,
    shift: Rat,
    bb: [Rat; 4],
    disc: Rat,
    opts: HeightOptions,
    terms: usize,
}

impl HeightContext {
    pub fn new(c: &Curve<Rat>, opts: HeightOptions) -> Result<Self, HeightError> {
        let (model, d) = c.integral_model();
        let disc = model.discriminant();
        let f = factor_integer(&disc.to_integer(), opts.budget);
        if let Some(co) = f.cofactor {
            return Err(HeightError::Factorization(co.to_string()));
        }
        let roots = short_cubic_roots(&model.a.to_integer(), &model.b.to_integer());
        let r = Rat::from_integer(roots.shift);
        let (a, b) = (&model.a, &model.b);
        // b-invariants of the short model, then translated by x -> x' + r
        let (b2, b4, b6, b8) = (Rat::zero(), a * Rat::from_integer(2.into()), b * Rat::from_integer(4.into()), -(a * a));
        let k = |n: i64| Rat::from_integer(n.into());
        let bb2 = &b2 + k(12) * &r;
        let bb4 = &b4 + &r * &b2 + k(6) * &r * &r;
        let bb6 = &b6 + k(2) * &r * &b4 + &r * &r * &b2 + k(4) * &r * &r * &r;
        let bb8 = &b8 + k(3) * &r * &b6 + k(3) * &r * &r * &b4 + &r * &r * &r * &b2 + k(3) * &r * &r * &r * &r;
        Ok(HeightContext {
            model,
            scale: Rat::from_integer(d),
            primes: f.primes.into_iter().map(|(p, _)| p).collect(),
            shift: r,
            bb: [bb2, bb4, bb6, bb8],
            disc,
            opts,
            terms: opts.precision_bits / 2 + 16,
        })
    }

    pub fn model(&self) -> &Curve<Rat> {
        &self.model
    }

    pub fn options(&self) -> &HeightOptions {
        &self.opts
    }

    fn work_prec(&self) -> usize {
        self.opts.precision_bits + 64
    }

    /// Archimedean local height via Tate's series after the shift.
    fn lambda_inf(&self, x: &Rat) -> (Real, f64) {
        let prec = self.work_prec();
        let xs = real::from_rat(&(x - &self.shift), prec);
        let [b2, b4, b6, b8] = self.bb.clone().map(|v| real::from_rat(&v, prec));
        let one = real::from_i64(1, prec);
        let (two, four) = (real::from_i64(2, prec), real::from_i64(4, prec));
        let mut t = &one / &xs;
        let mut mu = real::from_i64(0, prec);
        let mut weight = one.clone();
        let mut max_log: f64 = 0.0;
        for _ in 0..self.terms {
            let t2 = &t * &t;
            let t3 = &t2 * &t;
            let t4 = &t3 * &t;
            let w = &four * &t + &b2 * &t2 + &two * &b4 * &t3 + &b6 * &t4;
            let z = &one - &b4 * &t2 - &two * &b6 * &t3 - &b8 * &t4;
            let lz = real::ln(&real::abs(z.clone()));
            max_log = max_log.max(real::to_f64(&lz).abs());
            mu += &weight * &lz;
            t = w / z;
            weight = weight / &four;
        }
        let lam = real::ln(&xs) / &two + mu / real::from_i64(8, prec);
        // geometric tail bounded by the largest observed term, plus rounding
        let tail = max_log.max(1.0) * 4f64.powi(-(self.terms as i32)) / 6.0;
        (lam, tail)
    }

    /// ĥ in the half x-height normalization.
    pub fn height(&self, p: &Point<Rat>) -> Result<CanonicalHeight, HeightError> {
        let prec = self.opts.precision_bits;
        let zero = || CanonicalHeight { value: real::from_i64(0, prec), precision_bits: prec, error_bound: 0.0, rule: self.opts.rule };
        let pp = Curve::scale_point(p, &self.scale);
        if !self.model.on_curve(&pp) {
            return Err(HeightError::NotOnCurve);
        }
        let Point::Affine(x, _) = &pp else { return Ok(zero()) };
        let mut q = pp.clone();
        for _ in 1..12 {
            q = self.model.add(&q, &pp);
            if q.is_infinity() {
                return Ok(zero());
            }
        }
        let wp = self.work_prec();
        let (mut h, tail) = self.lambda_inf(x);
        h += real::ln(&real::from_bigint(x.denom(), wp)) / real::from_i64(2, wp);
        for p in &self.primes {
            let corr = match self.opts.rule {
                LocalRule::Canonical => local::canonical_correction(&self.model, &pp, p)?,
                LocalRule::GivenModel => local::given_model_correction(&self.model, &pp, p, &self.disc),
            };
            if !corr.is_zero() {
                h += real::from_rat(&corr, wp) * real::ln(&real::from_bigint(p, wp));
            }
        }
        let rounding = 2f64.powi(-(prec as i32));
        Ok(CanonicalHeight { value: h.with_precision(prec).value(), precision_bits: prec, error_bound: tail + rounding, rule: self.opts.rule })
    }
}

/// ĥ(P) (half x-height normalization) on any model of c.
pub fn canonical_height(c: &Curve<Rat>, p: &Point<Rat>, opts: &HeightOptions) -> Result<CanonicalHeight, HeightError> {
    HeightContext::new(c, *opts)?.height(p)
}

/// Naive logarithmic height of a rational: log max(|num|, den).
pub fn naive_height(x: &Rat, prec: usize) -> Real {
    let m = if x.numer().abs() > *x.denom() { x.numer().abs() } else { x.denom().clone() };
    if m.is_one() {
        return real::from_i64(0, prec);
    }
    real::ln(&real::from_bigint(&m, prec))
}
