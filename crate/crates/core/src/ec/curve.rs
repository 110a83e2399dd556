use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::ExactField;
use crate::arith::factor::{factor_integer, FactorBudget};
use crate::arith::rat::{valuation, Rat};
use crate::arith::{RatFunc, UniPoly};

/// y^2 = x^3 + A x + B.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F> {
    pub a: F,
    pub b: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F: ExactField> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point::Affine(x, y)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn neg(&self) -> Self {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), y.neg()),
        }
    }
}

impl<F: ExactField> Curve<F> {
    /// Builds the curve; `None` if singular.
    pub fn new(a: F, b: F) -> Option<Self> {
        let c = Curve { a, b };
        if c.discriminant().is_zero_el() {
            None
        } else {
            Some(c)
        }
    }

    /// No discriminant check; for degenerate models reported as such.
    pub fn new_unchecked(a: F, b: F) -> Self {
        Curve { a, b }
    }

    /// -16(4A^3 + 27B^2)
    pub fn discriminant(&self) -> F {
        let a3 = self.a.square().mul(&self.a);
        a3.scale_i(4).add(&self.b.square().scale_i(27)).scale_i(-16)
    }

    /// j = -1728 (4A)^3 / disc; `None` when singular.
    pub fn j_invariant(&self) -> Option<F> {
        let d = self.discriminant();
        if d.is_zero_el() {
            return None;
        }
        let a4 = self.a.scale_i(4);
        Some(a4.square().mul(&a4).scale_i(-1728).div(&d))
    }

    pub fn rhs(&self, x: &F) -> F {
        x.square().mul(x).add(&self.a.mul(x)).add(&self.b)
    }

    pub fn on_curve(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero_el() {
                return Point::Infinity;
            }
            x1.square().scale_i(3).add(&self.a).div(&y1.scale_i(2))
        } else {
            y2.sub(y1).div(&x2.sub(x1))
        };
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &q.neg())
    }

    /// m*P by double-and-add; negative m negates.
    pub fn mul(&self, m: i64, p: &Point<F>) -> Point<F> {
        let mut base = if m < 0 { p.neg() } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }
}

impl Curve<Rat> {
    pub fn from_ints(a: i64, b: i64) -> Option<Self> {
        Curve::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Least d > 0 with d^4 A and d^6 B integral, and that model.
    pub fn integral_model(&self) -> (Curve<Rat>, BigInt) {
        let den = self.a.denom().lcm(self.b.denom());
        let mut d = BigInt::one();
        if !den.is_one() {
            let f = factor_integer(&den, FactorBudget::default());
            let mut parts = f.primes.clone();
            if let Some(c) = f.cofactor {
                // unfactored part: use it whole with exponent from its own valuation
                parts.push((c, 1));
            }
            for (p, _) in parts {
                let va = valuation(&self.a, &p).unwrap_or(0).min(0);
                let vb = valuation(&self.b, &p).unwrap_or(0).min(0);
                let e = ((-va + 3) / 4).max((-vb + 5) / 6);
                d *= p.pow(e as u32);
            }
        }
        let dr = Rat::from_integer(d.clone());
        (self.scaled(&dr), d)
    }

    /// Model y^2 = x^3 + u^4 A x + u^6 B; points map by (u^2 x, u^3 y).
    pub fn scaled(&self, u: &Rat) -> Curve<Rat> {
        let u2 = u * u;
        let u4 = &u2 * &u2;
        Curve { a: &self.a * &u4, b: &self.b * &u4 * &u2 }
    }

    pub fn scale_point(p: &Point<Rat>, u: &Rat) -> Point<Rat> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x * u * u, y * u * u * u),
        }
    }

    /// Rational 2-torsion points, by the rational root test on x^3 + Ax + B.
    pub fn two_torsion(&self) -> Vec<Point<Rat>> {
        let f = UniPoly::new(vec![self.b.clone(), self.a.clone(), Rat::zero(), Rat::one()]);
        let (model, d) = self.integral_model();
        let d2 = Rat::from_integer(&d * &d);
        // rational roots of a monic integral cubic are integers; map back by x / d^2
        let roots = short_cubic_roots(&model.a.to_integer(), &model.b.to_integer());
        let mut out: Vec<Point<Rat>> = roots
            .integer_roots
            .into_iter()
            .map(|r| Point::Affine(Rat::from_integer(r) / &d2, Rat::zero()))
            .collect();
        out.retain(|p| f.eval(p.x().unwrap()).is_zero());
        out
    }

    /// Coordinates are integers (Infinity counts as integral).
    pub fn point_is_integral(p: &Point<Rat>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => x.is_integer() && y.is_integer(),
        }
    }
}

/// Real-root data for x^3 + a x + b with integer coefficients.
pub(crate) struct CubicRoots {
    /// Exact integer roots, increasing.
    pub integer_roots: Vec<BigInt>,
    /// Integer r with r + 1 <= every real root.
    pub shift: BigInt,
}

pub(crate) fn short_cubic_roots(a: &BigInt, b: &BigInt) -> CubicRoots {
    let ev = |x: &BigInt| -> BigInt { (x * x + a) * x + b };
    let bound = a.abs().max(b.abs()) + 2u32;
    // integer points around the critical points +-sqrt(-a/3)
    let mut pts = vec![-bound.clone(), bound.clone()];
    let mut floor_c1 = None;
    if a.is_negative() {
        let s = (-a / BigInt::from(3)).sqrt();
        floor_c1 = Some(-&s - 1u32);
        for base in [-&s - 1u32, s.clone()] {
            for k in -1i32..=2 {
                let v = &base + k;
                if v.abs() < bound {
                    pts.push(v);
                }
            }
        }
    }
    pts.sort();
    pts.dedup();
    let mut roots = Vec::new();
    let mut first_bracket: Option<BigInt> = None;
    for w in pts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let (flo, fhi) = (ev(lo), ev(hi));
        if flo.is_zero() {
            roots.push(lo.clone());
            first_bracket.get_or_insert(lo.clone());
        }
        if flo.is_zero() || fhi.is_zero() || flo.signum() == fhi.signum() {
            continue;
        }
        let (mut x0, mut x1) = (lo.clone(), hi.clone());
        let inc = flo.is_negative();
        while &x1 - &x0 > BigInt::one() {
            let m: BigInt = (&x0 + &x1).div_floor(&BigInt::from(2));
            let fm = ev(&m);
            if fm.is_zero() {
                x0 = m;
                break;
            }
            if fm.is_negative() == inc {
                x0 = m;
            } else {
                x1 = m;
            }
        }
        if ev(&x0).is_zero() {
            roots.push(x0.clone());
        }
        first_bracket.get_or_insert(x0);
    }
    if ev(pts.last().unwrap()).is_zero() {
        roots.push(pts.last().unwrap().clone());
    }
    roots.sort();
    roots.dedup();
    // two close roots may hide inside a unit interval at the left critical point
    let low = match (first_bracket, floor_c1) {
        (Some(x), Some(c)) => x.min(c),
        (Some(x), None) => x,
        (None, Some(c)) => c,
        (None, None) => -bound.clone(),
    };
    CubicRoots { integer_roots: roots, shift: low - 1u32 }
}

impl Curve<RatFunc> {
    /// Specializes coefficients at t = t0; `None` at a pole or singular fiber.
    pub fn specialize(&self, t0: &Rat) -> Option<Curve<Rat>> {
        Curve::new(self.a.eval(t0)?, self.b.eval(t0)?)
    }

    pub fn specialize_point(p: &Point<RatFunc>, t0: &Rat) -> Option<Point<Rat>> {
        match p {
            Point::Infinity => Some(Point::Infinity),
            Point::Affine(x, y) => Some(Point::Affine(x.eval(t0)?, y.eval(t0)?)),
        }
    }
}
