use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::Rat;
use super::upoly::UniPoly;

/// Element of Q(t), kept as num/den with den monic and coprime to num.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.divrem(&g).0, den.divrem(&g).0);
        let lc = d.leading();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Specializes at t = x; `None` on a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero in Q(t)");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};

    #[test]
    fn normalizes() {
        // (t^2 - 1)/(2t - 2) = (t + 1)/2 -> den monic
        let f = RatFunc::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-2, 2]));
        assert_eq!(f.den(), &UniPoly::one());
        assert_eq!(f.num(), &UniPoly::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(f.eval(&int(3)), Some(int(2)));
    }

    #[test]
    fn arithmetic_matches_specialization() {
        let a = RatFunc::new(UniPoly::from_ints(&[1, 2]), UniPoly::from_ints(&[3, 0, 1]));
        let b = RatFunc::new(UniPoly::from_ints(&[-5, 1]), UniPoly::from_ints(&[1, 1]));
        for x in [-3i64, 0, 2, 7] {
            let x = int(x);
            let (ax, bx) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
            assert_eq!((&a + &b).eval(&x).unwrap(), &ax + &bx);
            assert_eq!((&a * &b).eval(&x).unwrap(), &ax * &bx);
            assert_eq!((&a / &b).eval(&x), if bx.is_zero() { None } else { Some(&ax / &bx) });
        }
        assert_eq!(b.eval(&int(-1)), None);
    }
}
