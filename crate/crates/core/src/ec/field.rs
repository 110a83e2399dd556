use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::{MultiPoly, Rat, RatFunc, UniPoly};

/// Exact field operations shared by Q and Q(t).
pub trait ExactField: Clone + PartialEq + Debug + Send + Sync {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero_el(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics when `o` is zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn scale_i(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }
}

impl ExactField for Rat {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!Zero::is_zero(o), "division by zero");
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl ExactField for RatFunc {
    fn zero_el() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one_el() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(Rat::from_integer(n.into()))
    }
    fn is_zero_el(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Polynomial ring over Q, with division allowed by constants only.
///
/// Lets the generic formulas run symbolically for identity checks.
impl ExactField for MultiPoly {
    fn zero_el() -> Self {
        MultiPoly::scalar(Rat::zero())
    }
    fn one_el() -> Self {
        MultiPoly::scalar(Rat::one())
    }
    fn from_i64(n: i64) -> Self {
        MultiPoly::scalar(Rat::from_integer(n.into()))
    }
    fn is_zero_el(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        let c = o.as_constant().filter(|c| !c.is_zero()).expect("MultiPoly division by a non-constant or zero");
        self.scale(&(Rat::one() / c))
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Evaluates an integer polynomial, lowest degree first, at an element of F.
pub fn eval_int_poly<F: ExactField>(t: &F, cs: &[i64]) -> F {
    cs.iter().rev().fold(F::zero_el(), |acc, &c| acc.mul(t).add(&F::from_i64(c)))
}
