//! Thin helpers over `dashu_float::FBig` (binary, round toward zero).

use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};

use crate::arith::Rat;

pub type Real = FBig;

pub fn ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub fn from_bigint(n: &BigInt, prec: usize) -> Real {
    FBig::from(ibig(n)).with_precision(prec).value()
}

pub fn from_i64(n: i64, prec: usize) -> Real {
    FBig::from(IBig::from(n)).with_precision(prec).value()
}

pub fn from_rat(x: &Rat, prec: usize) -> Real {
    from_bigint(x.numer(), prec) / from_bigint(x.denom(), prec)
}

pub fn abs(x: Real) -> Real {
    if x < Real::ZERO {
        -x
    } else {
        x
    }
}

pub fn ln(x: &Real) -> Real {
    x.ln()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal_string(x: &Real, digits: usize) -> String {
    x.to_decimal().value().with_precision(digits).value().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;

    #[test]
    fn conversions() {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        assert_eq!(ibig(&big).to_string(), big.to_string());
        let x = from_rat(&rat(-7, 4), 128);
        assert_eq!(to_f64(&x), -1.75);
        let l = ln(&from_i64(2, 128));
        assert!((to_f64(&l) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(to_decimal_string(&l, 30).starts_with("0.693147180559945309417232121"));
        assert_eq!(to_f64(&abs(from_i64(-3, 64))), 3.0);
    }
}
