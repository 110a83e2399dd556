use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::HeightError;
use crate::arith::rat::valuation;
use crate::arith::Rat;
use crate::ec::{Curve, Point};

const MAX_MULTIPLE: u32 = 1000;

fn v(x: &Rat, p: &BigInt) -> i64 {
    valuation(x, p).unwrap_or(i64::MAX / 4)
}

fn k(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// True when P reduces to a singular point of the model mod p.
pub(super) fn singular_mod(c: &Curve<Rat>, pt: &Point<Rat>, p: &BigInt) -> bool {
    let Point::Affine(x, y) = pt else { return false };
    if v(x, p) < 0 {
        return false;
    }
    v(&(k(3) * x * x + &c.a), p) > 0 && v(&(k(2) * y), p) > 0
}

/// psi_m evaluated at P, by the standard recursion.
pub(crate) fn division_value(c: &Curve<Rat>, pt: &Point<Rat>, m: u32) -> Rat {
    let Point::Affine(x, y) = pt else { panic!("division value at infinity") };
    let (a, b) = (&c.a, &c.b);
    let mut memo: HashMap<u32, Rat> = HashMap::new();
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x2 * &x2;
    let x6 = &x3 * &x3;
    memo.insert(0, Rat::zero());
    memo.insert(1, k(1));
    memo.insert(2, k(2) * y);
    memo.insert(3, k(3) * &x4 + k(6) * a * &x2 + k(12) * b * x - a * a);
    memo.insert(
        4,
        k(4) * y * (&x6 + k(5) * a * &x4 + k(20) * b * &x3 - k(5) * a * a * &x2 - k(4) * a * b * x - k(8) * b * b - a * a * a),
    );
    fn go(n: u32, memo: &mut HashMap<u32, Rat>, y: &Rat) -> Rat {
        if let Some(r) = memo.get(&n) {
            return r.clone();
        }
        let kk = n / 2;
        let val = if n % 2 == 1 {
            let (p2, p0, pm, p1) = (go(kk + 2, memo, y), go(kk, memo, y), go(kk - 1, memo, y), go(kk + 1, memo, y));
            &p2 * &p0 * &p0 * &p0 - &pm * &p1 * &p1 * &p1
        } else {
            let (p2, pm, pm2, p1, p0) =
                (go(kk + 2, memo, y), go(kk - 1, memo, y), go(kk - 2, memo, y), go(kk + 1, memo, y), go(kk, memo, y));
            (&p2 * &pm * &pm - &pm2 * &p1 * &p1) * &p0 / (k(2) * y)
        };
        memo.insert(n, val.clone());
        val
    }
    go(m, &mut memo, y)
}

/// Coefficient c with local correction c * log p, from the first multiple mP that is smooth mod p:
/// lambda_p(P) = (lambda_p(mP) + log|psi_m(P)|_p) / m^2.
pub(super) fn canonical_correction(c: &Curve<Rat>, pt: &Point<Rat>, p: &BigInt) -> Result<Rat, HeightError> {
    if !singular_mod(c, pt, p) {
        return Ok(Rat::zero());
    }
    let mut q = pt.clone();
    for m in 2..=MAX_MULTIPLE {
        q = c.add(&q, pt);
        if !singular_mod(c, &q, p) {
            let Point::Affine(xm, _) = &q else { return Ok(Rat::zero()) };
            let smooth = Rat::new((-v(xm, p)).max(0).into(), 2.into());
            let psi = division_value(c, pt, m);
            let corr = (smooth - k(v(&psi, p))) / k((m * m) as i64);
            return Ok(corr);
        }
    }
    Err(HeightError::NoSmoothMultiple(MAX_MULTIPLE, p.to_string()))
}

/// Case analysis by valuations of c4, Delta, psi2, psi3, as for minimal models.
pub(super) fn given_model_correction(c: &Curve<Rat>, pt: &Point<Rat>, p: &BigInt, disc: &Rat) -> Rat {
    let Point::Affine(x, y) = pt else { return Rat::zero() };
    if v(x, p) < 0 {
        return Rat::zero();
    }
    let a_ = v(&(k(3) * x * x + &c.a), p);
    let b_ = v(&(k(2) * y), p);
    if a_ <= 0 || b_ <= 0 {
        return Rat::zero();
    }
    let n = v(disc, p);
    let c4 = k(-48) * &c.a;
    let psi3 = k(3) * x * x * x * x + k(6) * &c.a * x * x + k(12) * &c.b * x - &c.a * &c.a;
    let cc = v(&psi3, p);
    if c4.is_zero() || v(&c4, p) > 0 {
        if cc >= 3 * b_ {
            Rat::new((-b_).into(), 3.into())
        } else {
            Rat::new((-cc).into(), 8.into())
        }
    } else {
        let m = Rat::from_integer(b_.into()).min(Rat::new(n.into(), 2.into()));
        let nn = k(n);
        -(&m * (&nn - &m)) / (k(2) * &nn)
    }
}
