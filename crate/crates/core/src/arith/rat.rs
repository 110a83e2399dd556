use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses "n", "-n" or "n/d".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// p-adic valuation of a nonzero rational. Returns `None` for zero.
pub fn valuation(x: &Rat, p: &BigInt) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

pub fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn exact_root(n: &BigInt, e: u32) -> Option<BigInt> {
    let r = n.nth_root(e);
    if r.pow(e) == *n {
        Some(r)
    } else {
        None
    }
}

/// Returns the rational e-th root of `x` when one exists.
pub fn is_perfect_power(x: &Rat, e: u32) -> Option<Rat> {
    assert!(e >= 1, "exponent must be positive");
    if e == 1 {
        return Some(x.clone());
    }
    if x.is_negative() && e % 2 == 0 {
        return None;
    }
    let num = exact_root(x.numer(), e)?;
    let den = exact_root(x.denom(), e)?;
    Some(Rat::new(num, den))
}

pub fn rat_pow(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

pub fn lcm_of_denoms<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_sums() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        // exact oracle: expand term by term
        let v = int(-43).pow(2) - int(3) * int(617).pow(2) + int(3) * int(1187).pow(2) - int(1847).pow(2);
        assert_eq!(v, int(1849 - 1142067 + 4226907 - 3411409));
        let y = big(BigInt::from(62833320i64));
        let x = big(BigInt::from(487080i64));
        assert_eq!(&y * &y - &x * &x * &x, big("-111610206808689600".parse().unwrap()));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(parse_rat("1/0").is_none());
        let r = std::panic::catch_unwind(|| rat(1, 2) / int(0));
        assert!(r.is_err());
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(is_perfect_power(&rat(729, 64), 2), Some(rat(27, 8)));
        assert_eq!(is_perfect_power(&int(1024), 10), Some(int(2)));
        assert_eq!(is_perfect_power(&int(2), 10), None);
        assert_eq!(is_perfect_power(&int(-27), 3), Some(int(-3)));
        assert_eq!(is_perfect_power(&int(-4), 2), None);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(rat_to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rat_to_string(&int(7)), "7");
        assert_eq!(valuation(&rat(12, 5), &BigInt::from(2)), Some(2));
        assert_eq!(valuation(&rat(12, 5), &BigInt::from(5)), Some(-1));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let n = Rat::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(Rat::new(n.numer().clone(), n.denom().clone()), n.clone());
            prop_assert!(n.denom().is_positive());
        }

        #[test]
        fn powers_roundtrip(a in arb_rat(), e in 1u32..6) {
            let p = rat_pow(&a, e);
            let r = is_perfect_power(&p, e).unwrap();
            prop_assert_eq!(rat_pow(&r, e), p);
        }
    }
}
