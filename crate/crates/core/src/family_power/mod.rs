//! Progressions on y^2 = x^(2n+1) + k (four terms) and y^2 = x^(2n) + k (six terms).

mod errata;
mod even;
mod odd;
mod tables;

pub use errata::errata_report;
pub use even::{even_coeffs, even_instance, even_parametrize, even_witness, EvenFamilyInstance, EvenWitness};
pub(crate) use even::torsion_xs;
pub use odd::{m5_search, m5_value, odd_coeffs, odd_instance, odd_parametrize, odd_witness, M5Search, OddFamilyInstance, OddWitness, M5_FACTORS};
pub use tables::{repair_probe, verify_generator_tables, TableRow, EVEN_TABLE, ODD_TABLE};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rat::{big, is_perfect_power, valuation};
use crate::arith::{factor_integer, FactorBudget, Rat};
use crate::ec::Recipe;
use crate::witness::APWitness;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("n = {0} out of range")]
    BadN(u32),
    #[error("recipe {0} evaluates to the identity")]
    Identity(String),
    #[error("point is exceptional for the quartic map: {0}")]
    Exceptional(String),
    #[error("degenerate witness: {0}")]
    Degenerate(&'static str),
    #[error("internal identity failed: {0}")]
    Internal(&'static str),
}

/// True iff k1/k2 is a rational (2m)-th power.
pub fn twist_equivalent(k1: &Rat, k2: &Rat, m: u32) -> Result<bool, FamilyError> {
    if k1.is_zero() || k2.is_zero() {
        return Err(FamilyError::Degenerate("zero k"));
    }
    Ok(is_perfect_power(&(k1 / k2), 2 * m).is_some())
}

/// The m with y^2 = x^e + k1 isomorphic to y^2 = x^e + k2 iff k1/k2 is a (2m)-th power.
pub fn equivalence_exponent(e: u32) -> u32 {
    if e % 2 == 1 {
        e
    } else {
        e / 2
    }
}

/// Primes to consider for rescaling: those of the denominators and of the common numerator part.
///
/// The flag is false when a cofactor was left unsplit; it is then listed as if prime.
fn rescaling_primes(values: &[&Rat]) -> (Vec<BigInt>, bool) {
    let nonzero: Vec<&Rat> = values.iter().copied().filter(|x| !x.is_zero()).collect();
    let den = nonzero.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let num = nonzero.iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
    let mut primes = BTreeMap::new();
    let mut complete = true;
    for n in [den, num] {
        if n.abs() <= BigInt::one() {
            continue;
        }
        let f = factor_integer(&n.abs(), SCALE_BUDGET);
        for (p, _) in &f.primes {
            primes.insert(p.clone(), ());
        }
        if let Some(c) = f.cofactor {
            complete = false;
            primes.insert(c, ());
        }
    }
    (primes.into_keys().collect(), complete)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Factoring effort per number when clearing denominators; larger composites fall back.
const SCALE_BUDGET: FactorBudget = FactorBudget { trial_bound: 100_000, rho_iterations: 200_000 };

/// A clearing scale; `minimal` is false when a cofactor could not be split.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Scale {
    pub value: Rat,
    pub minimal: bool,
}

/// Smallest l (per prime exponent) with l^wx * x and l^wy * y integral for every coordinate.
///
/// With `allow_negative`, primes common to all numerators are divided out as far as possible.
/// An unsplit cofactor is treated as a prime, so the result may leave a denominator behind;
/// callers check integrality and fall back on [`denominator_lcm`].
pub(crate) fn minimal_scale(points: &[(Rat, Rat)], wx: u32, wy: u32, allow_negative: bool) -> Scale {
    let all: Vec<&Rat> = points.iter().flat_map(|(x, y)| [x, y]).collect();
    let (primes, minimal) = rescaling_primes(&all);
    let mut l = Rat::one();
    for p in primes {
        let mut e = i64::MIN;
        for (x, y) in points {
            if let Some(v) = valuation(x, &p) {
                e = e.max(ceil_div(-v, wx as i64));
            }
            if let Some(v) = valuation(y, &p) {
                e = e.max(ceil_div(-v, wy as i64));
            }
        }
        if e == i64::MIN || (!allow_negative && e < 0) {
            continue;
        }
        let pe = big(p.pow(e.unsigned_abs() as u32));
        l = if e >= 0 { l * pe } else { l / pe };
    }
    Scale { value: l, minimal }
}

/// Lcm of all coordinate denominators; scaling by it always clears them.
pub(crate) fn denominator_lcm(points: &[(Rat, Rat)]) -> BigInt {
    points.iter().flat_map(|(x, y)| [x.denom(), y.denom()]).fold(BigInt::one(), |l, d| l.lcm(d))
}

/// Family parameter selector for the batch builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Witnesses from successive recipes, keeping only pairwise non-isomorphic curves.
pub fn pairwise_inequivalent_batch(parity: Parity, n: u32, count: usize, max_recipes: usize) -> Result<Vec<APWitness>, FamilyError> {
    if count == 0 {
        return Ok(vec![]);
    }
    let mut kept: Vec<APWitness> = Vec::new();
    let odd_inst;
    let even_inst;
    let produce: Box<dyn Fn(&Recipe) -> Result<APWitness, FamilyError>> = match parity {
        Parity::Odd => {
            odd_inst = odd_instance(n)?;
            Box::new(|r: &Recipe| odd_witness(&odd_inst, r).map(|w| w.witness))
        }
        Parity::Even => {
            even_inst = even_instance(n)?;
            Box::new(|r: &Recipe| even_witness(&even_inst, r).map(|w| w.witness))
        }
    };
    for r in Recipe::enumerate().take(max_recipes) {
        let Ok(w) = produce(&r) else { continue };
        let m = equivalence_exponent(w.n);
        if kept.iter().all(|o| !twist_equivalent(&o.k, &w.k, m).unwrap_or(true)) {
            kept.push(w);
            if kept.len() == count {
                break;
            }
        }
    }
    Ok(kept)
}
