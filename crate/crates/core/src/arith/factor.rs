use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_bound: 1_000_000, rho_iterations: 100_000_000 }
    }
}

/// Prime powers of |n|, plus an unfactored composite part if the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "ser_pairs")]
    pub primes: Vec<(BigInt, u32)>,
    #[serde(serialize_with = "ser_opt")]
    pub cofactor: Option<BigInt>,
}

fn ser_pairs<S: serde::Serializer>(v: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, e) in v {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

fn ser_opt<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(c) => s.serialize_some(&c.to_string()),
        None => s.serialize_none(),
    }
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn product(&self) -> BigInt {
        let mut acc = self.cofactor.clone().unwrap_or_else(BigInt::one);
        for (p, e) in &self.primes {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn prime_list(&self) -> Vec<BigInt> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mr_round(n: &BigInt, d: &BigInt, s: u32, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin: deterministic below 3.3e24, 64 pseudo-random bases above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == p {
            return true;
        }
        if (&n % &p).is_zero() {
            return false;
        }
    }
    let mut d = &n - 1u32;
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    for &a in &SMALL_PRIMES {
        if !mr_round(&n, &d, s, &BigInt::from(a)) {
            return false;
        }
    }
    let bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < bound {
        return true;
    }
    // deterministic splitmix sequence so results are reproducible
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (&n % BigInt::from(u64::MAX)).to_u64().unwrap();
    let nm3 = &n - 3u32;
    for _ in 0..64 {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let a = BigInt::from(z) % &nm3 + 2u32;
        if !mr_round(&n, &d, s, &a) {
            return false;
        }
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor or None within `budget` steps.
fn pollard_brent(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, m) = (BigInt::from(2), 1u64, 128u64);
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        if c > BigInt::from(20) {
            return None;
        }
    }
    None
}

fn push(out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

/// Factors |n| (n nonzero) by trial division then Pollard rho with primality certification.
pub fn factor_integer(n: &BigInt, budget: FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p <= budget.trial_bound {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut cofactor_parts = Vec::new();
    let mut stack = Vec::new();
    if m > BigInt::one() {
        stack.push(m);
    }
    while let Some(x) = stack.pop() {
        if is_probable_prime(&x) {
            push(&mut primes, x, 1);
            continue;
        }
        if let Some(r) = perfect_square_root(&x) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match pollard_brent(&x, budget.rho_iterations) {
            Some(d) => {
                let e = &x / &d;
                stack.push(d);
                stack.push(e);
            }
            None => cofactor_parts.push(x),
        }
    }
    primes.sort();
    let cofactor = if cofactor_parts.is_empty() {
        None
    } else {
        Some(cofactor_parts.into_iter().fold(BigInt::one(), |a, b| a * b))
    };
    Factorization { primes, cofactor }
}

fn perfect_square_root(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}

/// All positive divisors of |n| (n nonzero), unsorted.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let f = factor_integer(n, FactorBudget::default());
    let mut out = vec![BigInt::one()];
    let mut pieces = f.primes.clone();
    if let Some(c) = f.cofactor {
        pieces.push((c, 1));
    }
    for (p, e) in pieces {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}
