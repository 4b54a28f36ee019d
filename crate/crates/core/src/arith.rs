//! Exact rationals, Bernoulli numbers, divisor sums and binomials.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a pair of machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Computed from `sum_{k=0}^{n} C(n+1, k) B_k = 0`; every value is cached.
pub fn bernoulli(n: usize) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::zero();
    }
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache").get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache");
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let j = cache.len();
        let mut acc = Rational::zero();
        let mut c = BigInt::one();
        // c runs through C(j+1, k)
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(c.clone());
            }
            c = c * BigInt::from(j + 1 - k) / BigInt::from(k + 1);
        }
        // c is now C(j+1, j) = j+1
        cache.push(-acc / Rational::from_integer(c));
    }
    cache[n].clone()
}

fn pow_rational(d: u64, k: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(d), k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Divisor sum `sigma_k(n) = sum_{d | n} d^k`; `k` may be negative.
///
/// Panics if `n == 0`.
pub fn sigma(k: i64, n: u64) -> Rational {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut acc = Rational::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += pow_rational(d, k);
            let e = n / d;
            if e != d {
                acc += pow_rational(e, k);
            }
        }
        d += 1;
    }
    acc
}

/// `[sigma_k(1), ..., sigma_k(n_max)]` computed by a divisor sieve.
pub fn sigma_table(k: i64, n_max: usize) -> Vec<Rational> {
    if k >= 0 {
        let mut table = vec![BigInt::zero(); n_max];
        for d in 1..=n_max {
            let term = num_traits::pow(BigInt::from(d), k as usize);
            for multiple in (d..=n_max).step_by(d) {
                table[multiple - 1] += &term;
            }
        }
        table.into_iter().map(Rational::from_integer).collect()
    } else {
        let mut table = vec![Rational::zero(); n_max];
        for d in 1..=n_max {
            let term = pow_rational(d as u64, k);
            for multiple in (d..=n_max).step_by(d) {
                table[multiple - 1] += &term;
            }
        }
        table
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rational::new(num, den))
}
