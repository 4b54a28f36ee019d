#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ramanujan_lab::arith::ratio;
use ramanujan_lab::ring::{Monomial, Polynomial, SystemConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random monomial of total degree in `lo..=hi`.
pub fn random_monomial(rng: &mut ChaCha8Rng, config: SystemConfig, lo: u32, hi: u32) -> Monomial {
    let vars = config.vars();
    let degree = rng.gen_range(lo..=hi);
    Monomial::from_pairs((0..degree).map(|_| (*vars.choose(rng).unwrap(), 1)))
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> ramanujan_lab::Rational {
    let mut num = rng.gen_range(-12i64..=12);
    if num == 0 {
        num = 1;
    }
    ratio(num, rng.gen_range(1..=6))
}

/// Random polynomial with up to `max_terms` terms of total degree <= `max_deg`.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    config: SystemConfig,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let n = rng.gen_range(1..=max_terms);
    Polynomial::from_terms(
        config,
        (0..n).map(|_| {
            (
                random_monomial(rng, config, 0, max_deg),
                random_coefficient(rng),
            )
        }),
    )
}

/// Random polynomial with exactly two terms, both of positive degree.
pub fn random_two_term(rng: &mut ChaCha8Rng, config: SystemConfig, max_deg: u32) -> Polynomial {
    loop {
        let a = random_monomial(rng, config, 1, max_deg);
        let b = random_monomial(rng, config, 1, max_deg);
        if a != b {
            return Polynomial::from_terms(
                config,
                [(a, random_coefficient(rng)), (b, random_coefficient(rng))],
            );
        }
    }
}

pub fn nonzero_random(
    rng: &mut ChaCha8Rng,
    config: SystemConfig,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let p = random_polynomial(rng, config, max_deg, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}
