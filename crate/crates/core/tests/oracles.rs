//! Cross-checks against independent, deliberately naive implementations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use ramanujan_lab::arith::{bernoulli, int, sigma, Rational};
use ramanujan_lab::forms::{discriminant_series, eisenstein, g_series};
use ramanujan_lab::series::TruncatedSeries;

/// Akiyama–Tanigawa, which yields B_1 = +1/2.
fn akiyama_tanigawa(n: usize) -> Rational {
    let mut a: Vec<Rational> = (0..=n)
        .map(|j| Rational::new(BigInt::one(), BigInt::from(j + 1)))
        .collect();
    for m in 1..=n {
        for j in (m..=n).rev() {
            let k = Rational::from_integer(BigInt::from(j - m + 1));
            a[j] = k * (&a[j - 1] - &a[j]);
        }
    }
    a[n].clone()
}

fn brute_sigma(k: i64, n: u64) -> Rational {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| {
            let p = num_traits::pow(
                Rational::from_integer(BigInt::from(d)),
                k.unsigned_abs() as usize,
            );
            if k < 0 {
                p.recip()
            } else {
                p
            }
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[test]
fn bernoulli_matches_akiyama_tanigawa() {
    for n in 0..=40 {
        let expected = if n == 1 {
            -akiyama_tanigawa(1)
        } else {
            akiyama_tanigawa(n)
        };
        assert_eq!(bernoulli(n), expected, "B_{n}");
    }
}

#[test]
fn sigma_matches_brute_force() {
    for k in -5..=6 {
        for n in 1..=300 {
            assert_eq!(sigma(k, n), brute_sigma(k, n), "sigma_{k}({n})");
        }
    }
}

#[test]
fn g_series_matches_definition() {
    for (u, v) in [(0, 1), (0, 3), (2, 3), (1, 5), (4, 5)] {
        let s = g_series(u, v, 60).unwrap();
        assert!(s.coeff(0).is_zero());
        for n in 1..=60u64 {
            let weight = num_traits::pow(int(n as i64), u as usize);
            assert_eq!(
                s.coeff(n as usize),
                &(weight * brute_sigma(-(v as i64), n)),
                "g[{u},{v}] at {n}"
            );
        }
    }
}

#[test]
fn discriminant_is_ramanujan_tau() {
    // Δ/1728 = Σ τ(n) z^n
    let tau = [
        1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    ];
    let d = discriminant_series(10);
    for (n, t) in tau.iter().enumerate() {
        assert_eq!(d.coeff(n + 1), &(int(*t) * int(1728)), "tau({})", n + 1);
    }
}

#[test]
fn products_match_naive_convolution() {
    let e4 = eisenstein(2, 40).unwrap();
    let e6 = eisenstein(3, 40).unwrap();
    let product = e4.mul(&e6);
    for n in 0..=40 {
        let naive = (0..=n).fold(Rational::zero(), |acc, i| {
            acc + e4.coeff(i) * e6.coeff(n - i)
        });
        assert_eq!(product.coeff(n), &naive);
    }
    // E4 E6 = E10 because the weight-10 space is one-dimensional
    assert_eq!(product, eisenstein(5, 40).unwrap());
    assert_eq!(e4.mul(&e4), eisenstein(4, 40).unwrap());
    let one = TruncatedSeries::one(40);
    assert_eq!(e4.mul(&one), e4);
}
