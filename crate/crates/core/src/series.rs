//! Truncated power series in `z` over exact rationals.
//!
//! A series of precision `P` stores the coefficients of `z^0 .. z^P`, all of
//! which are exact. Binary operations return the smaller precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

/// Order of vanishing at `z = 0` as far as the stored coefficients can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(usize),
    /// Every stored coefficient is zero; the true order is at least this.
    AtLeast(usize),
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(t) => Some(t),
            Order::AtLeast(_) => None,
        }
    }

    /// The certified lower bound on the order.
    pub fn lower_bound(self) -> usize {
        match self {
            Order::Finite(t) | Order::AtLeast(t) => t,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(t) => write!(f, "{t}"),
            Order::AtLeast(t) => write!(f, ">={t}"),
        }
    }
}

impl TruncatedSeries {
    /// Series with the given coefficients; precision is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least z^0");
        Self { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Self::constant(Rational::zero(), precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::constant(Rational::one(), precision)
    }

    pub fn constant(c: Rational, precision: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); precision + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The series `z^k` (zero when `k > precision`).
    pub fn monomial(k: usize, precision: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); precision + 1];
        if k <= precision {
            coeffs[k] = Rational::one();
        }
        Self { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^n`; panics beyond the precision.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision());
        Self {
            coeffs: self.coeffs[..=p].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        Self {
            coeffs: (0..=p)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        Self {
            coeffs: (0..=p)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        let mut coeffs = vec![Rational::zero(); p + 1];
        for (i, a) in self.coeffs[..=p].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=p - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Multiplies by `z^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let p = self.precision();
        let mut coeffs = vec![Rational::zero(); p + 1];
        if k <= p {
            coeffs[k..].clone_from_slice(&self.coeffs[..=p - k]);
        }
        Self { coeffs }
    }

    /// Euler operator `z d/dz`.
    pub fn delta(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
        }
    }

    pub fn ord(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(t) => Order::Finite(t),
            None => Order::AtLeast(self.precision() + 1),
        }
    }

    /// Binary exponentiation; `pow(0)` is the constant series 1.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact value of the stored truncation at `x` (no tail estimate).
    pub fn eval_truncation(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates the stored truncation at `x` and renders it with `digits`
    /// fractional digits (rounded half away from zero, trailing zeros
    /// dropped).
    ///
    /// The result is the value of the truncated polynomial, not of the
    /// function the series represents: no bound on the omitted tail is
    /// claimed.
    pub fn numeric_eval(&self, x: &Rational, digits: usize) -> Result<NumericValue> {
        if x.abs() >= Rational::one() {
            return Err(Error::Domain(format!(
                "evaluation point {} must satisfy |x| < 1",
                format_rational(x)
            )));
        }
        let exact = self.eval_truncation(x);
        Ok(NumericValue {
            decimal: render_decimal(&exact, digits),
            exact,
            terms: self.precision() + 1,
        })
    }
}

/// Result of [`TruncatedSeries::numeric_eval`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericValue {
    pub decimal: String,
    pub exact: Rational,
    pub terms: usize,
}

impl NumericValue {
    pub fn note(&self) -> String {
        format!(
            "value of the first {} stored terms; the omitted tail is not bounded",
            self.terms
        )
    }
}

/// Decimal rendering of an exact rational.
pub fn render_decimal(value: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value * Rational::from_integer(scale.clone());
    // round half away from zero
    let two = BigInt::from(2);
    let (q, r) = scaled.numer().abs().div_rem(scaled.denom());
    let rounded = if r * &two >= *scaled.denom() {
        q + 1
    } else {
        q
    };
    let negative = value.is_negative() && !rounded.is_zero();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if negative { "-" } else { "" };
    if digits == 0 || frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
