//! The polynomial ring `R = Q[X0, X1, X2, X3, Y_{0,1}, ..., Y_{m-1,m}]`.
//!
//! `X0` is written `z`; `X1, X2, X3` stand for `E2, E4, E6` and `Y_{u,v}`
//! for `g_{u,v}`. Polynomials are sparse maps from [`Monomial`] to nonzero
//! rationals, kept sorted by a graded lexicographic term order.

mod derive;
mod eval;
mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::forms::{check_m, y_pairs};

pub use derive::{derive, Derivation, DerivationPart};
pub use eval::{evaluate, Evaluator};
pub use monomial::Monomial;
pub use parse::parse;

/// A ring variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// `X0`, housing `z`.
    Z,
    /// Houses `E2`.
    X1,
    /// Houses `E4`.
    X2,
    /// Houses `E6`.
    X3,
    /// `Y_{u,v}`, housing `g_{u,v}`.
    Y(u32, u32),
}

impl Var {
    fn sort_key(self) -> (u8, u32, u32) {
        match self {
            Var::Z => (0, 0, 0),
            Var::X1 => (1, 0, 0),
            Var::X2 => (2, 0, 0),
            Var::X3 => (3, 0, 0),
            Var::Y(u, v) => (4, v, u),
        }
    }

    /// Weight under `phi`: `z -> 0, X1 -> 1, X2 -> 2, X3 -> 3, Y -> 2m + 2`.
    pub fn phi(self, m: u32) -> i64 {
        match self {
            Var::Z => 0,
            Var::X1 => 1,
            Var::X2 => 2,
            Var::X3 => 3,
            Var::Y(..) => 2 * i64::from(m) + 2,
        }
    }

    /// Weight under `phi2`: as `phi` except `Y_{u,v} -> 4(u - v)`.
    pub fn phi2(self) -> i64 {
        match self {
            Var::Y(u, v) => 4 * (i64::from(u) - i64::from(v)),
            other => other.phi(0),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::Z => "z".into(),
            Var::X1 => "E2".into(),
            Var::X2 => "E4".into(),
            Var::X3 => "E6".into(),
            Var::Y(u, v) => format!("g[{u},{v}]"),
        }
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `z < X1 < X2 < X3 < Y_{0,1} < Y_{0,3} < Y_{1,3} < ...`
impl Ord for Var {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Fixes the odd parameter `m` and with it the variable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemConfig {
    m: u32,
}

impl SystemConfig {
    pub fn new(m: u32) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of variables other than `z`: `3 + ((m + 1) / 2)^2`.
    pub fn nu(&self) -> u32 {
        3 + self.m.div_ceil(2).pow(2)
    }

    /// All variables in ascending order, `z` first.
    pub fn vars(&self) -> Vec<Var> {
        let mut vars = vec![Var::Z, Var::X1, Var::X2, Var::X3];
        vars.extend(y_pairs(self.m).into_iter().map(|(u, v)| Var::Y(u, v)));
        vars
    }

    pub fn contains(&self, var: Var) -> bool {
        match var {
            Var::Y(u, v) => v <= self.m && v % 2 == 1 && u < v,
            _ => true,
        }
    }
}

/// Which weighting to use in [`Polynomial::weight_part`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Phi,
    Phi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    config: SystemConfig,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(config: SystemConfig) -> Self {
        Self {
            config,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(config: SystemConfig, c: Rational) -> Self {
        Self::term(config, c, Monomial::one())
    }

    pub fn one(config: SystemConfig) -> Self {
        Self::constant(config, Rational::one())
    }

    /// `c * monomial`. Panics if the monomial uses a variable outside the
    /// configuration.
    pub fn term(config: SystemConfig, c: Rational, monomial: Monomial) -> Self {
        assert!(
            monomial.vars().all(|v| config.contains(v)),
            "monomial {monomial} is not in the ring for m = {}",
            config.m
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Self { config, terms }
    }

    pub fn var(config: SystemConfig, var: Var) -> Result<Self> {
        if !config.contains(var) {
            return match var {
                Var::Y(u, v) => Err(Error::IndexOutOfRange { u, v, m: config.m }),
                _ => unreachable!("only Y variables depend on m"),
            };
        }
        Ok(Self::term(config, Rational::one(), Monomial::var(var)))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(config: SystemConfig, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(config);
        for (m, c) in terms {
            assert!(m.vars().all(|v| config.contains(v)));
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn config(&self) -> SystemConfig {
        self.config
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Returns the polynomial under another (compatible) configuration.
    pub fn with_config(&self, config: SystemConfig) -> Result<Self> {
        for m in self.terms.keys() {
            if let Some(Var::Y(u, v)) = m.vars().find(|v| !config.contains(*v)) {
                return Err(Error::IndexOutOfRange { u, v, m: config.m });
            }
        }
        Ok(Self {
            config,
            terms: self.terms.clone(),
        })
    }

    fn same_config(&self, other: &Self) -> Result<()> {
        if self.config != other.config {
            return Err(Error::Parameter(format!(
                "polynomials over different rings (m = {} and m = {})",
                self.config.m, other.config.m
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_config(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_config(other)?;
        let mut out = Self::zero(self.config);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            config: self.config,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.config);
        }
        Self {
            config: self.config,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, monomial: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.config);
        }
        Self {
            config: self.config,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.mul(monomial), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.config);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`.
    ///
    /// Runs multivariate division under the graded lexicographic order and
    /// gives up as soon as a leading term is not divisible, since for an
    /// exact quotient every intermediate leading term is.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Option<Self>> {
        self.same_config(divisor)?;
        let (lead_m, lead_c) = divisor
            .leading_term()
            .ok_or_else(|| Error::Parameter("division by the zero polynomial".into()))?;
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.config);
        while let Some((m, c)) = rest.leading_term() {
            let Some(qm) = m.checked_div(lead_m) else {
                return Ok(None);
            };
            let qc = c / lead_c;
            rest = &rest - &divisor.mul_term(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Ok(Some(quotient))
    }

    fn max_over_terms(&self, f: impl Fn(&Monomial) -> i64) -> i64 {
        self.terms.keys().map(f).max().unwrap_or(-1)
    }

    /// Degree in `z`; `-1` for the zero polynomial.
    pub fn deg_x0(&self) -> i64 {
        self.max_over_terms(|m| i64::from(m.degree_in(Var::Z)))
    }

    /// Total degree in all variables but `z`; `-1` for zero.
    pub fn deg_eg(&self) -> i64 {
        self.max_over_terms(|m| i64::from(m.degree() - m.degree_in(Var::Z)))
    }

    /// Total degree; `-1` for zero.
    pub fn total_deg(&self) -> i64 {
        self.max_over_terms(|m| i64::from(m.degree()))
    }

    fn weigh(&self, weighting: Weighting, monomial: &Monomial) -> i64 {
        match weighting {
            Weighting::Phi => monomial.weight(|v| v.phi(self.config.m)),
            Weighting::Phi2 => monomial.weight(Var::phi2),
        }
    }

    fn nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::Parameter(format!("{what} of the zero polynomial")));
        }
        Ok(())
    }

    /// Largest `phi`-weight of a term.
    pub fn phi(&self) -> Result<i64> {
        self.nonzero("phi")?;
        Ok(self.max_over_terms(|m| self.weigh(Weighting::Phi, m)))
    }

    /// Largest `phi2`-weight of a term.
    pub fn phi2(&self) -> Result<i64> {
        self.nonzero("phi2")?;
        Ok(self.max_over_terms(|m| self.weigh(Weighting::Phi2, m)))
    }

    /// The terms whose weight attains the minimum or maximum.
    pub fn weight_part(&self, extreme: Extreme, weighting: Weighting) -> Result<Self> {
        self.nonzero("weight part")?;
        let weights = self.terms.keys().map(|m| self.weigh(weighting, m));
        let target = match extreme {
            Extreme::Min => weights.min(),
            Extreme::Max => weights.max(),
        }
        .expect("nonzero polynomial");
        Ok(Self {
            config: self.config,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.weigh(weighting, m) == target)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// The polynomial in the text grammar accepted by [`parse`].
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// Panics on mismatched configurations; see [`Polynomial::try_add`].
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.try_add(rhs).expect("same ring")
    }
}

/// Panics on mismatched configurations; see [`Polynomial::try_sub`].
impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.try_sub(rhs).expect("same ring")
    }
}

/// Panics on mismatched configurations; see [`Polynomial::try_mul`].
impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.try_mul(rhs).expect("same ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// `X2^3 - X3^2`.
pub fn discriminant(config: SystemConfig) -> Polynomial {
    let x2 = Polynomial::var(config, Var::X2).expect("X2");
    let x3 = Polynomial::var(config, Var::X3).expect("X3");
    &x2.pow(3) - &x3.pow(2)
}

/// `z (X2^3 - X3^2)`.
pub fn theta(config: SystemConfig) -> Polynomial {
    let z = Polynomial::var(config, Var::Z).expect("z");
    &z * &discriminant(config)
}
