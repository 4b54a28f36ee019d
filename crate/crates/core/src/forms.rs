//! The concrete functions of the extended Ramanujan system: Eisenstein
//! series, the divisor series `g_{u,v}`, the discriminant, and the
//! reduction polynomials `A_k` expressing `E_{2k}` through `E_4` and `E_6`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bernoulli, format_rational, int, ratio, sigma_table, Rational};
use crate::error::{Error, Result};
use crate::linalg::solve_square;
use crate::series::TruncatedSeries;

/// Normalized Eisenstein series `E_{2k} = 1 - (4k / B_{2k}) sum sigma_{2k-1}(n) z^n`.
pub fn eisenstein(k: u32, precision: usize) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::Parameter("Eisenstein index k must be >= 1".into()));
    }
    let factor = -int(4 * i64::from(k)) / bernoulli(2 * k as usize);
    let sigmas = sigma_table(2 * i64::from(k) - 1, precision);
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(Rational::one());
    coeffs.extend(sigmas.iter().map(|s| &factor * s));
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

fn check_g_indices(u: u32, v: u32) -> Result<()> {
    if v.is_multiple_of(2) || u >= v {
        return Err(Error::Parameter(format!(
            "g[{u},{v}] needs odd v and 0 <= u < v"
        )));
    }
    Ok(())
}

/// `g_{u,v} = sum_{n >= 1} n^u sigma_{-v}(n) z^n` for odd `v` and `u < v`.
pub fn g_series(u: u32, v: u32, precision: usize) -> Result<TruncatedSeries> {
    check_g_indices(u, v)?;
    let sigmas = sigma_table(-i64::from(v), precision);
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(Rational::zero());
    coeffs.extend(sigmas.into_iter().enumerate().map(|(i, s)| {
        s * Rational::from_integer(num_traits::pow(BigInt::from(i + 1), u as usize))
    }));
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// `E_4^3 - E_6^2`.
pub fn discriminant_series(precision: usize) -> TruncatedSeries {
    let e4 = eisenstein(2, precision).expect("k = 2");
    let e6 = eisenstein(3, precision).expect("k = 3");
    &e4.pow(3) - &e6.pow(2)
}

/// `z (E_4^3 - E_6^2)`.
pub fn theta_series(precision: usize) -> TruncatedSeries {
    discriminant_series(precision).shift(1)
}

/// The pairs `(u, v)` indexing `g_{u,v}` for a given odd `m`, ordered by
/// `v` ascending and then `u` ascending.
pub fn y_pairs(m: u32) -> Vec<(u32, u32)> {
    (1..=m)
        .step_by(2)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect()
}

pub(crate) fn check_m(m: u32) -> Result<()> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "m must be an odd positive integer, got {m}"
        )));
    }
    Ok(())
}

/// Polynomial `A_k(X, Y)` with `E_{2k} = A_k(E_4, E_6)`.
///
/// Every monomial `X^a Y^b` satisfies `2a + 3b = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkPolynomial {
    k: u32,
    /// `(a, b) -> coefficient of X^a Y^b`, nonzero entries only.
    terms: BTreeMap<(u32, u32), Rational>,
}

impl AkPolynomial {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    /// Substitutes series for `X` and `Y`.
    pub fn eval_series(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
        let precision = x.precision().min(y.precision());
        self.terms
            .iter()
            .fold(TruncatedSeries::zero(precision), |acc, (&(a, b), c)| {
                &acc + &(&x.pow(a) * &y.pow(b)).scale(c)
            })
    }
}

impl fmt::Display for AkPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !c.is_one() {
                factors.push(format_rational(c));
            }
            match a {
                0 => {}
                1 => factors.push("X".to_string()),
                _ => factors.push(format!("X^{a}")),
            }
            match b {
                0 => {}
                1 => factors.push("Y".to_string()),
                _ => factors.push(format!("Y^{b}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", factors.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

/// Exponent pairs `(a, b)` with `2a + 3b = k`, `b` ascending.
pub fn weight_basis(k: u32) -> Vec<(u32, u32)> {
    (0..=k / 3)
        .filter(|b| (k - 3 * b).is_multiple_of(2))
        .map(|b| ((k - 3 * b) / 2, b))
        .collect()
}

/// Solves for `A_k` from the leading coefficients of `E_{2k}` and checks the
/// result against `E_{2k}` through `z^precision`.
pub fn ak_polynomial(k: u32, precision: usize) -> Result<AkPolynomial> {
    if k < 2 {
        return Err(Error::Parameter(format!(
            "A_k is defined for k >= 2, got {k}"
        )));
    }
    let basis = weight_basis(k);
    let size = basis.len();
    let prec = precision.max(size);
    let e4 = eisenstein(2, prec)?;
    let e6 = eisenstein(3, prec)?;
    let target = eisenstein(k, prec)?;
    let products: Vec<TruncatedSeries> = basis
        .iter()
        .map(|&(a, b)| &e4.pow(a) * &e6.pow(b))
        .collect();
    let matrix = (0..size)
        .map(|n| products.iter().map(|p| p.coeff(n).clone()).collect())
        .collect();
    let rhs = (0..size).map(|n| target.coeff(n).clone()).collect();
    let solution = solve_square(matrix, rhs)
        .ok_or_else(|| Error::Internal(format!("singular weight-{} coefficient system", 2 * k)))?;
    let terms: BTreeMap<_, _> = basis
        .into_iter()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let ak = AkPolynomial { k, terms };
    let check = ak.eval_series(&e4, &e6);
    if let Some(n) = (0..=precision).find(|&n| check.coeff(n) != target.coeff(n)) {
        return Err(Error::Internal(format!(
            "A_{k}(E4, E6) differs from E{} at z^{n}",
            2 * k
        )));
    }
    Ok(ak)
}

/// The argument tuple `(z, E_2, E_4, E_6, g_{0,1}, g_{0,3}, ..., g_{m-1,m})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTuple {
    m: u32,
    series: Vec<TruncatedSeries>,
}

impl FunctionTuple {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn precision(&self) -> usize {
        self.series[0].precision()
    }

    pub fn series(&self) -> &[TruncatedSeries] {
        &self.series
    }

    pub fn z(&self) -> &TruncatedSeries {
        &self.series[0]
    }

    pub fn e2(&self) -> &TruncatedSeries {
        &self.series[1]
    }

    pub fn e4(&self) -> &TruncatedSeries {
        &self.series[2]
    }

    pub fn e6(&self) -> &TruncatedSeries {
        &self.series[3]
    }

    /// `g_{u,v}`, if the pair belongs to this tuple.
    pub fn g(&self, u: u32, v: u32) -> Option<&TruncatedSeries> {
        if v > self.m || v.is_multiple_of(2) || u >= v {
            return None;
        }
        // pairs with smaller v: 1 + 3 + ... + (v - 2) = ((v - 1) / 2)^2
        let before = ((v - 1) / 2).pow(2) as usize;
        self.series.get(4 + before + u as usize)
    }
}

pub fn function_tuple(m: u32, precision: usize) -> Result<FunctionTuple> {
    check_m(m)?;
    let mut series = vec![
        TruncatedSeries::monomial(1, precision),
        eisenstein(1, precision)?,
        eisenstein(2, precision)?,
        eisenstein(3, precision)?,
    ];
    for (u, v) in y_pairs(m) {
        series.push(g_series(u, v, precision)?);
    }
    Ok(FunctionTuple { m, series })
}

/// Outcome of one coefficientwise identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationCheck {
    pub name: String,
    /// Number of coefficients compared (`z^0 .. z^{checked-1}`).
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<usize>,
}

impl EquationCheck {
    fn compare(name: String, lhs: &TruncatedSeries, rhs: &TruncatedSeries, checked: usize) -> Self {
        let bad: Vec<usize> = (0..checked)
            .filter(|&n| lhs.coeff(n) != rhs.coeff(n))
            .collect();
        Self {
            name,
            checked,
            mismatches: bad.len(),
            first_mismatch: bad.first().copied(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    pub m: u32,
    pub precision: usize,
    /// The differential system with the canonical closing equations.
    pub equations: Vec<EquationCheck>,
    /// Closing equations exactly as printed in the source text, kept as
    /// evidence; these are not required to pass.
    pub errata: Vec<EquationCheck>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(EquationCheck::passed)
    }
}

/// The series `Ê_{v+1}`: the weight-`(v+1)` Eisenstein series written in
/// the generators, i.e. `E_2`, `E_4`, `E_6`, or `A_{(v+1)/2}(E_4, E_6)`.
fn closing_eisenstein(tuple: &FunctionTuple, v: u32, precision: usize) -> Result<TruncatedSeries> {
    Ok(match v {
        1 => tuple.e2().clone(),
        3 => tuple.e4().clone(),
        5 => tuple.e6().clone(),
        _ => ak_polynomial(v.div_ceil(2), precision)?.eval_series(tuple.e4(), tuple.e6()),
    })
}

/// `B_{v+1} / (2v + 2)`, the scalar of the closing equation for `g_{v-1,v}`.
pub fn closing_scalar(v: u32) -> Rational {
    bernoulli(v as usize + 1) / int(2 * i64::from(v) + 2)
}

/// Checks the whole differential system on the function tuple, comparing
/// coefficients of `z^0 .. z^{precision-1}`.
///
/// Only rejects invalid `m`; use [`verify_system`] to turn a failing
/// canonical equation into an error.
pub fn check_system(m: u32, precision: usize) -> Result<SystemReport> {
    let t = function_tuple(m, precision)?;
    let checked = precision;
    let (e2, e4, e6) = (t.e2(), t.e4(), t.e6());
    let mut equations = vec![
        EquationCheck::compare(
            "delta E2 = (E2^2 - E4)/12".into(),
            &e2.delta(),
            &(&(e2 * e2) - e4).scale(&ratio(1, 12)),
            checked,
        ),
        EquationCheck::compare(
            "delta E4 = (E2*E4 - E6)/3".into(),
            &e4.delta(),
            &(&(e2 * e4) - e6).scale(&ratio(1, 3)),
            checked,
        ),
        EquationCheck::compare(
            "delta E6 = (E2*E6 - E4^2)/2".into(),
            &e6.delta(),
            &(&(e2 * e6) - &(e4 * e4)).scale(&ratio(1, 2)),
            checked,
        ),
    ];
    let mut errata = Vec::new();
    let one = TruncatedSeries::one(precision);
    for v in (1..=m).step_by(2) {
        let g = |u: u32| t.g(u, v).expect("pair within m");
        for u in 0..v - 1 {
            equations.push(EquationCheck::compare(
                format!("delta g[{u},{v}] = g[{},{v}]", u + 1),
                &g(u).delta(),
                g(u + 1),
                checked,
            ));
        }
        let lhs = g(v - 1).delta();
        let canonical = (&one - &closing_eisenstein(&t, v, precision)?).scale(&closing_scalar(v));
        equations.push(EquationCheck::compare(
            format!(
                "delta g[{},{v}] = B_{}/{} * (1 - E{})",
                v - 1,
                v + 1,
                2 * v + 2,
                v + 1
            ),
            &lhs,
            &canonical,
            checked,
        ));
        if v == 1 {
            // operator D_1 as printed: (1/24)(1 - X_2), X_2 housing E_4
            let literal = (&one - e4).scale(&ratio(1, 24));
            errata.push(EquationCheck::compare(
                "literal D_1: delta g[0,1] = (1 - E4)/24".into(),
                &lhs,
                &literal,
                checked,
            ));
        } else {
            let shifted = ak_polynomial(v + 1, precision)?.eval_series(e4, e6);
            let shifted_minus_one = &shifted - &one;
            let denom = int(2 * i64::from(v) + 2);
            let literal = shifted_minus_one.scale(&(bernoulli(2 * v as usize + 2) / &denom));
            errata.push(EquationCheck::compare(
                format!(
                    "literal system: delta g[{},{v}] = B_{} * (A_{}(E4,E6) - 1)/{}",
                    v - 1,
                    2 * v + 2,
                    v + 1,
                    2 * v + 2
                ),
                &lhs,
                &literal,
                checked,
            ));
            let literal_op = shifted_minus_one.scale(&(bernoulli(v as usize + 1) / &denom));
            errata.push(EquationCheck::compare(
                format!(
                    "literal D_{v}: delta g[{},{v}] = B_{} * (A_{}(E4,E6) - 1)/{}",
                    v - 1,
                    v + 1,
                    v + 1,
                    2 * v + 2
                ),
                &lhs,
                &literal_op,
                checked,
            ));
        }
    }
    Ok(SystemReport {
        m,
        precision,
        equations,
        errata,
    })
}

/// Like [`check_system`] but fails if any canonical equation mismatches.
pub fn verify_system(m: u32, precision: usize) -> Result<SystemReport> {
    let report = check_system(m, precision)?;
    if let Some(bad) = report.equations.iter().find(|e| !e.passed()) {
        return Err(Error::Internal(format!(
            "`{}` fails at z^{}",
            bad.name,
            bad.first_mismatch.unwrap_or(0)
        )));
    }
    Ok(report)
}
