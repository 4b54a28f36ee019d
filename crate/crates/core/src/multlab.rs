//! Empirical multiplicity laboratory.
//!
//! For a degree budget `(d0, d)` the monomials with `deg_z <= d0` and total
//! degree `<= d` in the other variables span a space of dimension
//! `T = (d0 + 1) C(d + nu, nu)`. Evaluating them at the function tuple gives
//! a matrix whose row `n` holds the `z^n` coefficients; the largest `N` for
//! which the first `N` rows still have a kernel is the best order of
//! vanishing any polynomial in the budget attains. The kernel vector at that
//! `N` is the auxiliary polynomial.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};
use crate::forms::function_tuple;
use crate::linalg::IncrementalEchelon;
use crate::ring::{evaluate, theta, Evaluator, Monomial, Polynomial, SystemConfig};
use crate::series::Order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeBudget {
    /// Maximal degree in `z`.
    pub d0: u32,
    /// Maximal total degree in the other variables.
    pub d: u32,
}

impl DegreeBudget {
    pub fn new(d0: u32, d: u32) -> Self {
        Self { d0, d }
    }
}

/// Exponent of the bound actually used: the number of variables other
/// than `z`, `3 + ((m + 1) / 2)^2`.
pub fn operational_exponent(m: u32) -> u32 {
    3 + m.div_ceil(2).pow(2)
}

/// The exponent as printed with the multiplicity estimate,
/// `((m - 1) / 2)^2 + 3`.
pub fn printed_exponent(m: u32) -> u32 {
    ((m - 1) / 2).pow(2) + 3
}

/// `(d0 + 1) (d + 1)^exponent`.
pub fn bound_shape(budget: DegreeBudget, exponent: u32) -> BigInt {
    BigInt::from(budget.d0 + 1) * num_traits::pow(BigInt::from(budget.d + 1), exponent as usize)
}

/// Order of vanishing of `Θ = z (X2^3 - X3^2)` at the function tuple.
pub fn compute_k0(m: u32, precision: usize) -> Result<Order> {
    let config = SystemConfig::new(m)?;
    let tuple = function_tuple(m, precision)?;
    match evaluate(&theta(config), &tuple)?.ord() {
        Order::Finite(t) => Ok(Order::Finite(t)),
        Order::AtLeast(_) => Err(Error::Precision {
            precision,
            what: "Θ vanishes on every stored coefficient".into(),
        }),
    }
}

/// Number of basis monomials for a budget.
pub fn monomial_count(budget: DegreeBudget, config: SystemConfig) -> usize {
    let nu = u64::from(config.nu());
    let count = BigInt::from(budget.d0 + 1) * BigInt::from(binomial(u64::from(budget.d) + nu, nu));
    usize::try_from(count).expect("monomial count fits in memory")
}

/// All monomials within the budget, in ascending graded-lex order.
pub fn monomial_basis(budget: DegreeBudget, config: SystemConfig) -> Vec<Monomial> {
    let others = &config.vars()[1..];
    let mut layer = vec![Monomial::one()];
    let mut all = layer.clone();
    for _ in 0..budget.d {
        // extend by variables no smaller than the current largest to avoid repeats
        let mut next = Vec::new();
        for m in &layer {
            let start = m.exponents().last().map_or(0, |&(v, _)| {
                others.iter().position(|&w| w == v).expect("known variable")
            });
            for &v in &others[start..] {
                next.push(m.mul(&Monomial::var(v)));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut basis: Vec<Monomial> = (0..=budget.d0)
        .flat_map(|i| {
            let zi = Monomial::power(crate::ring::Var::Z, i);
            all.iter().map(move |m| m.mul(&zi)).collect::<Vec<_>>()
        })
        .collect();
    basis.sort();
    basis
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub m: u32,
    pub budget: DegreeBudget,
    pub precision: usize,
    /// Number of basis monomials.
    pub t: usize,
    /// Largest `N` whose first `N` coefficient conditions leave a kernel.
    pub n_star: usize,
    /// Order of the witness recomputed by evaluation.
    pub measured_ord: Order,
    /// `measured_ord / ((d0 + 1) (d + 1)^nu)`, `nu` the operational exponent.
    pub ratio: Rational,
    /// Same ratio with the printed exponent.
    pub ratio_printed: Rational,
    pub precision_limited: bool,
    pub witness: Polynomial,
}

/// Finds a polynomial within `budget` vanishing to maximal order at
/// `z = 0`, using the coefficients of `z^0 .. z^precision`.
pub fn max_vanishing_search(
    budget: DegreeBudget,
    config: SystemConfig,
    precision: usize,
) -> Result<ExperimentRow> {
    let m = config.m();
    let tuple = function_tuple(m, precision)?;
    let basis = monomial_basis(budget, config);
    let t = basis.len();
    let mut evaluator = Evaluator::new(&tuple);
    let columns = basis
        .iter()
        .map(|mono| evaluator.monomial(mono))
        .collect::<Result<Vec<_>>>()?;
    drop(evaluator);

    let mut echelon = IncrementalEchelon::new(t);
    let mut completed_at = None;
    let mut kernel = None;
    for n in 0..=precision {
        let row: Vec<Rational> = columns.iter().map(|s| s.coeff(n).clone()).collect();
        let Some(reduced) = echelon.reduce(&row) else {
            continue;
        };
        if echelon.rank() + 1 == t {
            kernel = echelon.kernel_vector();
            completed_at = Some(n);
            break;
        }
        echelon.push(reduced);
    }
    let (n_star, kernel, precision_limited) = match completed_at {
        Some(n) => (n, kernel.expect("rank T - 1 leaves a kernel"), false),
        None => (
            precision + 1,
            echelon
                .kernel_vector()
                .expect("rank below T leaves a kernel"),
            true,
        ),
    };
    let witness = Polynomial::from_terms(config, basis.into_iter().zip(kernel));
    let measured_ord = evaluate(&witness, &tuple)?.ord();
    let achieved = Rational::from_integer(BigInt::from(measured_ord.lower_bound()));
    let ratio = &achieved / Rational::from_integer(bound_shape(budget, operational_exponent(m)));
    let ratio_printed =
        &achieved / Rational::from_integer(bound_shape(budget, printed_exponent(m)));
    Ok(ExperimentRow {
        m,
        budget,
        precision,
        t,
        n_star,
        measured_ord,
        ratio,
        ratio_printed,
        precision_limited,
        witness,
    })
}

/// Default precision for a budget: three times the monomial count.
pub fn default_precision(budget: DegreeBudget, config: SystemConfig) -> usize {
    3 * monomial_count(budget, config)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub m: u32,
    pub rows: Vec<ExperimentRow>,
    /// Largest operational-exponent ratio; an empirical lower estimate of
    /// any admissible constant.
    pub max_ratio: Rational,
    pub max_ratio_printed: Rational,
    /// Indices of rows whose search ran out of precision.
    pub precision_limited: Vec<usize>,
}

/// Runs [`max_vanishing_search`] on every budget, in parallel. Rows come
/// back in budget order. `precision = None` uses [`default_precision`].
pub fn experiment_grid(
    m: u32,
    budgets: &[DegreeBudget],
    precision: Option<usize>,
) -> Result<GridReport> {
    let config = SystemConfig::new(m)?;
    let rows = budgets
        .par_iter()
        .map(|&b| {
            let p = precision.unwrap_or_else(|| default_precision(b, config));
            max_vanishing_search(b, config, p)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_of =
        |f: fn(&ExperimentRow) -> &Rational| rows.iter().map(f).max().cloned().unwrap_or_default();
    Ok(GridReport {
        m,
        max_ratio: max_of(|r| &r.ratio),
        max_ratio_printed: max_of(|r| &r.ratio_printed),
        precision_limited: rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.precision_limited)
            .map(|(i, _)| i)
            .collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::ring::parse;
    use std::collections::HashSet;

    fn cfg(m: u32) -> SystemConfig {
        SystemConfig::new(m).unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(operational_exponent(1), 4);
        assert_eq!(printed_exponent(1), 3);
        assert_eq!(operational_exponent(3), 7);
        assert_eq!(printed_exponent(3), 4);
        assert_eq!(cfg(5).nu(), operational_exponent(5));
    }

    #[test]
    fn k0_examples() {
        assert_eq!(compute_k0(1, 10).unwrap(), Order::Finite(2));
        assert_eq!(compute_k0(3, 10).unwrap(), Order::Finite(2));
        assert!(matches!(compute_k0(1, 1), Err(Error::Precision { .. })));
        assert!(compute_k0(2, 10).is_err());
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(DegreeBudget::new(1, 2), cfg(1)).len(), 30);
        assert_eq!(
            monomial_basis(DegreeBudget::new(0, 0), cfg(1)),
            vec![Monomial::one()]
        );
        assert_eq!(monomial_basis(DegreeBudget::new(0, 1), cfg(3)).len(), 8);
        for (d0, d, m) in [(2, 3, 1), (0, 2, 3), (1, 2, 5)] {
            let b = DegreeBudget::new(d0, d);
            let basis = monomial_basis(b, cfg(m));
            assert_eq!(basis.len(), monomial_count(b, cfg(m)));
            let distinct: HashSet<_> = basis.iter().collect();
            assert_eq!(distinct.len(), basis.len());
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
            for mono in &basis {
                let dz = mono.degree_in(crate::ring::Var::Z);
                assert!(dz <= d0 && mono.degree() - dz <= d);
            }
        }
    }

    #[test]
    fn search_examples() {
        let row = max_vanishing_search(DegreeBudget::new(0, 0), cfg(1), 5).unwrap();
        assert_eq!(
            (row.t, row.n_star, row.measured_ord),
            (1, 0, Order::Finite(0))
        );
        assert_eq!(row.witness, parse("1", cfg(1)).unwrap());
        assert_eq!(row.ratio, int(0));

        let row = max_vanishing_search(DegreeBudget::new(1, 0), cfg(1), 5).unwrap();
        assert_eq!(
            (row.t, row.n_star, row.measured_ord),
            (2, 1, Order::Finite(1))
        );
        assert_eq!(row.witness, parse("z", cfg(1)).unwrap());
        assert_eq!(row.ratio, ratio(1, 2));
        assert_eq!(row.ratio_printed, ratio(1, 2));
    }

    #[test]
    fn discriminant_is_found_in_weight_budget() {
        let row = max_vanishing_search(DegreeBudget::new(0, 1), cfg(1), 20).unwrap();
        assert_eq!(row.t, 5);
        assert_eq!(row.measured_ord, Order::Finite(row.n_star));
        assert!(row.n_star >= 4);
    }

    #[test]
    fn precision_limited_rows_are_flagged() {
        let row = max_vanishing_search(DegreeBudget::new(1, 2), cfg(1), 10).unwrap();
        assert!(row.precision_limited);
        assert_eq!(row.measured_ord, Order::AtLeast(11));
        assert_eq!(row.n_star, 11);
    }

    #[test]
    fn grid_is_deterministic_and_ordered() {
        let budgets = [
            DegreeBudget::new(1, 1),
            DegreeBudget::new(0, 0),
            DegreeBudget::new(1, 0),
        ];
        let a = experiment_grid(1, &budgets, None).unwrap();
        let b = experiment_grid(1, &budgets, None).unwrap();
        assert_eq!(a, b);
        let got: Vec<_> = a.rows.iter().map(|r| r.budget).collect();
        assert_eq!(got, budgets);
        assert!(a.precision_limited.is_empty());
        let zero = experiment_grid(1, &[DegreeBudget::new(0, 0)], None).unwrap();
        assert_eq!(zero.max_ratio, int(0));
        let one = experiment_grid(1, &[DegreeBudget::new(1, 0)], None).unwrap();
        assert_eq!(one.max_ratio, ratio(1, 2));
    }
}
