//! Principal `D`-stability: `Q` generates a `D`-stable ideal iff `Q | D(Q)`.

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::ring::{
    derive, discriminant, Extreme, Monomial, Polynomial, SystemConfig, Var, Weighting,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub stable: bool,
    /// `B` with `D(Q) = Q B`, present iff stable.
    pub cofactor: Option<Polynomial>,
}

/// Decides whether `D(q)` is divisible by `q`.
pub fn principal_stability(q: &Polynomial, config: SystemConfig) -> Result<StabilityVerdict> {
    if q.is_zero() {
        return Err(Error::Parameter("stability of the zero polynomial".into()));
    }
    let q = q.with_config(config)?;
    let image = derive(&q, config)?;
    let cofactor = image.exact_divide(&q)?;
    Ok(StabilityVerdict {
        stable: cofactor.is_some(),
        cofactor,
    })
}

/// Checks `D(Δ^a z^b) = (a X1 + b) Δ^a z^b` as a polynomial identity.
pub fn power_identity(a: u32, b: u32) -> bool {
    let config = SystemConfig::new(1).expect("m = 1");
    let q = &discriminant(config).pow(a)
        * &Polynomial::term(config, int(1), Monomial::power(Var::Z, b));
    let cofactor = Polynomial::from_terms(
        config,
        [
            (Monomial::var(Var::X1), int(i64::from(a))),
            (Monomial::one(), int(i64::from(b))),
        ],
    );
    derive(&q, config).expect("same ring") == &cofactor * &q
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofactorProfile {
    pub cofactor: Polynomial,
    /// `phi(B)`, or `None` when `B = 0`.
    pub phi_of_cofactor: Option<i64>,
    pub z_degree_of_cofactor: i64,
    /// `(a, b)` when `B = a X1 + b` with constants `a, b`.
    pub linear_form: Option<(Rational, Rational)>,
    /// `deg_z` of the minimal-`phi2` part of `Q`, reported with a linear
    /// cofactor.
    pub min_phi2_part_z_degree: Option<i64>,
}

/// Describes the cofactor of a stable `q`.
pub fn cofactor_profile(q: &Polynomial, config: SystemConfig) -> Result<CofactorProfile> {
    let verdict = principal_stability(q, config)?;
    let Some(cofactor) = verdict.cofactor else {
        return Err(Error::Precondition(format!(
            "{q} does not divide its image under D"
        )));
    };
    let x1 = Monomial::var(Var::X1);
    let one = Monomial::one();
    let linear_form = cofactor
        .terms()
        .all(|(m, _)| *m == x1 || *m == one)
        .then(|| (cofactor.coeff(&x1), cofactor.coeff(&one)));
    let min_phi2_part_z_degree = match linear_form {
        Some(_) => Some(q.weight_part(Extreme::Min, Weighting::Phi2)?.deg_x0()),
        None => None,
    };
    Ok(CofactorProfile {
        phi_of_cofactor: if cofactor.is_zero() {
            None
        } else {
            Some(cofactor.phi()?)
        },
        z_degree_of_cofactor: cofactor.deg_x0(),
        linear_form,
        min_phi2_part_z_degree,
        cofactor,
    })
}

/// Whether `q` is a constant multiple of `Δ^a z^b`; returns `(a, b)`.
pub fn as_discriminant_power(q: &Polynomial) -> Option<(u32, u32)> {
    let (lead, c) = q.leading_term()?;
    if c.is_zero() {
        return None;
    }
    // the leading monomial of Δ^a z^b is z^b X2^(3a)
    let b = lead.degree_in(Var::Z);
    let x2 = lead.degree_in(Var::X2);
    if lead.degree() != b + x2 || x2 % 3 != 0 {
        return None;
    }
    let a = x2 / 3;
    let config = q.config();
    let candidate = &discriminant(config).pow(a)
        * &Polynomial::term(config, int(1), Monomial::power(Var::Z, b));
    let (_, lead_c) = candidate.leading_term()?;
    (candidate.scale(&(c / lead_c)) == *q).then_some((a, b))
}
