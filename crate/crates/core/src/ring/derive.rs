//! The derivation `D = D_0 + sum_{v odd <= m} D_v` on the ring.
//!
//! `D_0 = z d/dz + (X1^2 - X2)/12 d/dX1 + (X1 X2 - X3)/3 d/dX2
//!        + (X1 X3 - X2^2)/2 d/dX3`
//!
//! `D_v = sum_{k <= v-2} Y_{k+1,v} d/dY_{k,v}
//!        + B_{v+1}/(2v+2) (1 - Ê_{v+1}) d/dY_{v-1,v}`
//!
//! where `Ê_{v+1}` is the weight-`(v+1)` Eisenstein series in the
//! generators: `X1`, `X2`, `X3`, or `A_{(v+1)/2}(X2, X3)` for `v >= 7`.
//! Evaluated at the function tuple, `D` acts as `z d/dz`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use super::{Monomial, Polynomial, SystemConfig, Var};
use crate::arith::{ratio, Rational};
use crate::error::{Error, Result};
use crate::forms::{ak_polynomial, closing_scalar, weight_basis};

/// Selects a summand of `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivationPart {
    /// The whole derivation `D`.
    Full,
    /// `z d/dz` alone.
    Euler,
    /// `D_0` without `z d/dz`.
    Ramanujan,
    /// `D_v` for odd `v`.
    Block(u32),
}

/// `D` for one configuration, with the image of every variable precomputed.
#[derive(Debug, Clone)]
pub struct Derivation {
    config: SystemConfig,
    images: HashMap<Var, Polynomial>,
}

impl Derivation {
    pub fn new(config: SystemConfig) -> Result<Self> {
        let var = |v| Polynomial::var(config, v);
        let (z, x1, x2, x3) = (var(Var::Z)?, var(Var::X1)?, var(Var::X2)?, var(Var::X3)?);
        let mut images = HashMap::new();
        images.insert(Var::Z, z);
        images.insert(Var::X1, (&(&x1 * &x1) - &x2).scale(&ratio(1, 12)));
        images.insert(Var::X2, (&(&x1 * &x2) - &x3).scale(&ratio(1, 3)));
        images.insert(Var::X3, (&(&x1 * &x3) - &(&x2 * &x2)).scale(&ratio(1, 2)));
        for v in (1..=config.m()).step_by(2) {
            for k in 0..v - 1 {
                images.insert(Var::Y(k, v), var(Var::Y(k + 1, v))?);
            }
            let closing = &Polynomial::one(config) - &closing_eisenstein(config, v)?;
            images.insert(Var::Y(v - 1, v), closing.scale(&closing_scalar(v)));
        }
        Ok(Self { config, images })
    }

    pub fn config(&self) -> SystemConfig {
        self.config
    }

    /// `D(v)` for a single variable.
    pub fn image(&self, v: Var) -> Option<&Polynomial> {
        self.images.get(&v)
    }

    fn in_part(v: Var, part: DerivationPart) -> bool {
        match (part, v) {
            (DerivationPart::Full, _) => true,
            (DerivationPart::Euler, Var::Z) => true,
            (DerivationPart::Ramanujan, Var::X1 | Var::X2 | Var::X3) => true,
            (DerivationPart::Block(w), Var::Y(_, v)) => v == w,
            _ => false,
        }
    }

    /// Applies the selected summand of `D` termwise by the product rule.
    pub fn apply_part(&self, p: &Polynomial, part: DerivationPart) -> Result<Polynomial> {
        if p.config() != self.config {
            return Err(Error::Parameter(format!(
                "polynomial over m = {} given to D for m = {}",
                p.config().m(),
                self.config.m()
            )));
        }
        let mut out = Polynomial::zero(self.config);
        for (m, c) in p.terms() {
            for &(v, e) in m.exponents() {
                if !Self::in_part(v, part) {
                    continue;
                }
                let rest = m.without_one(v).expect("variable occurs");
                let coeff = c * Rational::from_integer(BigInt::from(e));
                let image = self.images.get(&v).expect("image of every variable");
                for (im, ic) in image.terms() {
                    out.add_term(rest.mul(im), &coeff * ic);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.apply_part(p, DerivationPart::Full)
    }
}

/// `Ê_{v+1}` as a polynomial in `X1, X2, X3`.
fn closing_eisenstein(config: SystemConfig, v: u32) -> Result<Polynomial> {
    let var = |w| Polynomial::var(config, w);
    match v {
        1 => var(Var::X1),
        3 => var(Var::X2),
        5 => var(Var::X3),
        _ => {
            let k = v.div_ceil(2);
            let ak = ak_polynomial(k, 2 * weight_basis(k).len() + 20)?;
            Ok(Polynomial::from_terms(
                config,
                ak.terms().iter().map(|(&(a, b), c)| {
                    (
                        Monomial::from_pairs([(Var::X2, a), (Var::X3, b)]),
                        c.clone(),
                    )
                }),
            ))
        }
    }
}

static CACHE: RwLock<BTreeMap<u32, Arc<Derivation>>> = RwLock::new(BTreeMap::new());

/// Shared, lazily built derivation for `config`.
pub fn derivation(config: SystemConfig) -> Result<Arc<Derivation>> {
    if let Some(d) = CACHE.read().expect("derivation cache").get(&config.m()) {
        return Ok(Arc::clone(d));
    }
    let d = Arc::new(Derivation::new(config)?);
    CACHE
        .write()
        .expect("derivation cache")
        .entry(config.m())
        .or_insert_with(|| Arc::clone(&d));
    Ok(d)
}

/// `D(p)` for `p` over `config`.
pub fn derive(p: &Polynomial, config: SystemConfig) -> Result<Polynomial> {
    derivation(config)?.apply(p)
}
