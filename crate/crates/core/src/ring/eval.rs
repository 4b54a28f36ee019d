use std::collections::HashMap;

use super::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};
use crate::forms::FunctionTuple;
use crate::series::TruncatedSeries;

/// Evaluates monomials at a function tuple, memoizing every partial
/// product so that a monomial costs one series multiplication once its
/// prefix is known.
#[derive(Debug)]
pub struct Evaluator<'a> {
    tuple: &'a FunctionTuple,
    cache: HashMap<Monomial, TruncatedSeries>,
}

impl<'a> Evaluator<'a> {
    pub fn new(tuple: &'a FunctionTuple) -> Self {
        Self {
            tuple,
            cache: HashMap::new(),
        }
    }

    fn var_series(&self, v: Var) -> Result<&'a TruncatedSeries> {
        let t = self.tuple;
        match v {
            Var::Z => Ok(t.z()),
            Var::X1 => Ok(t.e2()),
            Var::X2 => Ok(t.e4()),
            Var::X3 => Ok(t.e6()),
            Var::Y(u, w) => t
                .g(u, w)
                .ok_or(Error::IndexOutOfRange { u, v: w, m: t.m() }),
        }
    }

    pub fn monomial(&mut self, m: &Monomial) -> Result<TruncatedSeries> {
        if let Some(s) = self.cache.get(m) {
            return Ok(s.clone());
        }
        let s = match m.exponents().last() {
            None => TruncatedSeries::one(self.tuple.precision()),
            Some(&(v, _)) => {
                let factor = self.var_series(v)?;
                let prefix = m.without_one(v).expect("last variable occurs");
                &self.monomial(&prefix)? * factor
            }
        };
        self.cache.insert(m.clone(), s.clone());
        Ok(s)
    }

    pub fn polynomial(&mut self, p: &Polynomial) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::zero(self.tuple.precision());
        for (m, c) in p.terms() {
            acc = &acc + &self.monomial(m)?.scale(c);
        }
        Ok(acc)
    }
}

/// `p(z, E2, E4, E6, g_{0,1}, ...)` as a truncated series at the tuple's
/// precision.
pub fn evaluate(p: &Polynomial, tuple: &FunctionTuple) -> Result<TruncatedSeries> {
    Evaluator::new(tuple).polynomial(p)
}
