use std::sync::Arc;

use crate::ratexpr::{same_table, RatExpr};
use crate::vars::VarTable;
use crate::Error;

/// Formal product `prod g_i^{e_i}` with rational bases and parameter-only
/// exponents. Only logarithmic derivatives are ever evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerProduct {
    vars: Arc<VarTable>,
    factors: Vec<(RatExpr, RatExpr)>,
}

impl PowerProduct {
    pub fn one(vars: &Arc<VarTable>) -> PowerProduct {
        PowerProduct {
            vars: vars.clone(),
            factors: Vec::new(),
        }
    }

    pub fn new(vars: &Arc<VarTable>, factors: Vec<(RatExpr, RatExpr)>) -> Result<PowerProduct, Error> {
        let mut p = PowerProduct::one(vars);
        for (b, e) in factors {
            p = p.times(b, e)?;
        }
        Ok(p)
    }

    /// Append the factor `base^exp`.
    pub fn times(mut self, base: RatExpr, exp: RatExpr) -> Result<PowerProduct, Error> {
        if !same_table(base.vars(), &self.vars) || !same_table(exp.vars(), &self.vars) {
            return Err(Error::VarMismatch);
        }
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !exp.is_coordinate_free() {
            return Err(Error::CoordinateExponent);
        }
        self.factors.push((base, exp));
        Ok(self)
    }

    pub fn concat(&self, o: &PowerProduct) -> Result<PowerProduct, Error> {
        if !same_table(&self.vars, &o.vars) {
            return Err(Error::VarMismatch);
        }
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        Ok(PowerProduct {
            vars: self.vars.clone(),
            factors: f,
        })
    }

    /// The reciprocal product (exponents negated).
    pub fn recip(&self) -> PowerProduct {
        PowerProduct {
            vars: self.vars.clone(),
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    pub fn factors(&self) -> &[(RatExpr, RatExpr)] {
        &self.factors
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|(b, e)| b.is_one() || e.is_zero())
    }

    /// `(log f)_v = sum e_i (g_i)_v / g_i`.
    pub fn log_derivative(&self, v: &str) -> Result<RatExpr, Error> {
        let i = self.vars.coord_index(v)?;
        let mut acc = RatExpr::zero(&self.vars);
        for (b, e) in &self.factors {
            if e.is_zero() {
                continue;
            }
            let d = b.diff_index(i);
            if d.is_zero() {
                continue;
            }
            acc = &acc + &(e * &(&d / b));
        }
        Ok(acc)
    }

    /// `f_{uv} / f = (log f)_{uv} + (log f)_u (log f)_v`.
    pub fn second_over_self(&self, u: &str, v: &str) -> Result<RatExpr, Error> {
        let lu = self.log_derivative(u)?;
        let lv = self.log_derivative(v)?;
        let luv = lu.diff(v)?;
        Ok(&luv + &(&lu * &lv))
    }

    /// Numeric value at a point where every base is positive.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| b.eval_f64(point).powf(e.eval_f64(point)))
            .product()
    }
}
