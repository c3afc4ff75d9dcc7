//! Plane hyperbolic equations `z_xy + a z_x + b z_y + c z = 0`.

use std::collections::HashMap;
use std::sync::Arc;

use symexpr::{PowerProduct, RatExpr, VarTable};

use crate::{coord_names, log_dd, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicEq {
    pub a: RatExpr,
    pub b: RatExpr,
    pub c: RatExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPair {
    pub h: RatExpr,
    pub k: RatExpr,
}

impl HyperbolicEq {
    pub fn new(a: RatExpr, b: RatExpr, c: RatExpr) -> Result<HyperbolicEq> {
        coord_names(a.vars())?;
        if a.vars() != b.vars() || a.vars() != c.vars() {
            return Err(symexpr::Error::VarMismatch.into());
        }
        Ok(HyperbolicEq { a, b, c })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.a.vars()
    }

    fn xy(&self) -> (String, String) {
        coord_names(self.vars()).expect("checked on construction")
    }
}

/// `h = ab + a_x - c`, `k = ab + b_y - c`.
pub fn laplace_invariants(eq: &HyperbolicEq) -> InvariantPair {
    let (x, y) = eq.xy();
    let ab_c = &eq.a * &eq.b - &eq.c;
    InvariantPair {
        h: &ab_c + &eq.a.diff(&x).unwrap(),
        k: &ab_c + &eq.b.diff(&y).unwrap(),
    }
}

/// The equation satisfied by `z/f` when `z` solves `eq`.
pub fn gauge_transform(eq: &HyperbolicEq, f: &PowerProduct) -> Result<HyperbolicEq> {
    let (x, y) = eq.xy();
    let lx = f.log_derivative(&x)?;
    let ly = f.log_derivative(&y)?;
    let fxy = f.second_over_self(&x, &y)?;
    HyperbolicEq::new(
        &eq.a + &ly,
        &eq.b + &lx,
        &eq.c + &(&eq.a * &lx) + &eq.b * &ly + fxy,
    )
}

/// Separable change of coordinates `u = u(x)`, `v = v(y)`.
///
/// `x_of_u` and `y_of_v` are the inverse maps over the target table; they are
/// checked against the forward maps before use.
pub fn coordinate_change(
    eq: &HyperbolicEq,
    u_of_x: &RatExpr,
    v_of_y: &RatExpr,
    x_of_u: &RatExpr,
    y_of_v: &RatExpr,
) -> Result<HyperbolicEq> {
    let (x, y) = eq.xy();
    let target = x_of_u.vars().clone();
    let (u, v) = coord_names(&target)?;
    if u_of_x.depends_on(&y) || v_of_y.depends_on(&x) {
        return Err(Error::NotInvertible("map is not separable".into()));
    }
    if x_of_u.depends_on(&v) || y_of_v.depends_on(&u) {
        return Err(Error::NotInvertible("inverse is not separable".into()));
    }
    let back: HashMap<String, RatExpr> =
        [(x.clone(), x_of_u.clone()), (y.clone(), y_of_v.clone())].into();
    if u_of_x.substitute(&back, &target)? != RatExpr::var(&target, &u)?
        || v_of_y.substitute(&back, &target)? != RatExpr::var(&target, &v)?
    {
        return Err(Error::NotInvertible("supplied inverse does not invert the map".into()));
    }
    let du = u_of_x.diff(&x)?;
    let dv = v_of_y.diff(&y)?;
    if du.is_zero() || dv.is_zero() {
        return Err(Error::NotInvertible("zero derivative".into()));
    }
    let a = (&eq.a / &dv).substitute(&back, &target)?;
    let b = (&eq.b / &du).substitute(&back, &target)?;
    let c = (&eq.c / &(&du * &dv)).substitute(&back, &target)?;
    HyperbolicEq::new(a, b, c)
}

/// Laplace invariants `(n, h_n, k_n)` for `n` in `n_min..=n_max`.
///
/// Index 0 carries the invariants of `eq`; positive indices follow the
/// positive transform, negative ones the negative transform.
pub fn higher_invariants(eq: &HyperbolicEq, n_min: i64, n_max: i64) -> Result<Vec<(i64, InvariantPair)>> {
    if n_min > n_max {
        return Ok(Vec::new());
    }
    let (x, y) = eq.xy();
    let base = laplace_invariants(eq);
    let mut fwd = vec![(0i64, base.clone())];
    let mut cur = base.clone();
    for n in 0..n_max.max(0) {
        if cur.h.is_zero() {
            return Err(Error::Degenerate(n));
        }
        let h = &(&cur.h * &RatExpr::int(cur.h.vars(), 2)) - &cur.k - log_dd(&cur.h, &x, &y)?;
        cur = InvariantPair { h, k: cur.h };
        fwd.push((n + 1, cur.clone()));
    }
    let mut bwd = Vec::new();
    let mut cur = base;
    for n in (n_min.min(0)..0).rev() {
        if cur.k.is_zero() {
            return Err(Error::Degenerate(n + 1));
        }
        let k = &(&cur.k * &RatExpr::int(cur.k.vars(), 2)) - &cur.h - log_dd(&cur.k, &x, &y)?;
        cur = InvariantPair { h: cur.k, k };
        bwd.push((n, cur.clone()));
    }
    bwd.reverse();
    bwd.extend(fwd);
    Ok(bwd.into_iter().filter(|(n, _)| (n_min..=n_max).contains(n)).collect())
}

#[derive(Clone, Debug)]
pub enum Standard {
    /// Euler-Poisson-Darboux: `z_xy - (b' z_x + b z_y)/(x - y) = 0`.
    Epd { beta: RatExpr, beta_prime: RatExpr },
    /// `z_xy + (a(a-1)/(x-y)^2 - b(b-1)/(x+y)^2) z = 0`.
    Harmonic { alpha: RatExpr, beta: RatExpr },
}

pub fn standard_equation(kind: &Standard, vars: &Arc<VarTable>) -> Result<HyperbolicEq> {
    let (x, y) = coord_names(vars)?;
    let (x, y) = (RatExpr::var(vars, &x)?, RatExpr::var(vars, &y)?);
    let one = RatExpr::one(vars);
    let zero = RatExpr::zero(vars);
    match kind {
        Standard::Epd { beta, beta_prime } => {
            let d = &x - &y;
            HyperbolicEq::new(-(beta_prime / &d), -(beta / &d), zero)
        }
        Standard::Harmonic { alpha, beta } => {
            let c = alpha * &(alpha - &one) / (&x - &y).pow(2)? - beta * &(beta - &one) / (&x + &y).pow(2)?;
            HyperbolicEq::new(zero.clone(), zero, c)
        }
    }
}
