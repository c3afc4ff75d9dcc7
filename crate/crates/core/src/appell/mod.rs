//! Appell's rank-4 functions: exact systems, conjugate forms and numeric checks.

mod quadrature;
mod series;

use std::collections::HashMap;
use std::sync::Arc;

use symexpr::{RatExpr, VarTable};

use crate::hyper2::InvariantPair;
use crate::presets::{e, t2, t4};
use crate::rank4::{fundamental_form, transport, ConjugateSystem, GeneralSystem, System, Target};
use crate::{coord_names, proportional, Error, Result};

pub use quadrature::{gauss_jacobi, gauss_jacobi_unit};
pub use series::{euler_transform_check, pde_residual, series_eval, AppellParams, EulerReport, SeriesValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gauss,
    F2,
    F3,
    F4,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "gauss" | "2f1" => Ok(Family::Gauss),
            "f2" => Ok(Family::F2),
            "f3" => Ok(Family::F3),
            "f4" => Ok(Family::F4),
            _ => Err(Error::Invalid(format!("unknown family '{}'", s))),
        }
    }
}

/// The Fuchsian system of F2 or F4 solved for `z_xx` and `z_yy`.
///
/// `vars` must have coordinates `(x, y)` in that role and carry the family's
/// parameter names.
pub fn system(family: Family, vars: &Arc<VarTable>) -> Result<GeneralSystem> {
    let (x, y) = coord_names(vars)?;
    let sub = |t: &str| -> RatExpr { e(&t.replace('X', &x).replace('Y', &y), vars) };
    let s = match family {
        Family::F2 => GeneralSystem {
            l: sub("Y/(1 - X)"),
            a: sub("-(gamma1 - (alpha + beta1 + 1)*X)/(X*(1 - X))"),
            b: sub("beta1*Y/(X*(1 - X))"),
            p: sub("alpha*beta1/(X*(1 - X))"),
            m: sub("X/(1 - Y)"),
            c: sub("beta2*X/(Y*(1 - Y))"),
            f: sub("-(gamma2 - (alpha + beta2 + 1)*Y)/(Y*(1 - Y))"),
            q: sub("alpha*beta2/(Y*(1 - Y))"),
        },
        Family::F4 => GeneralSystem {
            l: sub("-2*Y/(X + Y - 1)"),
            a: sub("-((alpha + beta + 1)*X + gamma1*(Y - 1))/(X*(X + Y - 1))"),
            b: sub("-Y*(alpha + beta - gamma2 + 1)/(X*(X + Y - 1))"),
            p: sub("-alpha*beta/(X*(X + Y - 1))"),
            m: sub("-2*X/(X + Y - 1)"),
            c: sub("-X*(alpha + beta - gamma1 + 1)/(Y*(X + Y - 1))"),
            f: sub("-((alpha + beta + 1)*Y + gamma2*(X - 1))/(Y*(X + Y - 1))"),
            q: sub("-alpha*beta/(Y*(X + Y - 1))"),
        },
        _ => return Err(Error::Invalid("only F2 and F4 have rank-4 systems here".into())),
    };
    Ok(s)
}

/// The system in conjugate coordinates `(s, t)` reached through the standard
/// map and gauge of the family.
pub fn conjugate_form(family: Family, xy: &Arc<VarTable>, st: &Arc<VarTable>) -> Result<ConjugateSystem> {
    let (map, gauge) = match family {
        Family::F2 => t2(st),
        Family::F4 => t4(st),
        _ => return Err(Error::Invalid("only F2 and F4 have conjugate forms here".into())),
    };
    let sys = System::General(system(family, xy)?);
    match transport(&sys, [&map[0], &map[1]], &gauge, Target::Conjugate)? {
        System::Conjugate(c) => Ok(c),
        _ => unreachable!("conjugate target"),
    }
}

/// Closed form of the F2 invariant sequence at index `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedInvariants {
    pub n: i64,
    pub pair: InvariantPair,
    /// Index of the same pair in the recursion started from the conjugate
    /// system's own invariants.
    pub recursion_index: i64,
}

pub fn f2_closed_invariants(st: &Arc<VarTable>, n: i64) -> Result<ClosedInvariants> {
    let (s, t) = coord_names(st)?;
    let d = format!("({} - {})^2", s, t);
    let h = e(&format!("({n} - 1 + beta2)*({n} + beta2 - gamma2)/{d}"), st);
    let k = e(&format!("({n} - 2 + beta2)*({n} - 1 + beta2 - gamma2)/{d}"), st);
    Ok(ClosedInvariants {
        n,
        pair: InvariantPair { h, k },
        recursion_index: n - 1,
    })
}

/// Pull a symmetric 2-form back along `(u, v) = (U(x, y), V(x, y))`.
pub fn pullback(h: &[RatExpr; 3], map: [&RatExpr; 2]) -> Result<[RatExpr; 3]> {
    let target = map[0].vars().clone();
    let (x, y) = coord_names(&target)?;
    let (u, v) = coord_names(h[0].vars())?;
    let images: HashMap<String, RatExpr> = [(u, map[0].clone()), (v, map[1].clone())].into();
    let h: Vec<RatExpr> = h.iter().map(|c| c.substitute(&images, &target)).collect::<std::result::Result<_, _>>()?;
    let (ux, uy) = (map[0].diff(&x)?, map[0].diff(&y)?);
    let (vx, vy) = (map[1].diff(&x)?, map[1].diff(&y)?);
    let form = |a1: &RatExpr, b1: &RatExpr, a2: &RatExpr, b2: &RatExpr| {
        &h[0] * a1 * a2 + &h[1] * &(a1 * b2 + a2 * b1) + &h[2] * b1 * b2
    };
    Ok([form(&ux, &vx, &ux, &vx), form(&ux, &vx, &uy, &vy), form(&uy, &vy, &uy, &vy)])
}

#[derive(Clone, Debug)]
pub struct ConformalReport {
    pub pullback: [RatExpr; 3],
    pub h2: [RatExpr; 3],
    /// `T*h4 = factor * h2` when proportional.
    pub factor: Option<RatExpr>,
    /// Index and ratio of the first component that breaks proportionality.
    pub witness: Option<(usize, RatExpr)>,
}

impl ConformalReport {
    pub fn pass(&self) -> bool {
        self.factor.is_some()
    }
}

fn conformal_report(pullback: [RatExpr; 3], h2: [RatExpr; 3]) -> ConformalReport {
    let factor = proportional(&pullback, &h2);
    let witness = if factor.is_some() {
        None
    } else {
        let piv = h2.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let r = &pullback[piv] / &h2[piv];
        (0..3)
            .find(|&i| pullback[i] != &r * &h2[i])
            .map(|i| (i, r.clone()))
    };
    ConformalReport { pullback, h2, factor, witness }
}

/// Compare `T*[h4]` with `[h2]`, both taken from the systems, for the map
/// `(u, v) = (x^k/(x + y - 2)^k, y^k/(x + y - 2)^k)`; `k = 2` is the
/// conformal equivalence.
pub fn conformal_equivalence_check_with(k: i32) -> Result<ConformalReport> {
    let uv = VarTable::new(&["u", "v"], &crate::presets::F4_PARAMS)?;
    let plain_uv = VarTable::new(&["u", "v"], &[] as &[&str])?;
    let xy = crate::presets::f2_xy();
    let h4 = fundamental_form(&System::General(system(Family::F4, &uv)?));
    let h4 = [h4[0].rebase(&plain_uv)?, h4[1].rebase(&plain_uv)?, h4[2].rebase(&plain_uv)?];
    let h2 = fundamental_form(&System::General(system(Family::F2, &xy)?));
    let map = [
        e(&format!("x^{k}/(x + y - 2)^{k}"), &xy),
        e(&format!("y^{k}/(x + y - 2)^{k}"), &xy),
    ];
    Ok(conformal_report(pullback(&h4, [&map[0], &map[1]])?, h2))
}

pub fn conformal_equivalence_check() -> Result<ConformalReport> {
    conformal_equivalence_check_with(2)
}

/// The same comparison against an explicitly given `h2` (for example a
/// printed one) over the `(x, y)` table of `h2`.
pub fn conformal_check_against(h2: [RatExpr; 3]) -> Result<ConformalReport> {
    let base = conformal_equivalence_check()?;
    let target = h2[0].vars().clone();
    let pb = base.pullback.map(|c| c.rebase(&target).unwrap());
    Ok(conformal_report(pb, h2))
}
