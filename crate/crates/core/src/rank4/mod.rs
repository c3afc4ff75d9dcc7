//! Rank-4 linear systems in the plane and their moving frames.
//!
//! Three normal forms are used:
//!
//! * general: `z_xx = l z_xy + a z_x + b z_y + p z`, `z_yy = m z_xy + c z_x + f z_y + q z`;
//! * asymptotic (canonical): `z_xx = b z_y + p z`, `z_yy = c z_x + q z`;
//! * conjugate: `z_xy + a z_x + b z_y + c z = 0`, `z_yy + q z_xx + m z_x + n z_y + r z = 0`.

mod connection;
mod transport;

use std::fmt;
use std::sync::Arc;

use symexpr::{RatExpr, VarTable};

use crate::hyper2::HyperbolicEq;
use crate::{coord_names, Error, Result};

pub use connection::{connection_form, is_zero_matrix, maurer_cartan_residual, ConnectionForm, Frame, Mat, OneForm, Row};
pub(crate) use connection::{add, comb, unit};
pub use transport::{transport, Target};
pub(crate) use transport::{normal_form, Jet};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralSystem {
    pub l: RatExpr,
    pub a: RatExpr,
    pub b: RatExpr,
    pub p: RatExpr,
    pub m: RatExpr,
    pub c: RatExpr,
    pub f: RatExpr,
    pub q: RatExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticSystem {
    pub b: RatExpr,
    pub c: RatExpr,
    pub p: RatExpr,
    pub q: RatExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateSystem {
    pub a: RatExpr,
    pub b: RatExpr,
    pub c: RatExpr,
    pub q: RatExpr,
    pub m: RatExpr,
    pub n: RatExpr,
    pub r: RatExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum System {
    General(GeneralSystem),
    Asymptotic(AsymptoticSystem),
    Conjugate(ConjugateSystem),
}

fn check_table(es: &[&RatExpr]) -> Result<()> {
    coord_names(es[0].vars())?;
    if es.iter().any(|e| e.vars() != es[0].vars()) {
        return Err(symexpr::Error::VarMismatch.into());
    }
    Ok(())
}

impl GeneralSystem {
    pub fn vars(&self) -> &Arc<VarTable> {
        self.l.vars()
    }

    pub fn fields(&self) -> [(&'static str, &RatExpr); 8] {
        [
            ("l", &self.l),
            ("a", &self.a),
            ("b", &self.b),
            ("p", &self.p),
            ("m", &self.m),
            ("c", &self.c),
            ("f", &self.f),
            ("q", &self.q),
        ]
    }

    pub fn check(&self) -> Result<()> {
        check_table(&self.fields().map(|f| f.1))
    }

    /// `z_xx = 0`, `z_yy = 0`.
    pub fn quadric(vars: &Arc<VarTable>) -> GeneralSystem {
        let z = RatExpr::zero(vars);
        GeneralSystem {
            l: z.clone(),
            a: z.clone(),
            b: z.clone(),
            p: z.clone(),
            m: z.clone(),
            c: z.clone(),
            f: z.clone(),
            q: z,
        }
    }
}

impl AsymptoticSystem {
    pub fn vars(&self) -> &Arc<VarTable> {
        self.b.vars()
    }

    pub fn fields(&self) -> [(&'static str, &RatExpr); 4] {
        [("b", &self.b), ("c", &self.c), ("p", &self.p), ("q", &self.q)]
    }

    pub fn to_general(&self) -> GeneralSystem {
        let z = RatExpr::zero(self.vars());
        GeneralSystem {
            l: z.clone(),
            a: z.clone(),
            b: self.b.clone(),
            p: self.p.clone(),
            m: z.clone(),
            c: self.c.clone(),
            f: z,
            q: self.q.clone(),
        }
    }
}

impl ConjugateSystem {
    pub fn vars(&self) -> &Arc<VarTable> {
        self.a.vars()
    }

    pub fn fields(&self) -> [(&'static str, &RatExpr); 7] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("q", &self.q),
            ("m", &self.m),
            ("n", &self.n),
            ("r", &self.r),
        ]
    }

    pub fn check(&self) -> Result<()> {
        check_table(&self.fields().map(|f| f.1))?;
        if self.q.is_zero() {
            return Err(Error::FrameClosure("q vanishes identically".into()));
        }
        Ok(())
    }

    /// The hyperbolic row `z_xy + a z_x + b z_y + c z = 0`.
    pub fn hyperbolic(&self) -> HyperbolicEq {
        HyperbolicEq::new(self.a.clone(), self.b.clone(), self.c.clone()).expect("two coordinates")
    }

    pub fn map(&self, f: impl Fn(&RatExpr) -> Result<RatExpr>) -> Result<ConjugateSystem> {
        Ok(ConjugateSystem {
            a: f(&self.a)?,
            b: f(&self.b)?,
            c: f(&self.c)?,
            q: f(&self.q)?,
            m: f(&self.m)?,
            n: f(&self.n)?,
            r: f(&self.r)?,
        })
    }
}

impl System {
    pub fn vars(&self) -> &Arc<VarTable> {
        match self {
            System::General(s) => s.vars(),
            System::Asymptotic(s) => s.vars(),
            System::Conjugate(s) => s.vars(),
        }
    }

    pub fn fields(&self) -> Vec<(&'static str, &RatExpr)> {
        match self {
            System::General(s) => s.fields().to_vec(),
            System::Asymptotic(s) => s.fields().to_vec(),
            System::Conjugate(s) => s.fields().to_vec(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            System::General(_) => "general",
            System::Asymptotic(_) => "asymptotic",
            System::Conjugate(_) => "conjugate",
        }
    }

    pub fn as_conjugate(&self) -> Option<&ConjugateSystem> {
        match self {
            System::Conjugate(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_general(&self) -> Option<&GeneralSystem> {
        match self {
            System::General(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in self.fields() {
            writeln!(f, "{} = {}", name, e)?;
        }
        Ok(())
    }
}

/// Components `(h_xx, h_xy, h_yy)` of the projective second fundamental form.
pub fn fundamental_form(sys: &System) -> [RatExpr; 3] {
    let one = RatExpr::one(sys.vars());
    match sys {
        System::General(s) => [s.l.clone(), one, s.m.clone()],
        System::Asymptotic(s) => {
            let z = RatExpr::zero(s.vars());
            [z.clone(), one, z]
        }
        System::Conjugate(s) => [one, RatExpr::zero(s.vars()), -&s.q],
    }
}

/// Cubic form data of a conjugate system.
///
/// The Fubini scalar is `fubini_rat * q^(fubini_q_half_power / 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicData {
    pub a: RatExpr,
    pub b: RatExpr,
    pub phi111: RatExpr,
    pub phi112: RatExpr,
    pub phi122: RatExpr,
    pub phi222: RatExpr,
    pub fubini_rat: RatExpr,
    pub fubini_q_half_power: i32,
}

pub fn cubic_invariants(sys: &ConjugateSystem) -> Result<CubicData> {
    sys.check()?;
    let (x, y) = coord_names(sys.vars())?;
    let v = sys.vars();
    let k = |n: i64| RatExpr::int(v, n);
    let a = sys.q.diff(&x)? + &k(4) * &sys.b * &sys.q - &k(2) * &sys.m;
    let b = -sys.q.diff(&y)? + (&k(4) * &sys.a - &k(2) * &sys.n) * &sys.q;
    let fubini_rat = RatExpr::rational(v, 8, 5) * (&sys.q * &a * &a - &b * &b);
    Ok(CubicData {
        phi111: -&a,
        phi112: b.clone(),
        phi122: -(&sys.q * &a),
        phi222: &sys.q * &b,
        a,
        b,
        fubini_rat,
        fubini_q_half_power: 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Quadric,
    Ruled,
    General,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Quadric => "quadric",
            Class::Ruled => "ruled",
            Class::General => "general",
        })
    }
}

pub fn classify(sys: &System) -> Result<Class> {
    match sys {
        System::Conjugate(s) => {
            let cd = cubic_invariants(s)?;
            Ok(if cd.a.is_zero() && cd.b.is_zero() {
                Class::Quadric
            } else if cd.fubini_rat.is_zero() {
                Class::Ruled
            } else {
                Class::General
            })
        }
        System::Asymptotic(s) => {
            let inv = asymptotic_invariants(s);
            Ok(if inv.phi_xxx.is_zero() && inv.phi_yyy.is_zero() {
                Class::Quadric
            } else if inv.metric.is_zero() {
                Class::Ruled
            } else {
                Class::General
            })
        }
        System::General(_) => Err(Error::Invalid(
            "classification needs a conjugate or asymptotic system".into(),
        )),
    }
}

/// Cubic form `phi_xxx dx^3 + phi_yyy dy^3` and projective metric
/// `metric (dx dy + dy dx)` of a canonical system.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticInvariants {
    pub phi_xxx: RatExpr,
    pub phi_yyy: RatExpr,
    pub metric: RatExpr,
}

pub fn asymptotic_invariants(sys: &AsymptoticSystem) -> AsymptoticInvariants {
    let v = sys.vars();
    AsymptoticInvariants {
        phi_xxx: RatExpr::int(v, -2) * &sys.b,
        phi_yyy: RatExpr::int(v, -2) * &sys.c,
        metric: RatExpr::int(v, 8) * &sys.b * &sys.c,
    }
}
