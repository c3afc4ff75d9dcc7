use std::array;
use std::cell::RefCell;
use std::collections::HashMap;

use symexpr::{linalg, PowerProduct, RatExpr};

use super::connection::{add, comb, connection_form, unit, Mat, Row};
use super::{ConjugateSystem, GeneralSystem, System};
use crate::{coord_names, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    General,
    Conjugate,
}

/// A new unknown and its derivatives through second order, as frame vectors.
pub(crate) struct Jet {
    pub w: Row,
    pub w1: Row,
    pub w2: Row,
    pub w11: Row,
    pub w12: Row,
    pub w22: Row,
}

/// Read off the normal form satisfied by the unknown of `jet`.
pub(crate) fn normal_form(jet: &Jet, target: Target) -> Result<System> {
    let (basis, names) = match target {
        Target::Conjugate => ([&jet.w, &jet.w1, &jet.w2, &jet.w11], "(w, w_1, w_2, w_11)"),
        Target::General => ([&jet.w, &jet.w1, &jet.w2, &jet.w12], "(w, w_1, w_2, w_12)"),
    };
    let m: Vec<Vec<RatExpr>> = (0..4).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    let rhs = match target {
        Target::Conjugate => vec![jet.w12.to_vec(), jet.w22.to_vec()],
        Target::General => vec![jet.w11.to_vec(), jet.w22.to_vec()],
    };
    let sol = linalg::solve(&m, &rhs).map_err(|_| Error::Unsolvable(format!("basis {} is degenerate", names)))?;
    let (u, v) = (&sol[0], &sol[1]);
    Ok(match target {
        Target::Conjugate => {
            if !u[3].is_zero() {
                return Err(Error::Unsolvable(format!(
                    "w_12 has a w_11 component {}; coordinates are not conjugate",
                    u[3]
                )));
            }
            System::Conjugate(ConjugateSystem {
                a: -&u[1],
                b: -&u[2],
                c: -&u[0],
                q: -&v[3],
                m: -&v[1],
                n: -&v[2],
                r: -&v[0],
            })
        }
        Target::General => System::General(GeneralSystem {
            l: u[3].clone(),
            a: u[1].clone(),
            b: u[2].clone(),
            p: u[0].clone(),
            m: v[3].clone(),
            c: v[1].clone(),
            f: v[2].clone(),
            q: v[0].clone(),
        }),
    })
}

/// Connection matrices pulled back along the map, row by row on demand.
struct Pulled<'a> {
    src: [&'a Mat; 2],
    map: &'a HashMap<String, RatExpr>,
    target: &'a std::sync::Arc<symexpr::VarTable>,
    rows: RefCell<[[Option<Row>; 4]; 2]>,
}

impl Pulled<'_> {
    fn row(&self, which: usize, i: usize) -> Result<Row> {
        if let Some(r) = &self.rows.borrow()[which][i] {
            return Ok(r.clone());
        }
        let src = &self.src[which][i];
        let mut out: Vec<RatExpr> = Vec::with_capacity(4);
        for e in src {
            out.push(e.substitute(self.map, self.target)?);
        }
        let r: Row = out.try_into().expect("four entries");
        self.rows.borrow_mut()[which][i] = Some(r.clone());
        Ok(r)
    }
}

/// Unique system satisfied by `w = z(X, Y) / gauge` when `z` solves `sys`.
///
/// `map` holds `X(s, t)` and `Y(s, t)` over the target table, which must also
/// carry every parameter of the source table.
pub fn transport(sys: &System, map: [&RatExpr; 2], gauge: &PowerProduct, target: Target) -> Result<System> {
    let (x, y) = coord_names(sys.vars())?;
    let tv = map[0].vars().clone();
    let (s, t) = coord_names(&tv)?;
    if map[1].vars() != &tv || gauge.vars() != &tv {
        return Err(symexpr::Error::VarMismatch.into());
    }
    let omega = connection_form(sys)?;
    let xs = map[0].diff(&s)?;
    let xt = map[0].diff(&t)?;
    let ys = map[1].diff(&s)?;
    let yt = map[1].diff(&t)?;
    if (&xs * &yt - &xt * &ys).is_zero() {
        return Err(Error::SingularJacobian);
    }
    let images: HashMap<String, RatExpr> = [(x, map[0].clone()), (y, map[1].clone())].into();
    let pulled = Pulled {
        src: [&omega.omega_x, &omega.omega_y],
        map: &images,
        target: &tv,
        rows: RefCell::new(Default::default()),
    };
    // D_s v = v_s + v (X_s Omega_x + Y_s Omega_y) at (X, Y).
    let deriv = |v: &Row, var: &str, jx: &RatExpr, jy: &RatExpr| -> Result<Row> {
        let mut out: Row = array::from_fn(|i| v[i].diff(var).unwrap());
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rx = pulled.row(0, i)?;
            let ry = pulled.row(1, i)?;
            let cx = c * jx;
            let cy = c * jy;
            out = add(&out, &comb(&[(&cx, &rx), (&cy, &ry)]));
        }
        Ok(out)
    };
    let ds = |v: &Row| deriv(v, &s, &xs, &ys);
    let dt = |v: &Row| deriv(v, &t, &xt, &yt);
    let z: Row = unit(&RatExpr::zero(&tv), 0);
    let zs = ds(&z)?;
    let zt = dt(&z)?;
    let zss = ds(&zs)?;
    let zst = dt(&zs)?;
    let ztt = dt(&zt)?;
    let lam = gauge.log_derivative(&s)?;
    let mu = gauge.log_derivative(&t)?;
    let one = RatExpr::one(&tv);
    let two = RatExpr::int(&tv, 2);
    let jet = Jet {
        w1: comb(&[(&one, &zs), (&-&lam, &z)]),
        w2: comb(&[(&one, &zt), (&-&mu, &z)]),
        w11: comb(&[
            (&one, &zss),
            (&-(&two * &lam), &zs),
            (&(&lam * &lam - lam.diff(&s)?), &z),
        ]),
        w12: comb(&[
            (&one, &zst),
            (&-&lam, &zt),
            (&-&mu, &zs),
            (&(&lam * &mu - lam.diff(&t)?), &z),
        ]),
        w22: comb(&[
            (&one, &ztt),
            (&-(&two * &mu), &zt),
            (&(&mu * &mu - mu.diff(&t)?), &z),
        ]),
        w: z,
    };
    normal_form(&jet, target)
}
