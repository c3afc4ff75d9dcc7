use std::array;

use symexpr::RatExpr;

use super::{ConjugateSystem, GeneralSystem, System};
use crate::{coord_names, Error, Result};

/// Components of a frame vector in the basis `(e0, e1, e2, e3)`.
pub type Row = [RatExpr; 4];
pub type Mat = [Row; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `(z, z_x, z_y, z_xy)`
    General,
    /// `(z, z_x, z_y, z_xx)`
    Conjugate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub dx: RatExpr,
    pub dy: RatExpr,
}

/// `de = omega e` with `omega = omega_x dx + omega_y dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForm {
    pub frame: Frame,
    pub omega_x: Mat,
    pub omega_y: Mat,
}

impl ConnectionForm {
    pub fn entry(&self, i: usize, j: usize) -> OneForm {
        OneForm {
            dx: self.omega_x[i][j].clone(),
            dy: self.omega_y[i][j].clone(),
        }
    }
}

pub(crate) fn unit(z: &RatExpr, i: usize) -> Row {
    array::from_fn(|j| if i == j { RatExpr::one(z.vars()) } else { z.clone() })
}

pub(crate) fn row(es: [&RatExpr; 4]) -> Row {
    es.map(|e| e.clone())
}

/// `sum_k c_k v_k`.
pub(crate) fn comb(terms: &[(&RatExpr, &Row)]) -> Row {
    let z = RatExpr::zero(terms[0].0.vars());
    array::from_fn(|i| {
        let mut acc = z.clone();
        for (c, v) in terms {
            if !c.is_zero() && !v[i].is_zero() {
                acc = &acc + &(*c * &v[i]);
            }
        }
        acc
    })
}

pub(crate) fn add(u: &Row, v: &Row) -> Row {
    array::from_fn(|i| &u[i] + &v[i])
}

/// `v * m` for a row vector `v`.
pub(crate) fn vec_mat(v: &Row, m: &Mat) -> Row {
    let refs: Vec<(&RatExpr, &Row)> = v.iter().zip(m.iter()).collect();
    comb(&refs)
}

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    array::from_fn(|i| vec_mat(&a[i], b))
}

fn general_form(s: &GeneralSystem) -> Result<ConnectionForm> {
    s.check()?;
    let (x, y) = coord_names(s.vars())?;
    let z = RatExpr::zero(s.vars());
    let one = RatExpr::one(s.vars());
    let e: [Row; 4] = array::from_fn(|i| unit(&z, i));
    let d = &one - &(&s.l * &s.m);
    if d.is_zero() {
        return Err(Error::FrameClosure("1 - l m vanishes identically".into()));
    }
    let zxx = row([&s.p, &s.a, &s.b, &s.l]);
    let zyy = row([&s.q, &s.c, &s.f, &s.m]);
    let dy = |f: &RatExpr| f.diff(&y).unwrap();
    let dx = |f: &RatExpr| f.diff(&x).unwrap();
    // (z_xx)_y = r1 + l z_xyy and (z_yy)_x = r2 + m z_xxy.
    let r1 = comb(&[
        (&(dy(&s.l) + &s.a), &e[3]),
        (&dy(&s.a), &e[1]),
        (&(dy(&s.b) + &s.p), &e[2]),
        (&s.b, &zyy),
        (&dy(&s.p), &e[0]),
    ]);
    let r2 = comb(&[
        (&(dx(&s.m) + &s.f), &e[3]),
        (&(dx(&s.c) + &s.q), &e[1]),
        (&s.c, &zxx),
        (&dx(&s.f), &e[2]),
        (&dx(&s.q), &e[0]),
    ]);
    let inv = d.inv()?;
    let zxxy = comb(&[(&inv, &r1), (&(&s.l * &inv), &r2)]);
    let zxyy = comb(&[(&inv, &r2), (&(&s.m * &inv), &r1)]);
    Ok(ConnectionForm {
        frame: Frame::General,
        omega_x: [e[1].clone(), zxx, e[3].clone(), zxxy],
        omega_y: [e[2].clone(), e[3].clone(), zyy, zxyy],
    })
}

fn conjugate_form(s: &ConjugateSystem) -> Result<ConnectionForm> {
    s.check()?;
    let (x, y) = coord_names(s.vars())?;
    let z = RatExpr::zero(s.vars());
    let e: [Row; 4] = array::from_fn(|i| unit(&z, i));
    let dy = |f: &RatExpr| f.diff(&y).unwrap();
    let dx = |f: &RatExpr| f.diff(&x).unwrap();
    let neg = |f: &RatExpr| -f;
    let zxy = row([&neg(&s.c), &neg(&s.a), &neg(&s.b), &z]);
    let zyy = row([&neg(&s.r), &neg(&s.m), &neg(&s.n), &neg(&s.q)]);
    // x-derivative of the hyperbolic row, solved for z_xxy.
    let zxxy = row([
        &(&s.b * &s.c - dx(&s.c)),
        &(&s.a * &s.b - dx(&s.a) - &s.c),
        &(&s.b * &s.b - dx(&s.b)),
        &neg(&s.a),
    ]);
    // (z_xy)_y = (z_yy)_x, solved for z_xxx.
    let xyy = comb(&[
        (&neg(&dy(&s.a)), &e[1]),
        (&neg(&s.a), &zxy),
        (&neg(&dy(&s.b)), &e[2]),
        (&neg(&s.b), &zyy),
        (&neg(&dy(&s.c)), &e[0]),
        (&neg(&s.c), &e[2]),
    ]);
    let rest = comb(&[
        (&neg(&(dx(&s.q) + &s.m)), &e[3]),
        (&neg(&(dx(&s.m) + &s.r)), &e[1]),
        (&neg(&dx(&s.n)), &e[2]),
        (&neg(&s.n), &zxy),
        (&neg(&dx(&s.r)), &e[0]),
    ]);
    let inv = s.q.inv()?;
    let zxxx = comb(&[(&inv, &rest), (&neg(&inv), &xyy)]);
    Ok(ConnectionForm {
        frame: Frame::Conjugate,
        omega_x: [e[1].clone(), e[3].clone(), zxy.clone(), zxxx],
        omega_y: [e[2].clone(), zxy, zyy, zxxy],
    })
}

pub fn connection_form(sys: &System) -> Result<ConnectionForm> {
    match sys {
        System::General(s) => general_form(s),
        System::Asymptotic(s) => general_form(&s.to_general()),
        System::Conjugate(s) => conjugate_form(s),
    }
}

/// The `dx ^ dy` coefficient of `d omega - omega ^ omega`.
pub fn maurer_cartan_residual(w: &ConnectionForm) -> Result<Mat> {
    let vars = w.omega_x[0][0].vars();
    let (x, y) = coord_names(vars)?;
    let xy = mat_mul(&w.omega_x, &w.omega_y);
    let yx = mat_mul(&w.omega_y, &w.omega_x);
    Ok(array::from_fn(|i| {
        array::from_fn(|j| {
            w.omega_y[i][j].diff(&x).unwrap() - w.omega_x[i][j].diff(&y).unwrap() + &yx[i][j] - &xy[i][j]
        })
    }))
}

pub fn is_zero_matrix(m: &Mat) -> bool {
    m.iter().flatten().all(|e| e.is_zero())
}
