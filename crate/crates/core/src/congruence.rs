//! Laplace transforms of conjugate rank-4 systems and the line congruences
//! they span.

use std::fmt;
use std::str::FromStr;

use symexpr::{linalg, RatExpr};

use crate::rank4::{add, comb, connection_form, normal_form, unit, ConjugateSystem, Jet, Row, System, Target};
use crate::{coord_names, proportional, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "pos" | "positive" => Ok(Sign::Plus),
            "-" | "minus" | "neg" | "negative" => Ok(Sign::Minus),
            _ => Err(Error::Invalid(format!("unknown sign '{}'", s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformReport {
    pub input: ConjugateSystem,
    pub output: ConjugateSystem,
    pub sign: Sign,
    /// `h` for the positive transform, `k` for the negative one.
    pub invariant_used: RatExpr,
}

struct Coeffs<'a> {
    x: String,
    y: String,
    s: &'a ConjugateSystem,
}

impl<'a> Coeffs<'a> {
    fn new(s: &'a ConjugateSystem) -> Result<Coeffs<'a>> {
        s.check()?;
        let (x, y) = coord_names(s.vars())?;
        Ok(Coeffs { x, y, s })
    }

    /// Derivative of `e` along the coordinate letters of `path` ('x' or 'y').
    fn d(&self, e: &RatExpr, path: &str) -> RatExpr {
        let mut out = e.clone();
        for ch in path.chars() {
            let v = if ch == 'x' { &self.x } else { &self.y };
            out = out.diff(v).expect("coordinate");
        }
        out
    }

    fn k(&self, n: i64) -> RatExpr {
        RatExpr::int(self.s.vars(), n)
    }

    fn h(&self) -> RatExpr {
        let s = self.s;
        &s.a * &s.b + self.d(&s.a, "x") - &s.c
    }

    fn kk(&self) -> RatExpr {
        let s = self.s;
        &s.a * &s.b + self.d(&s.b, "y") - &s.c
    }
}

/// Laplace invariants `(h, k)` of the hyperbolic row.
pub fn invariants(sys: &ConjugateSystem) -> Result<(RatExpr, RatExpr)> {
    let c = Coeffs::new(sys)?;
    Ok((c.h(), c.kk()))
}

/// Transform by elimination: differentiate the new unknown in the frame of
/// `sys` and read off the system it satisfies.
fn eliminate(sys: &ConjugateSystem, sign: Sign) -> Result<ConjugateSystem> {
    let (x, y) = coord_names(sys.vars())?;
    let omega = connection_form(&System::Conjugate(sys.clone()))?;
    let z = RatExpr::zero(sys.vars());
    let deriv = |v: &Row, var: &str, m: &[Row; 4]| -> Row {
        let d: Row = v.clone().map(|c| c.diff(var).expect("coordinate"));
        let terms: Vec<(&RatExpr, &Row)> = v.iter().zip(m.iter()).collect();
        add(&d, &comb(&terms))
    };
    let dx = |v: &Row| deriv(v, &x, &omega.omega_x);
    let dy = |v: &Row| deriv(v, &y, &omega.omega_y);
    // z+ = z_y + a z, z- = z_x + b z
    let mut w = unit(&z, match sign {
        Sign::Plus => 2,
        Sign::Minus => 1,
    });
    w[0] = match sign {
        Sign::Plus => sys.a.clone(),
        Sign::Minus => sys.b.clone(),
    };
    let wx = dx(&w);
    let wy = dy(&w);
    let jet = Jet {
        w11: dx(&wx),
        w12: dy(&wx),
        w22: dy(&wy),
        w1: wx,
        w2: wy,
        w,
    };
    match normal_form(&jet, Target::Conjugate)? {
        System::Conjugate(c) => Ok(c),
        _ => unreachable!("conjugate target"),
    }
}

fn check_invariant(e: &RatExpr) -> Result<()> {
    if e.is_zero() {
        Err(Error::Degenerate(0))
    } else {
        Ok(())
    }
}

/// `z+ = z_y + a z`.
pub fn positive_transform(sys: &ConjugateSystem) -> Result<TransformReport> {
    let (h, _) = invariants(sys)?;
    check_invariant(&h)?;
    Ok(TransformReport {
        input: sys.clone(),
        output: eliminate(sys, Sign::Plus)?,
        sign: Sign::Plus,
        invariant_used: h,
    })
}

/// `z- = z_x + b z`.
pub fn negative_transform(sys: &ConjugateSystem) -> Result<TransformReport> {
    let c = Coeffs::new(sys)?;
    let k = c.kk();
    check_invariant(&k)?;
    if (&k + &c.d(&sys.n, "x") - c.k(2) * c.d(&sys.b, "y")).is_zero() {
        return Err(Error::Unsolvable("k + n_x - 2 b_y vanishes identically".into()));
    }
    Ok(TransformReport {
        input: sys.clone(),
        output: eliminate(sys, Sign::Minus)?,
        sign: Sign::Minus,
        invariant_used: k,
    })
}

pub fn transform(sys: &ConjugateSystem, sign: Sign) -> Result<TransformReport> {
    match sign {
        Sign::Plus => positive_transform(sys),
        Sign::Minus => negative_transform(sys),
    }
}

/// The positive transform from the closed component formulas, verbatim.
pub fn positive_transform_closed(sys: &ConjugateSystem) -> Result<ConjugateSystem> {
    positive_closed(sys, false)
}

/// The closed positive formulas with the corrections found by comparing
/// against elimination: the `q` group of `m1` carries a factor `h`, and the
/// `r11` and `r13` terms of `r1` enter with the opposite sign.
pub fn positive_transform_amended(sys: &ConjugateSystem) -> Result<ConjugateSystem> {
    positive_closed(sys, true)
}

fn positive_closed(sys: &ConjugateSystem, amend: bool) -> Result<ConjugateSystem> {
    let c = Coeffs::new(sys)?;
    let ConjugateSystem { a, b, c: cc, q, m, n, r } = sys;
    let d = |e: &RatExpr, p: &str| c.d(e, p);
    let k = |n: i64| c.k(n);
    let h = c.h();
    check_invariant(&h)?;
    let hx = d(&h, "x");
    let hy = d(&h, "y");
    let (ax, ay, axx, ayy) = (d(a, "x"), d(a, "y"), d(a, "xx"), d(a, "yy"));
    let (bx, by) = (d(b, "x"), d(b, "y"));
    let (qy, my, ny, ry) = (d(q, "y"), d(m, "y"), d(n, "y"), d(r, "y"));
    let h2 = &h * &h;
    let g = k(2) * &ax * b + &axx - &hx;
    let g = if amend { &g * &h } else { g };
    let m1 = -((g + &hx * &(-(k(2) * &ax) + &h)) * q) / &h2
        + (((m * b + k(2) * &ay - &ny) * a + b * &my - m * cc - &ay * n - &ayy + &ry) * &h - &my * &hx) / &h2
        - ((&h * &(a * a - a * n + m * b + r - &ay) - m * &hx) * &qy) / (&h2 * q);
    let n1 = n - &qy / q;
    let r11 = (-(b * b) + &bx) * &h2
        + (a * b * b * b - k(2) * a * &bx * b - cc * b * b + &ax * &bx + cc * &bx + b * d(cc, "x")) * &h
        + b * &hx * &(b * a - &ax - cc);
    let r12 = (-(m * b) - k(2) * &ay + &ny + r) * &h2
        + (b * b * m * a + ((k(2) * &ay - &ny) * a - m * cc - &ay * n + &ry - &ayy) * b + &my * &bx) * &h
        - b * &my * &hx;
    let r13 = (n - a) * &h2 + ((a * a - a * n - &ay + r) * b + &bx * m) * &h - b * m * &hx;
    let (r11, r13) = if amend { (-r11, -r13) } else { (r11, r13) };
    let r1 = &r11 * q / &h2 + &r12 / &h2 + &r13 * &qy / (q * &h2);
    let q1 = (-(k(2) * &ax) + &h) * q / &h + &my / &h - m * &qy / (q * &h);
    Ok(ConjugateSystem {
        a: a - &hy / &h,
        b: b.clone(),
        c: cc - &ax + &by - b * &hy / &h,
        q: q1,
        m: m1,
        n: n1,
        r: r1,
    })
}

/// The negative transform from the closed component formulas, verbatim.
pub fn negative_transform_closed(sys: &ConjugateSystem) -> Result<ConjugateSystem> {
    negative_closed(sys, false)
}

/// The closed negative formulas with the last term of `r0`'s numerator
/// multiplied by `a`.
pub fn negative_transform_amended(sys: &ConjugateSystem) -> Result<ConjugateSystem> {
    negative_closed(sys, true)
}

fn negative_closed(sys: &ConjugateSystem, amend: bool) -> Result<ConjugateSystem> {
    let c = Coeffs::new(sys)?;
    let ConjugateSystem { a, b, c: cc, q, m, n, r } = sys;
    let d = |e: &RatExpr, p: &str| c.d(e, p);
    let k2 = |n: i64| c.k(n);
    let k = c.kk();
    check_invariant(&k)?;
    let kx = d(&k, "x");
    let ky = d(&k, "y");
    let (bx, by, bxx) = (d(b, "x"), d(b, "y"), d(b, "xx"));
    let (ax, ay) = (d(a, "x"), d(a, "y"));
    let (qx, mx, nx, rx, cy) = (d(q, "x"), d(m, "x"), d(n, "x"), d(r, "x"), d(cc, "y"));
    let den = &nx - k2(2) * &by + &k;
    if den.is_zero() {
        return Err(Error::Unsolvable("k + n_x - 2 b_y vanishes identically".into()));
    }
    let tail = &den * &(b * a * a + (&by - cc) * a - &ky);
    let n01 = (b * b * &qx + (k2(2) * &bx * q - a * a + a * n - &mx + &ay) * b - &bx * &qx - &bx * m + a * cc
        - n * cc
        - &bxx * q
        - &cy
        + &rx)
        * &k
        + &tail;
    let r01 = (-(k2(2) * &bx * q) + a * a - a * n - b * &qx + r + &mx - &ay) * &k * &k
        + (-(k2(2) * a * a * a * b)
            + (b * n + &by + k2(2) * cc - &nx) * a * a
            + (b * b * &qx + (k2(2) * &bx * q - &mx + k2(2) * &ay) * b - &bx * &qx - &bx * m - n * cc - &bxx * q
                - &cy
                + &rx)
                * a
            - &ay * &(&by + cc - &nx))
            * &k
        + if amend { a * &tail } else { tail.clone() };
    let kd = &k * &den;
    Ok(ConjugateSystem {
        a: a.clone(),
        b: b - &kx / &k,
        c: cc - &by + &ax - a * &kx / &k,
        q: &k * q / &den,
        m: &k * &(m + &qx) / &den,
        n: &n01 / &kd,
        r: &r01 / &kd,
    })
}

fn differences(elim: &ConjugateSystem, closed: &ConjugateSystem) -> Vec<(&'static str, RatExpr)> {
    elim.fields()
        .iter()
        .zip(closed.fields().iter())
        .filter_map(|((name, e), (_, c))| {
            let diff = *e - *c;
            (!diff.is_zero()).then_some((*name, diff))
        })
        .collect()
}

/// Componentwise differences `elimination - closed` that do not vanish;
/// `amended` selects the corrected closed formulas.
pub fn closed_form_discrepancies(sys: &ConjugateSystem, sign: Sign, amended: bool) -> Result<Vec<(&'static str, RatExpr)>> {
    let elim = transform(sys, sign)?.output;
    let closed = match (sign, amended) {
        (Sign::Plus, false) => positive_transform_closed(sys)?,
        (Sign::Plus, true) => positive_transform_amended(sys)?,
        (Sign::Minus, false) => negative_transform_closed(sys)?,
        (Sign::Minus, true) => negative_transform_amended(sys)?,
    };
    Ok(differences(&elim, &closed))
}

/// Both comparisons at once, sharing the elimination: `(verbatim, amended)`.
pub fn closed_form_check(sys: &ConjugateSystem, sign: Sign) -> Result<(Vec<(&'static str, RatExpr)>, Vec<(&'static str, RatExpr)>)> {
    let elim = transform(sys, sign)?.output;
    let (verbatim, amended) = match sign {
        Sign::Plus => (positive_transform_closed(sys)?, positive_transform_amended(sys)?),
        Sign::Minus => (negative_transform_closed(sys)?, negative_transform_amended(sys)?),
    };
    Ok((differences(&elim, &verbatim), differences(&elim, &amended)))
}

/// `W+ = 2 q^2 a_x - q m_y + m q_y`, `W- = 2 b_y - n_x`.
pub fn weingarten(sys: &ConjugateSystem, sign: Sign) -> Result<RatExpr> {
    let (x, y) = coord_names(sys.vars())?;
    let two = RatExpr::int(sys.vars(), 2);
    Ok(match sign {
        Sign::Plus => {
            &two * &sys.q * &sys.q * sys.a.diff(&x)? - &sys.q * sys.m.diff(&y)? + &sys.m * sys.q.diff(&y)?
        }
        Sign::Minus => &two * sys.b.diff(&y)? - sys.n.diff(&x)?,
    })
}

/// Whether the second fundamental forms before and after the transform are
/// proportional.
pub fn conformal_match(sys: &ConjugateSystem, sign: Sign) -> Result<bool> {
    let out = transform(sys, sign)?.output;
    let f = crate::rank4::fundamental_form(&System::Conjugate(sys.clone()));
    let g = crate::rank4::fundamental_form(&System::Conjugate(out));
    Ok(proportional(&g, &f).is_some())
}

/// `steps` positive (`steps > 0`) or negative transforms in a row.
pub fn transform_sequence(sys: &ConjugateSystem, steps: i64) -> Result<Vec<TransformReport>> {
    let sign = if steps >= 0 { Sign::Plus } else { Sign::Minus };
    let mut cur = sys.clone();
    let mut out = Vec::new();
    for i in 0..steps.unsigned_abs() as i64 {
        let rep = transform(&cur, sign).map_err(|e| match e {
            Error::Degenerate(_) => Error::Degenerate(if steps > 0 { i } else { -i }),
            other => other,
        })?;
        cur = rep.output.clone();
        out.push(rep);
    }
    Ok(out)
}

/// The two constraints which, together with `A = B = 0`, say that both focal
/// surfaces of the congruence are quadrics. Returned as numerators.
pub fn quad_quad_residuals(sys: &ConjugateSystem, sign: Sign) -> Result<(RatExpr, RatExpr)> {
    let c = Coeffs::new(sys)?;
    let ConjugateSystem { a, b, c: cc, q, r, .. } = sys;
    let d = |e: &RatExpr, p: &str| c.d(e, p);
    let k = |n: i64| c.k(n);
    let (ax, ay, axx, ayy, axy) = (d(a, "x"), d(a, "y"), d(a, "xx"), d(a, "yy"), d(a, "xy"));
    let (bx, by, bxx, byy, bxy) = (d(b, "x"), d(b, "y"), d(b, "xx"), d(b, "yy"), d(b, "xy"));
    let (cx, cy) = (d(cc, "x"), d(cc, "y"));
    let (rx, ry) = (d(r, "x"), d(r, "y"));
    let (qx, qy, qxx, qxy, qyy) = (d(q, "x"), d(q, "y"), d(q, "xx"), d(q, "xy"), d(q, "yy"));
    let (qxxy, qxyy) = (d(q, "xxy"), d(q, "xyy"));
    let q2 = q * q;
    let q3 = &q2 * q;
    let (e1, e2) = match sign {
        Sign::Plus => {
            let h = c.h();
            check_invariant(&h)?;
            let (hx, hy) = (d(&h, "x"), d(&h, "y"));
            let e1 = k(4) * &qy * &qy * a * &h + &qy * &qx * &qx * &h - &qy * &qx * &hx * q
                - k(2) * &qy * &qx * b * q * &h
                - &qy * q * &h * &qxx
                + (-(k(4) * a * a) - k(6) * &ay + k(4) * r) * &qy * q * &h
                - &qx * &qxy * q * &h
                + (k(4) * &by - k(2) * &ax) * &qx * &q2 * &h
                + &hx * &qxy * &q2
                + (k(2) * b * a + k(4) * &by - k(2) * &ax - k(2) * cc) * &hx * &q3
                + k(2) * &qxy * b * &q2 * &h
                + (k(8) * &by * b - k(2) * &bx * a - k(2) * b * &ax - k(2) * &axx + k(2) * &cx + k(4) * &bxy)
                    * &q3
                    * &h
                + (k(8) * &ay * a + k(4) * &ayy - k(4) * &ry + &qxxy) * &q2 * &h
                - k(2) * &qyy * a * q * &h;
            let e2 = k(3) * &hy * &qy * &qx * q - k(3) * &hy * &qxy * &q2
                + (-(k(6) * b * a) - k(12) * &by + k(6) * &ax + k(6) * cc) * &hy * &q3
                - k(4) * &qy * &qy * &qx * &h
                + k(4) * &qy * &qxy * q * &h
                + (k(4) * b * a + k(8) * &by - k(4) * &ax - k(4) * cc) * &qy * &q2 * &h
                + &qyy * &qx * q * &h
                + (-(k(2) * &by * a) - k(2) * b * &ay - k(4) * &byy + k(2) * &axy + k(2) * &cy) * &q3 * &h
                - &qxyy * &q2 * &h;
            (e1, e2)
        }
        Sign::Minus => {
            let kk = c.kk();
            check_invariant(&kk)?;
            let (kx, ky) = (d(&kk, "x"), d(&kk, "y"));
            let e1 = ((-(k(2) * &bx * a) - k(2) * b * &ax - k(4) * &axx + k(2) * &cx + k(2) * &bxy) * &kk
                + (-(k(6) * b * a) + k(6) * &by - k(12) * &ax + k(6) * cc) * &kx)
                * &q2
                + (((-(k(4) * b * a) + k(4) * &by - k(8) * &ax + k(4) * cc) * &qx + &qxxy) * &kk
                    + k(3) * &kx * &qxy)
                    * q
                - &qy * &qxx * &kk
                - k(3) * &kx * &qy * &qx;
            // The second group carries no power of q, as displayed.
            let e2 = (k(8) * b * &bx + k(4) * &bxx) * &kk * &q2 * &q2
                + (((k(4) * b * b + k(6) * &bx) * &qx + k(2) * b * &qxx + k(4) * b * a * a
                    - k(6) * &by * a
                    - k(2) * b * &ay
                    + k(16) * a * &ax
                    - k(4) * a * cc
                    - k(2) * &byy
                    + k(4) * &axy
                    + k(2) * &cy
                    - k(4) * &rx)
                    * &kk
                    + (k(2) * b * a - k(2) * &by + k(4) * &ax - k(2) * cc) * &ky
                    + k(4) * a * &q3 * &kk * &(-(b * a) + &by - k(2) * &ax + cc))
                + (((k(2) * &by - k(4) * &ax) * &qy - k(4) * &qxy * a - &qxyy) * &kk - &qxy * &ky
                    + k(2) * a * &kk * &qxy)
                    * &q2
                + (((k(4) * &qy * a + &qyy) * &qx + k(3) * &qxy * &qy) * &kk + (&ky - k(2) * a * &kk) * &qy * &qx)
                    * q
                - k(3) * &qy * &qy * &qx * &kk;
            (e1, e2)
        }
    };
    let v = sys.vars();
    Ok((RatExpr::poly(v, e1.numer().clone()), RatExpr::poly(v, e2.numer().clone())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PluckerPoint {
    pub p01: RatExpr,
    pub p02: RatExpr,
    pub p03: RatExpr,
    pub p12: RatExpr,
    pub p13: RatExpr,
    pub p23: RatExpr,
}

impl PluckerPoint {
    pub fn coords(&self) -> [&RatExpr; 6] {
        [&self.p01, &self.p02, &self.p03, &self.p12, &self.p13, &self.p23]
    }

    /// `p01 p23 - p02 p13 + p03 p12`.
    pub fn klein(&self) -> RatExpr {
        &self.p01 * &self.p23 - &self.p02 * &self.p13 + &self.p03 * &self.p12
    }
}

/// Plücker coordinates of the line through two points.
pub fn plucker(p1: &[RatExpr; 4], p2: &[RatExpr; 4]) -> Result<PluckerPoint> {
    let p = |i: usize, j: usize| &p1[i] * &p2[j] - &p1[j] * &p2[i];
    let out = PluckerPoint {
        p01: p(0, 1),
        p02: p(0, 2),
        p03: p(0, 3),
        p12: p(1, 2),
        p13: p(1, 3),
        p23: p(2, 3),
    };
    if out.coords().iter().all(|c| c.is_zero()) {
        return Err(Error::Proportional);
    }
    Ok(out)
}

/// Coefficients `(P, Q, R)` of the quadratic form whose null directions give
/// developable ruled surfaces of the congruence spanned by `z` and `w`.
pub fn developability_form(z: &[RatExpr; 4], w: &[RatExpr; 4]) -> Result<(RatExpr, RatExpr, RatExpr)> {
    let (x, y) = coord_names(z[0].vars())?;
    let d = |v: &[RatExpr; 4], var: &str| -> Result<Vec<RatExpr>> {
        v.iter().map(|c| c.diff(var).map_err(Error::from)).collect()
    };
    let (zx, zy, wx, wy) = (d(z, &x)?, d(z, &y)?, d(w, &x)?, d(w, &y)?);
    let wedge = |u: &[RatExpr], v: &[RatExpr]| linalg::det(&[z.to_vec(), w.to_vec(), u.to_vec(), v.to_vec()]);
    let half = RatExpr::rational(z[0].vars(), 1, 2);
    let p = wedge(&zx, &wx);
    let q = &half * &(wedge(&zx, &wy) + wedge(&zy, &wx));
    let r = wedge(&zy, &wy);
    Ok((p, q, r))
}
