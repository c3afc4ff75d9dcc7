use std::collections::HashMap;

use statrs::function::gamma::gamma;

use super::quadrature::gauss_jacobi_unit;
use super::Family;
use crate::{Error, Result};

/// Numeric parameters of a hypergeometric family, in the order of
/// [`AppellParams::names`].
#[derive(Clone, Debug, PartialEq)]
pub struct AppellParams {
    pub family: Family,
    pub values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Highest total degree included.
    pub terms_used: usize,
    /// Sum of magnitudes of the last included shell.
    pub tail_bound: f64,
}

impl AppellParams {
    pub fn names(family: Family) -> &'static [&'static str] {
        match family {
            Family::Gauss => &["alpha", "beta", "gamma"],
            Family::F2 => &["alpha", "beta1", "beta2", "gamma1", "gamma2"],
            Family::F3 => &["alpha1", "alpha2", "beta1", "beta2", "gamma"],
            Family::F4 => &["alpha", "beta", "gamma1", "gamma2"],
        }
    }

    pub fn new(family: Family, values: &[f64]) -> Result<AppellParams> {
        if values.len() != Self::names(family).len() {
            return Err(Error::Invalid(format!(
                "{:?} takes {} parameters",
                family,
                Self::names(family).len()
            )));
        }
        let p = AppellParams {
            family,
            values: values.to_vec(),
        };
        for g in p.lower() {
            if g <= 0.0 && g.fract() == 0.0 {
                return Err(Error::Invalid(format!("lower parameter {} is a nonpositive integer", g)));
            }
        }
        Ok(p)
    }

    pub fn from_map(family: Family, map: &HashMap<String, f64>) -> Result<AppellParams> {
        let vals: Vec<f64> = Self::names(family)
            .iter()
            .map(|n| map.get(*n).copied().ok_or_else(|| Error::Invalid(format!("missing parameter {}", n))))
            .collect::<Result<_>>()?;
        AppellParams::new(family, &vals)
    }

    fn lower(&self) -> Vec<f64> {
        let v = &self.values;
        match self.family {
            Family::Gauss => vec![v[2]],
            Family::F2 => vec![v[3], v[4]],
            Family::F3 => vec![v[4]],
            Family::F4 => vec![v[2], v[3]],
        }
    }

    fn dims(&self) -> usize {
        if self.family == Family::Gauss {
            1
        } else {
            2
        }
    }

    /// `A(m+1, n)/A(m, n)` for the coefficient of `x^m y^n`.
    fn ratio_m(&self, m: f64, n: f64) -> f64 {
        let v = &self.values;
        match self.family {
            Family::Gauss => (v[0] + m) * (v[1] + m) / ((v[2] + m) * (m + 1.0)),
            Family::F2 => (v[0] + m + n) * (v[1] + m) / ((v[3] + m) * (m + 1.0)),
            Family::F3 => (v[0] + m) * (v[2] + m) / ((v[4] + m + n) * (m + 1.0)),
            Family::F4 => (v[0] + m + n) * (v[1] + m + n) / ((v[2] + m) * (m + 1.0)),
        }
    }

    /// `A(m, n+1)/A(m, n)`.
    fn ratio_n(&self, m: f64, n: f64) -> f64 {
        let v = &self.values;
        match self.family {
            Family::Gauss => 0.0,
            Family::F2 => (v[0] + m + n) * (v[2] + n) / ((v[4] + n) * (n + 1.0)),
            Family::F3 => (v[1] + n) * (v[3] + n) / ((v[4] + m + n) * (n + 1.0)),
            Family::F4 => (v[0] + m + n) * (v[1] + m + n) / ((v[3] + n) * (n + 1.0)),
        }
    }

    fn check_point(&self, pt: &[f64]) -> Result<(f64, f64)> {
        if pt.len() != self.dims() {
            return Err(Error::Invalid(format!("{:?} takes a {}-point", self.family, self.dims())));
        }
        let (x, y) = (pt[0], pt.get(1).copied().unwrap_or(0.0));
        let inside = match self.family {
            Family::Gauss => x.abs() <= 0.9,
            Family::F2 | Family::F3 => x.abs() <= 0.45 && y.abs() <= 0.45,
            Family::F4 => x.abs().sqrt() + y.abs().sqrt() <= 0.9,
        };
        if !inside {
            return Err(Error::Invalid(format!("point {:?} is outside the convergence box", pt)));
        }
        Ok((x, y))
    }
}

/// Sum the series by total-degree shells until two consecutive shells fall
/// below `tol`.
pub fn series_eval(p: &AppellParams, point: &[f64], tol: f64, max_terms: usize) -> Result<SeriesValue> {
    let (x, y) = p.check_point(point)?;
    let mut shell = vec![1.0f64];
    let mut sum = 1.0;
    let mut quiet = 0;
    for d in 1..=max_terms {
        let next: Vec<f64> = if p.dims() == 1 {
            vec![shell[0] * p.ratio_m((d - 1) as f64, 0.0) * x]
        } else {
            // Entry i is the term with x-degree i.
            let mut v: Vec<f64> = (0..d)
                .map(|i| shell[i] * p.ratio_n(i as f64, (d - 1 - i) as f64) * y)
                .collect();
            v.push(shell[d - 1] * p.ratio_m((d - 1) as f64, 0.0) * x);
            v
        };
        let mag: f64 = next.iter().map(|t| t.abs()).sum();
        sum += next.iter().sum::<f64>();
        shell = next;
        if !mag.is_finite() {
            break;
        }
        quiet = if mag < tol { quiet + 1 } else { 0 };
        if quiet >= 2 {
            return Ok(SeriesValue {
                value: sum,
                terms_used: d,
                tail_bound: mag,
            });
        }
    }
    Err(Error::NoConvergence(max_terms))
}

/// Coefficients `A(m, n)` for `m, n <= trunc` (Gauss: `n = 0` only).
fn coefficients(p: &AppellParams, trunc: usize) -> Vec<Vec<f64>> {
    let nmax = if p.dims() == 1 { 0 } else { trunc };
    let mut a = vec![vec![0.0; nmax + 1]; trunc + 1];
    a[0][0] = 1.0;
    for n in 1..=nmax {
        a[0][n] = a[0][n - 1] * p.ratio_n(0.0, (n - 1) as f64);
    }
    for m in 1..=trunc {
        for n in 0..=nmax {
            a[m][n] = a[m - 1][n] * p.ratio_m((m - 1) as f64, n as f64);
        }
    }
    a
}

/// Largest absolute residual of the family's differential equations for the
/// series truncated at `truncation` in each index.
pub fn pde_residual(p: &AppellParams, point: &[f64], truncation: usize) -> Result<f64> {
    let (x, y) = p.check_point(point)?;
    let a = coefficients(p, truncation);
    // Jet entries: F, Fx, Fy, Fxx, Fxy, Fyy.
    let mut jet = [0.0f64; 6];
    let mut edge = 0.0f64;
    let pw = |b: f64, e: i64| if e < 0 { 0.0 } else { b.powi(e as i32) };
    for (m, row) in a.iter().enumerate() {
        for (n, &c) in row.iter().enumerate() {
            let (mf, nf) = (m as f64, n as f64);
            let (mi, ni) = (m as i64, n as i64);
            jet[0] += c * pw(x, mi) * pw(y, ni);
            jet[1] += c * mf * pw(x, mi - 1) * pw(y, ni);
            jet[2] += c * nf * pw(x, mi) * pw(y, ni - 1);
            jet[3] += c * mf * (mf - 1.0) * pw(x, mi - 2) * pw(y, ni);
            jet[4] += c * mf * nf * pw(x, mi - 1) * pw(y, ni - 1);
            jet[5] += c * nf * (nf - 1.0) * pw(x, mi) * pw(y, ni - 2);
            if m == truncation || (p.dims() == 2 && n == truncation) {
                edge = edge.max((c * pw(x, mi) * pw(y, ni)).abs());
            }
        }
    }
    if edge > 1e-6 {
        return Err(Error::NoConvergence(truncation));
    }
    let [f, fx, fy, fxx, fxy, fyy] = jet;
    let v = &p.values;
    let res = match p.family {
        Family::Gauss => vec![x * (1.0 - x) * fxx + (v[2] - (v[0] + v[1] + 1.0) * x) * fx - v[0] * v[1] * f],
        Family::F2 => {
            let (al, b1, b2, g1, g2) = (v[0], v[1], v[2], v[3], v[4]);
            vec![
                x * (1.0 - x) * fxx - x * y * fxy + (g1 - (al + b1 + 1.0) * x) * fx - b1 * y * fy - al * b1 * f,
                y * (1.0 - y) * fyy - x * y * fxy + (g2 - (al + b2 + 1.0) * y) * fy - b2 * x * fx - al * b2 * f,
            ]
        }
        Family::F4 => {
            let (al, be, g1, g2) = (v[0], v[1], v[2], v[3]);
            vec![
                x * (x + y - 1.0) * fxx
                    + 2.0 * x * y * fxy
                    + ((al + be + 1.0) * x + g1 * (y - 1.0)) * fx
                    + y * (al + be - g2 + 1.0) * fy
                    + al * be * f,
                y * (x + y - 1.0) * fyy
                    + 2.0 * x * y * fxy
                    + x * (al + be - g1 + 1.0) * fx
                    + ((al + be + 1.0) * y + g2 * (x - 1.0)) * fy
                    + al * be * f,
            ]
        }
        Family::F3 => return Err(Error::Invalid("no differential system is set up for F3".into())),
    };
    Ok(res.into_iter().fold(0.0, |acc, r| acc.max(r.abs())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerReport {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub nodes: usize,
    pub pass: bool,
}

/// Compare F2 at `(1/s, 1 - t/s)` with its Euler transform of 2F1.
///
/// The integral runs over `u` from `t` to `s` (orientation flipped, which
/// absorbs the leading minus sign), with `u = t + (s - t) tau` and the endpoint
/// powers taken as Gauss-Jacobi weights.
pub fn euler_transform_check(p: &AppellParams, s: f64, t: f64, tol: f64) -> Result<EulerReport> {
    if p.family != Family::F2 {
        return Err(Error::Invalid("the Euler transform check is for F2".into()));
    }
    let (al, b1, b2, g1, g2) = (p.values[0], p.values[1], p.values[2], p.values[3], p.values[4]);
    if !(g1 > b1 && b1 > 0.0 && g2 > b2 && b2 > 0.0) {
        return Err(Error::Invalid("need gamma1 > beta1 > 0 and gamma2 > beta2 > 0".into()));
    }
    if !(s > t && t > 1.0) {
        return Err(Error::Invalid("need s > t > 1".into()));
    }
    let lhs = series_eval(p, &[1.0 / s, 1.0 - t / s], 1e-16, 5000)?.value;
    let gauss = AppellParams::new(Family::Gauss, &[al, b1, g1])?;
    let pref = gamma(g2) / (gamma(b2) * gamma(g2 - b2)) * s.powf(al);
    let integrand = |tau: f64| -> Result<f64> {
        let u = t + (s - t) * tau;
        Ok(u.powf(-al) * series_eval(&gauss, &[1.0 / u], 1e-17, 5000)?.value)
    };
    let rule = |n: usize| -> Result<f64> {
        let (nodes, weights) = gauss_jacobi_unit(n, b2 - 1.0, g2 - b2 - 1.0);
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * integrand(*x)?;
        }
        Ok(pref * acc)
    };
    let mut n = 8;
    let mut prev = rule(n)?;
    loop {
        let next = rule(2 * n)?;
        n *= 2;
        if (next - prev).abs() <= 1e-3 * tol || n >= 256 {
            if (next - prev).abs() > tol {
                return Err(Error::NoConvergence(n));
            }
            let abs_diff = (lhs - next).abs();
            return Ok(EulerReport {
                lhs,
                rhs: next,
                abs_diff,
                tol,
                nodes: n,
                pass: abs_diff <= tol,
            });
        }
        prev = next;
    }
}
