//! Multivariate gcd over Z: content splitting plus a subresultant remainder
//! sequence in one main variable, recursing into the coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::poly::{Poly, MAX_VARS};

/// Dense univariate view: index is the degree in the main variable.
type UPoly = Vec<Poly>;

/// Normalize so the leading coefficient is positive.
fn positive(p: Poly) -> Poly {
    if p.is_negative_lc() {
        -p
    } else {
        p
    }
}

/// Greatest common divisor in Z[x1..xn], with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let ic = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(ic);
    }
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(mb);
    let a = a.div_monomial(ma);
    let b = b.div_monomial(mb);
    let g = gcd_primitive(&a, &b);
    g.mul_term(mg, &ic)
}

/// gcd of two polynomials with unit integer content and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || a == &-b {
        return positive(a.clone());
    }
    let va = a.var_mask();
    let vb = b.var_mask();
    if va != vb {
        return gcd_split(a, b, va, vb);
    }
    // Cheap check for one dividing the other.
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return positive(small.clone());
    }
    let x = main_var(a, b, va);
    if let Some(g) = heuristic(a, b, x) {
        return g;
    }
    let ua = a.coeffs_in(x);
    let ub = b.coeffs_in(x);
    let conta = content_list(&ua);
    let contb = content_list(&ub);
    let cg = gcd(&conta, &contb);
    let ua: UPoly = ua.iter().map(|c| exact(c, &conta)).collect();
    let ub: UPoly = ub.iter().map(|c| exact(c, &contb)).collect();
    let g = subresultant(ua, ub);
    let g = primitive_upoly(g);
    let g = Poly::from_coeffs_in(x, &g);
    positive(&g * &cg)
}

/// Evaluation bound beyond which the heuristic gives up, in bits.
const HEU_BITS: u64 = 6000;

fn height(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn eval_at(p: &Poly, x: usize, xi: &BigInt) -> Poly {
    let cs = p.coeffs_in(x);
    let mut acc = Poly::zero();
    for c in cs.iter().rev() {
        acc = &acc.scale(xi) + c;
    }
    acc
}

/// Undo `eval_at` digit by digit with symmetric residues mod `xi`.
fn interpolate(g: &Poly, x: usize, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut rest = g.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let d = Poly::from_terms(
            rest.terms()
                .iter()
                .map(|(m, c)| {
                    let mut r = c.mod_floor(xi);
                    if r > half {
                        r -= xi;
                    }
                    (*m, r)
                })
                .collect(),
        );
        rest = (&rest - &d).div_int(xi);
        digits.push(d);
    }
    Poly::from_coeffs_in(x, &digits)
}

/// Heuristic gcd (Char, Geddes and Gonnet): evaluate the main variable at a
/// large integer, recurse, and read the gcd back from the xi-adic digits.
/// A candidate is only returned after it divides both inputs.
fn heuristic(a: &Poly, b: &Poly, x: usize) -> Option<Poly> {
    let deg = a.degree_in(x).max(b.degree_in(x)) as u64;
    let mut xi: BigInt = height(a).min(height(b)) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * (deg + 1) > HEU_BITS {
            return None;
        }
        let ea = eval_at(a, x, &xi);
        let eb = eval_at(b, x, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let g = interpolate(&gcd(&ea, &eb), x, &xi);
            if !g.is_zero() {
                let g = positive(g.div_int(&g.content()));
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn exact(a: &Poly, d: &Poly) -> Poly {
    if d.is_one() {
        return a.clone();
    }
    a.div_exact(d).expect("inexact division inside gcd")
}

/// Variables occurring in only one argument cannot occur in the gcd, so the gcd
/// is the gcd of the coefficients with respect to those variables.
fn gcd_split(a: &Poly, b: &Poly, va: u32, vb: u32) -> Poly {
    let mut parts: Vec<Poly> = Vec::new();
    let only_a = va & !vb;
    let only_b = vb & !va;
    if only_a != 0 {
        parts.extend(a.coeffs_in_mask(only_a));
    } else {
        parts.push(a.clone());
    }
    if only_b != 0 {
        parts.extend(b.coeffs_in_mask(only_b));
    } else {
        parts.push(b.clone());
    }
    parts.sort_by_key(|p| (p.len(), p.total_degree()));
    let mut g = parts[0].clone();
    for p in &parts[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, p);
    }
    if g.is_constant() {
        Poly::one()
    } else {
        positive(g.div_int(&g.content()))
    }
}

fn main_var(a: &Poly, b: &Poly, mask: u32) -> usize {
    (0..MAX_VARS)
        .filter(|v| mask & (1 << v) != 0)
        .min_by_key(|&v| {
            let (da, db) = (a.degree_in(v), b.degree_in(v));
            (da.min(db), da.max(db))
        })
        .expect("nonconstant polynomial has a variable")
}

/// gcd of a coefficient list, positive, early exit at 1.
fn content_list(cs: &[Poly]) -> Poly {
    let mut nz: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|p| (p.len(), p.total_degree()));
    let mut g = nz[0].clone();
    for c in &nz[1..] {
        if g.is_one() {
            break;
        }
        g = gcd(&g, c);
    }
    positive(g)
}

fn primitive_upoly(u: UPoly) -> UPoly {
    let c = content_list(&u);
    let mut u: UPoly = u.iter().map(|p| exact(p, &c)).collect();
    if u.last().map(|p| p.is_negative_lc()).unwrap_or(false) {
        u = u.into_iter().map(|p| -p).collect();
    }
    u
}

fn trim(u: &mut UPoly) {
    while u.last().map(|p| p.is_zero()).unwrap_or(false) {
        u.pop();
    }
}

fn deg(u: &UPoly) -> usize {
    u.len() - 1
}

/// Pseudo-remainder of `a` by `b` in the main variable.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let n = deg(b);
    let lb = &b[n];
    let mut r = a.clone();
    let mut e = (deg(a) + 1 - n) as u32;
    while !r.is_empty() && r.len() > n {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let sh = dr - n;
        for c in r.iter_mut().take(dr) {
            if !c.is_zero() {
                *c = &*c * lb;
            }
        }
        r[dr] = Poly::zero();
        for j in 0..n {
            if !b[j].is_zero() {
                let t = &lr * &b[j];
                r[j + sh] = &r[j + sh] - &t;
            }
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero element of the subresultant sequence (Knuth, Algorithm C).
fn subresultant(a: UPoly, b: UPoly) -> UPoly {
    let (mut u, mut v) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (deg(&u) - deg(&v)) as u32;
        let r = prem(&u, &v);
        if r.is_empty() {
            return v;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let denom = &g * &h.pow(delta);
        u = v;
        v = r.iter().map(|c| exact(c, &denom)).collect();
        g = u[deg(&u)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact(&g.pow(delta), &h.pow(delta - 1)),
        };
    }
}

/// Content-and-primitive-part split over Z: `p = c * pp` with `lc(pp) > 0`.
pub fn integer_primitive(p: &Poly) -> (BigInt, Poly) {
    if p.is_zero() {
        return (BigInt::one(), Poly::zero());
    }
    let mut c = p.content();
    if p.lc().is_negative() {
        c = -c;
    }
    (c.clone(), p.div_int(&c))
}
