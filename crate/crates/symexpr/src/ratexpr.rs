use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::gcd::gcd;
use crate::poly::{Monomial, Poly};
use crate::vars::VarTable;
use crate::Error;

/// Rational function `num/den` over a [`VarTable`].
///
/// Canonical form: `num` and `den` coprime in Z[vars], `lc(den) > 0` in lex
/// order. Zero is `0/1`. Equal values have identical representations.
#[derive(Clone)]
pub struct RatExpr {
    vars: Arc<VarTable>,
    num: Poly,
    den: Poly,
}

impl PartialEq for RatExpr {
    fn eq(&self, o: &RatExpr) -> bool {
        same_table(&self.vars, &o.vars) && self.num == o.num && self.den == o.den
    }
}

impl Eq for RatExpr {}

impl std::hash::Hash for RatExpr {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.num.hash(h);
        self.den.hash(h);
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn normalize_sign_content(num: Poly, den: Poly) -> (Poly, Poly) {
    let c = num.content().gcd(&den.content());
    let c = if den.lc().is_negative() { -c } else { c };
    if c.is_one() {
        (num, den)
    } else {
        (num.div_int(&c), den.div_int(&c))
    }
}

impl RatExpr {
    /// Canonicalize an arbitrary fraction.
    pub fn from_polys(vars: &Arc<VarTable>, num: Poly, den: Poly) -> Result<RatExpr, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatExpr::zero(vars));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let (num, den) = normalize_sign_content(num, den);
        Ok(RatExpr {
            vars: vars.clone(),
            num,
            den,
        })
    }

    /// Build from parts already known to be coprime; only sign and integer
    /// content are normalized.
    fn from_coprime(vars: &Arc<VarTable>, num: Poly, den: Poly) -> RatExpr {
        if num.is_zero() {
            return RatExpr::zero(vars);
        }
        let (num, den) = normalize_sign_content(num, den);
        RatExpr {
            vars: vars.clone(),
            num,
            den,
        }
    }

    pub fn poly(vars: &Arc<VarTable>, p: Poly) -> RatExpr {
        RatExpr::from_coprime(vars, p, Poly::one())
    }

    pub fn zero(vars: &Arc<VarTable>) -> RatExpr {
        RatExpr {
            vars: vars.clone(),
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> RatExpr {
        RatExpr::int(vars, 1)
    }

    pub fn int(vars: &Arc<VarTable>, n: i64) -> RatExpr {
        RatExpr::poly(vars, Poly::constant(BigInt::from(n)))
    }

    pub fn rational(vars: &Arc<VarTable>, n: i64, d: i64) -> RatExpr {
        RatExpr::from_polys(
            vars,
            Poly::constant(BigInt::from(n)),
            Poly::constant(BigInt::from(d)),
        )
        .expect("nonzero denominator")
    }

    pub fn from_big_rational(vars: &Arc<VarTable>, q: &BigRational) -> RatExpr {
        RatExpr::from_coprime(
            vars,
            Poly::constant(q.numer().clone()),
            Poly::constant(q.denom().clone()),
        )
    }

    /// The variable called `name`.
    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<RatExpr, Error> {
        let i = vars
            .index(name)
            .ok_or_else(|| Error::UnknownIdent(name.to_string()))?;
        Ok(RatExpr::poly(vars, Poly::var(i)))
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    /// Rough size, used for pivot choice.
    pub fn complexity(&self) -> usize {
        self.num.len() + self.den.len()
    }

    /// Bitmask of variables that actually appear.
    pub fn var_mask(&self) -> u32 {
        self.num.var_mask() | self.den.var_mask()
    }

    pub fn depends_on(&self, name: &str) -> bool {
        match self.vars.index(name) {
            Some(i) => self.var_mask() & (1 << i) != 0,
            None => false,
        }
    }

    /// True when no coordinate variable appears.
    pub fn is_coordinate_free(&self) -> bool {
        let coord_mask = (1u32 << self.vars.ncoords()) - 1;
        self.var_mask() & coord_mask == 0
    }

    fn check(&self, o: &RatExpr) -> Result<(), Error> {
        if same_table(&self.vars, &o.vars) {
            Ok(())
        } else {
            Err(Error::VarMismatch)
        }
    }

    pub fn try_add(&self, o: &RatExpr) -> Result<RatExpr, Error> {
        self.check(o)?;
        Ok(self.add_impl(o, false))
    }

    pub fn try_sub(&self, o: &RatExpr) -> Result<RatExpr, Error> {
        self.check(o)?;
        Ok(self.add_impl(o, true))
    }

    pub fn try_mul(&self, o: &RatExpr) -> Result<RatExpr, Error> {
        self.check(o)?;
        Ok(self.mul_impl(o))
    }

    pub fn try_div(&self, o: &RatExpr) -> Result<RatExpr, Error> {
        self.check(o)?;
        let inv = o.inv()?;
        Ok(self.mul_impl(&inv))
    }

    pub fn inv(&self) -> Result<RatExpr, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatExpr::from_coprime(&self.vars, self.den.clone(), self.num.clone()))
    }

    fn add_impl(&self, o: &RatExpr, negate: bool) -> RatExpr {
        let c = if negate { -&o.num } else { o.num.clone() };
        if self.is_zero() {
            return RatExpr::from_coprime(&self.vars, c, o.den.clone());
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &c;
            return RatExpr::from_polys(&self.vars, n, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let n = &(&self.num * &o.den) + &c;
            return RatExpr::from_coprime(&self.vars, n, o.den.clone());
        }
        if o.den.is_one() {
            let n = &self.num + &(&c * &self.den);
            return RatExpr::from_coprime(&self.vars, n, self.den.clone());
        }
        // Henrici: with g = gcd(b, d) only gcd(numerator, g) can remain.
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&c * &self.den);
            let d = &self.den * &o.den;
            return RatExpr::from_coprime(&self.vars, n, d);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let n = &(&self.num * &d1) + &(&c * &b1);
        if n.is_zero() {
            return RatExpr::zero(&self.vars);
        }
        let g2 = gcd(&n, &g);
        let (n, g) = if g2.is_one() {
            (n, g)
        } else {
            (n.div_exact(&g2).unwrap(), g.div_exact(&g2).unwrap())
        };
        let d = &(&b1 * &d1) * &g;
        RatExpr::from_coprime(&self.vars, n, d)
    }

    fn mul_impl(&self, o: &RatExpr) -> RatExpr {
        if self.is_zero() || o.is_zero() {
            return RatExpr::zero(&self.vars);
        }
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        RatExpr::from_coprime(&self.vars, &a * &c, &b * &d)
    }

    pub fn pow(&self, e: i32) -> Result<RatExpr, Error> {
        if e >= 0 {
            Ok(RatExpr::from_coprime(
                &self.vars,
                self.num.pow(e as u32),
                self.den.pow(e as u32),
            ))
        } else {
            self.inv()?.pow(-e)
        }
    }

    /// Partial derivative with respect to a coordinate.
    pub fn diff(&self, v: &str) -> Result<RatExpr, Error> {
        let i = self.vars.coord_index(v)?;
        Ok(self.diff_index(i))
    }

    /// Partial derivative with respect to variable index `i` (must be a coordinate).
    pub fn diff_index(&self, i: usize) -> RatExpr {
        assert!(self.vars.is_coord(i), "differentiation by a parameter");
        if self.is_zero() {
            return self.clone();
        }
        let dn = self.num.deriv(i);
        let dd = self.den.deriv(i);
        if dd.is_zero() {
            // d/dv (N/D) = N'/D when D is free of v.
            return RatExpr::from_polys(&self.vars, dn, self.den.clone()).unwrap();
        }
        // (N'D - ND')/D^2 with N, D coprime: g = gcd(D, D') always cancels.
        // Factors of D free of v can survive into the numerator, so the rest
        // is cancelled against D until nothing is left.
        let g = gcd(&self.den, &dd);
        let (d1, e) = if g.is_one() {
            (self.den.clone(), dd)
        } else {
            (self.den.div_exact(&g).unwrap(), dd.div_exact(&g).unwrap())
        };
        let mut top = &(&dn * &d1) - &(&self.num * &e);
        if top.is_zero() {
            return RatExpr::zero(&self.vars);
        }
        let mut bottom = &d1 * &self.den;
        loop {
            let c = gcd(&gcd(&top, &self.den), &bottom);
            if c.is_one() {
                break;
            }
            top = top.div_exact(&c).unwrap();
            bottom = bottom.div_exact(&c).unwrap();
        }
        RatExpr::from_coprime(&self.vars, top, bottom)
    }

    /// Substitute variables by name. Names absent from `map` are carried over
    /// to the variable of the same name in `target`.
    pub fn substitute(
        &self,
        map: &HashMap<String, RatExpr>,
        target: &Arc<VarTable>,
    ) -> Result<RatExpr, Error> {
        let n = self.vars.len();
        let mut images: Vec<RatExpr> = Vec::with_capacity(n);
        for name in self.vars.names() {
            match map.get(name) {
                Some(e) => {
                    if !same_table(e.vars(), target) {
                        return Err(Error::VarMismatch);
                    }
                    images.push(e.clone());
                }
                None => match RatExpr::var(target, name) {
                    Ok(v) => images.push(v),
                    // Unused variables need no image.
                    Err(_) if !self.depends_on(name) => images.push(RatExpr::zero(target)),
                    Err(e) => return Err(e),
                },
            }
        }
        self.compose(&images, target)
    }

    /// `self(images[0], images[1], ...)` with all images over `target`.
    pub fn compose(&self, images: &[RatExpr], target: &Arc<VarTable>) -> Result<RatExpr, Error> {
        let mut cache = PowerCache::new(images);
        let dn: Vec<u32> = (0..images.len()).map(|v| self.num.degree_in(v)).collect();
        let dd: Vec<u32> = (0..images.len()).map(|v| self.den.degree_in(v)).collect();
        let top = cache.homogenize(&self.num, &dn);
        let bot = cache.homogenize(&self.den, &dd);
        if bot.is_zero() {
            return Err(Error::Pole);
        }
        // num(P/Q)/den(P/Q) = top/bot * prod Q_v^(dd_v - dn_v).
        let mut top = top;
        let mut bot = bot;
        for v in 0..images.len() {
            let diff = dd[v] as i64 - dn[v] as i64;
            if diff > 0 {
                top = &top * &cache.den_pow(v, diff as u32);
            } else if diff < 0 {
                bot = &bot * &cache.den_pow(v, (-diff) as u32);
            }
        }
        RatExpr::from_polys(target, top, bot)
    }

    /// Re-express over another table holding all variables that occur.
    pub fn rebase(&self, target: &Arc<VarTable>) -> Result<RatExpr, Error> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        self.substitute(&HashMap::new(), target)
    }

    /// Evaluate at a rational point; `None` when the denominator vanishes.
    pub fn eval_rational(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Evaluate modulo a prime; `None` when the denominator vanishes there.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let d = self.den.eval_mod(point, p);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(point, p);
        let inv = mod_inverse(d, p);
        Some((n as u128 * inv as u128 % p as u128) as u64)
    }

    /// Checks the canonical-form invariants directly.
    pub fn is_canonical(&self) -> bool {
        gcd(&self.num, &self.den).is_one() && !self.den.lc().is_negative()
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (g, x, _) = extended(a as i128, p as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i128) as u64
}

fn extended(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Divide out the common factor of `a` and `b`.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if b.is_one() || a.is_one() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

/// Powers of the numerators and denominators of substitution images.
struct PowerCache<'a> {
    images: &'a [RatExpr],
    num: Vec<Vec<Poly>>,
    den: Vec<Vec<Poly>>,
}

impl<'a> PowerCache<'a> {
    fn new(images: &'a [RatExpr]) -> Self {
        let n = images.len();
        PowerCache {
            images,
            num: vec![vec![Poly::one()]; n],
            den: vec![vec![Poly::one()]; n],
        }
    }

    fn num_pow(&mut self, v: usize, e: u32) -> Poly {
        while self.num[v].len() <= e as usize {
            let next = self.num[v].last().unwrap() * &self.images[v].num;
            self.num[v].push(next);
        }
        self.num[v][e as usize].clone()
    }

    fn den_pow(&mut self, v: usize, e: u32) -> Poly {
        while self.den[v].len() <= e as usize {
            let next = self.den[v].last().unwrap() * &self.images[v].den;
            self.den[v].push(next);
        }
        self.den[v][e as usize].clone()
    }

    /// `sum c * prod P_v^e_v Q_v^(deg_v - e_v)`.
    fn homogenize(&mut self, p: &Poly, degs: &[u32]) -> Poly {
        let mut acc: Vec<(Monomial, BigInt)> = Vec::new();
        for (m, c) in p.terms() {
            let mut t = Poly::constant(c.clone());
            for (v, &d) in degs.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t = &t * &self.num_pow(v, e);
                }
                if d > e {
                    t = &t * &self.den_pow(v, d - e);
                }
            }
            acc.extend(t.into_terms());
        }
        Poly::from_terms(acc)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_poly(f, &self.num, &self.vars)
        } else {
            write!(f, "(")?;
            write_poly(f, &self.num, &self.vars)?;
            write!(f, ")/(")?;
            write_poly(f, &self.den, &self.vars)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, vars: &VarTable) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_string());
        }
        for (v, e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars.name(v).to_string()),
                _ => factors.push(format!("{}^{}", vars.name(v), e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a RatExpr> for &'a RatExpr {
            type Output = RatExpr;
            fn $method(self, o: &RatExpr) -> RatExpr {
                self.$imp(o).expect(concat!("RatExpr ", stringify!($method)))
            }
        }
        impl $tr<RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $method(self, o: RatExpr) -> RatExpr {
                (&self).$imp(&o).expect(concat!("RatExpr ", stringify!($method)))
            }
        }
        impl<'a> $tr<&'a RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $method(self, o: &RatExpr) -> RatExpr {
                (&self).$imp(o).expect(concat!("RatExpr ", stringify!($method)))
            }
        }
        impl<'a> $tr<RatExpr> for &'a RatExpr {
            type Output = RatExpr;
            fn $method(self, o: RatExpr) -> RatExpr {
                self.$imp(&o).expect(concat!("RatExpr ", stringify!($method)))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            vars: self.vars.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            vars: self.vars,
            num: -self.num,
            den: self.den,
        }
    }
}
