use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const MAX_VARS: usize = 8;
const FIELD: u32 = 16;
const MASK: u128 = 0xFFFF;
const GUARD: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;

/// Exponent vector packed into 16-bit fields, variable 0 in the top field,
/// so integer order on the packed value is lex order with variable 0 first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u128);

#[inline]
fn shift(v: usize) -> u32 {
    (MAX_VARS - 1 - v) as u32 * FIELD
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: usize, e: u32) -> Monomial {
        assert!(v < MAX_VARS && e < 0x8000, "monomial out of range");
        Monomial((e as u128) << shift(v))
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        exps.iter()
            .enumerate()
            .fold(Monomial::ONE, |m, (v, &e)| m.mul(Monomial::var(v, e)))
    }

    #[inline]
    pub fn exp(self, v: usize) -> u32 {
        ((self.0 >> shift(v)) & MASK) as u32
    }

    pub fn exps(self) -> [u32; MAX_VARS] {
        let mut out = [0; MAX_VARS];
        for (v, e) in out.iter_mut().enumerate() {
            *e = self.exp(v);
        }
        out
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn mul(self, o: Monomial) -> Monomial {
        let r = self.0 + o.0;
        assert!(r & GUARD == 0, "exponent overflow");
        Monomial(r)
    }

    /// True when every exponent of `self` is at most the one in `o`.
    #[inline]
    pub fn divides(self, o: Monomial) -> bool {
        ((o.0 | GUARD) - self.0) & GUARD == GUARD
    }

    /// `self / o`; caller guarantees `o.divides(self)`.
    #[inline]
    pub fn div(self, o: Monomial) -> Monomial {
        Monomial(self.0 - o.0)
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exp(v)).sum()
    }

    pub fn gcd(self, o: Monomial) -> Monomial {
        let mut r = 0u128;
        for v in 0..MAX_VARS {
            r |= (self.exp(v).min(o.exp(v)) as u128) << shift(v);
        }
        Monomial(r)
    }

    /// Drop variable `v` from the monomial.
    pub fn without(self, v: usize) -> Monomial {
        Monomial(self.0 & !(MASK << shift(v)))
    }

    pub fn var_mask(self) -> u32 {
        let mut m = 0;
        for v in 0..MAX_VARS {
            if self.exp(v) > 0 {
                m |= 1 << v;
            }
        }
        m
    }
}

/// Sparse polynomial over Z; terms strictly descending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn var(v: usize) -> Poly {
        Poly::term(Monomial::var(v, 1), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Build from terms in any order, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, BigInt)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading term in lex order. Panics on zero.
    pub fn lt(&self) -> (Monomial, &BigInt) {
        let (m, c) = &self.terms[0];
        (*m, c)
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn var_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.var_mask())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.gcd(*m)),
        }
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Divide every coefficient by `k`, which must divide them all.
    pub fn div_int(&self, k: &BigInt) -> Poly {
        if k.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!((c % k).is_zero());
                    (*m, c / k)
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: Monomial, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * k)).collect(),
        }
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect(),
        }
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn deriv(&self, v: usize) -> Poly {
        let dv = Monomial::var(v, 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(v);
                (e > 0).then(|| (m.div(dv), c * BigInt::from(e)))
            })
            .collect();
        // Dividing by the same monomial keeps the order strict.
        Poly { terms }
    }

    /// Dense coefficient list with respect to `v`: `self = sum c_i v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        // Restricting a lex-sorted list to one exponent of v keeps the rest sorted.
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(v, i as u32);
            terms.extend(c.terms.iter().map(|(m, k)| (m.mul(vm), k.clone())));
        }
        Poly::from_terms(terms)
    }

    /// Group terms by their exponents in the variables of `mask`; returns the
    /// coefficient polynomials (free of those variables).
    pub fn coeffs_in_mask(&self, mask: u32) -> Vec<Poly> {
        let mut keep: u128 = 0;
        for v in 0..MAX_VARS {
            if mask & (1 << v) != 0 {
                keep |= MASK << shift(v);
            }
        }
        let mut groups: BTreeMap<u128, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.0 & keep)
                .or_default()
                .push((Monomial(m.0 & !keep), c.clone()));
        }
        groups.into_values().map(|terms| Poly { terms }).collect()
    }

    /// Exact division; `None` if `d` does not divide `self` over Z.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            let (dm, dc) = d.lt();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((m.div(dm), q));
            }
            return Some(Poly { terms });
        }
        for v in 0..MAX_VARS {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = d.lt();
        let tail = &d.terms[1..];
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.pop_last() {
            if !dm.divides(rm) {
                return None;
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.div(dm);
            for (tm, tc) in tail {
                let key = tm.mul(qm);
                let prod = tc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-prod);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, x) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, x) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate modulo a prime `p` (< 2^63) at a point of residues.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let cm = c.mod_floor(&pb).to_u64().unwrap() as u128;
            let mut t = cm;
            for (v, x) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t = t * pow_mod(*x, e as u64, p) as u128 % p as u128;
                }
            }
            acc = (acc + t) % p as u128;
        }
        acc as u64
    }

    pub fn is_negative_lc(&self) -> bool {
        !self.is_zero() && self.lc().is_negative()
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut r: u128 = 1;
    let mut bb = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % p;
        }
        bb = bb * bb % p;
        e >>= 1;
    }
    r as u64
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.merge(o, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.merge(o, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 {
            let (m, c) = self.lt();
            return o.mul_term(m, c);
        }
        if o.len() == 1 {
            let (m, c) = o.lt();
            return self.mul_term(m, c);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut prods = Vec::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                prods.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly::from_terms(prods)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}
