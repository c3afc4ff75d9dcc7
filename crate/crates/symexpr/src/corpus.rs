//! Random expression trees with their own float and modular evaluators, used
//! to test the canonical kernel against an independent code path.

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug)]
pub enum Ast {
    Int(i64),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
}

use Ast::*;

fn b(a: Ast) -> Box<Ast> {
    Box::new(a)
}

/// A random tree over `nvars` variables. Every denominator is positive when
/// all variables are positive, so float evaluation on (0, inf)^n is safe.
pub fn random_ast<R: Rng>(rng: &mut R, nvars: usize, depth: u32) -> Ast {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.6) {
            Var(rng.gen_range(0..nvars))
        } else {
            Int(rng.gen_range(-5..=5))
        };
    }
    match rng.gen_range(0..10) {
        0..=2 => Add(b(random_ast(rng, nvars, depth - 1)), b(random_ast(rng, nvars, depth - 1))),
        3 | 4 => Sub(b(random_ast(rng, nvars, depth - 1)), b(random_ast(rng, nvars, depth - 1))),
        5..=7 => Mul(b(random_ast(rng, nvars, depth - 1)), b(random_ast(rng, nvars, depth - 1))),
        8 => Div(b(random_ast(rng, nvars, depth - 1)), b(positive_ast(rng, nvars))),
        _ => Pow(b(random_ast(rng, nvars, depth - 1)), rng.gen_range(2..=3)),
    }
}

/// A small expression that is positive on the positive orthant.
pub fn positive_ast<R: Rng>(rng: &mut R, nvars: usize) -> Ast {
    let v = Var(rng.gen_range(0..nvars));
    let k = Int(rng.gen_range(1..=4));
    match rng.gen_range(0..3) {
        0 => Add(b(v), b(k)),
        1 => Add(b(Mul(b(v.clone()), b(Var(rng.gen_range(0..nvars))))), b(k)),
        _ => Add(b(Pow(b(v), 2)), b(k)),
    }
}

/// An equivalent tree: commuted, re-associated, and multiplied by p/p.
pub fn rewrite<R: Rng>(rng: &mut R, a: &Ast, nvars: usize) -> Ast {
    let out = match a {
        Int(_) | Var(_) => a.clone(),
        Add(x, y) => {
            let (x, y) = (rewrite(rng, x, nvars), rewrite(rng, y, nvars));
            match (&y, rng.gen_range(0..3)) {
                (Add(y1, y2), 0) => Add(b(Add(b(x), y1.clone())), y2.clone()),
                (_, 1) => Add(b(y), b(x)),
                _ => Add(b(x), b(y)),
            }
        }
        Sub(x, y) => {
            let (x, y) = (rewrite(rng, x, nvars), rewrite(rng, y, nvars));
            if rng.gen_bool(0.5) {
                Add(b(x), b(Mul(b(Int(-1)), b(y))))
            } else {
                Sub(b(x), b(y))
            }
        }
        Mul(x, y) => {
            let (x, y) = (rewrite(rng, x, nvars), rewrite(rng, y, nvars));
            match (&x, rng.gen_range(0..3)) {
                (Mul(x1, x2), 0) => Mul(x1.clone(), b(Mul(x2.clone(), b(y)))),
                (_, 1) => Mul(b(y), b(x)),
                _ => Mul(b(x), b(y)),
            }
        }
        Div(x, y) => Div(b(rewrite(rng, x, nvars)), b(rewrite(rng, y, nvars))),
        Pow(x, e) => {
            let x = rewrite(rng, x, nvars);
            if *e == 2 && rng.gen_bool(0.5) {
                Mul(b(x.clone()), b(x))
            } else {
                Pow(b(x), *e)
            }
        }
    };
    if rng.gen_bool(0.15) {
        let p = positive_ast(rng, nvars);
        let factors = [Mul(b(out.clone()), b(Div(b(p.clone()), b(p.clone())))), Div(b(Mul(b(p.clone()), b(out.clone()))), b(p))];
        factors.choose(rng).unwrap().clone()
    } else {
        out
    }
}

/// Fully parenthesized text in the kernel grammar.
pub fn render(a: &Ast, names: &[String]) -> String {
    match a {
        Int(n) if *n < 0 => format!("({})", n),
        Int(n) => n.to_string(),
        Var(v) => names[*v].clone(),
        Add(x, y) => format!("({} + {})", render(x, names), render(y, names)),
        Sub(x, y) => format!("({} - {})", render(x, names), render(y, names)),
        Mul(x, y) => format!("({} * {})", render(x, names), render(y, names)),
        Div(x, y) => format!("({} / {})", render(x, names), render(y, names)),
        Pow(x, e) => format!("({}^{})", render(x, names), e),
    }
}

pub fn eval_f64(a: &Ast, pt: &[f64]) -> f64 {
    match a {
        Int(n) => *n as f64,
        Var(v) => pt[*v],
        Add(x, y) => eval_f64(x, pt) + eval_f64(y, pt),
        Sub(x, y) => eval_f64(x, pt) - eval_f64(y, pt),
        Mul(x, y) => eval_f64(x, pt) * eval_f64(y, pt),
        Div(x, y) => eval_f64(x, pt) / eval_f64(y, pt),
        Pow(x, e) => eval_f64(x, pt).powi(*e),
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut r, mut bb) = (1u128, b as u128 % p as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % p as u128;
        }
        bb = bb * bb % p as u128;
        e >>= 1;
    }
    r as u64
}

/// Evaluate modulo prime `p`; `None` if some denominator vanishes.
pub fn eval_mod(a: &Ast, pt: &[u64], p: u64) -> Option<u64> {
    let m = |x: u128| (x % p as u128) as u64;
    Some(match a {
        Int(n) => (*n).rem_euclid(p as i64) as u64,
        Var(v) => pt[*v] % p,
        Add(x, y) => m(eval_mod(x, pt, p)? as u128 + eval_mod(y, pt, p)? as u128),
        Sub(x, y) => m(eval_mod(x, pt, p)? as u128 + (p - eval_mod(y, pt, p)?) as u128),
        Mul(x, y) => m(eval_mod(x, pt, p)? as u128 * eval_mod(y, pt, p)? as u128),
        Div(x, y) => {
            let d = eval_mod(y, pt, p)?;
            if d == 0 {
                return None;
            }
            m(eval_mod(x, pt, p)? as u128 * pow_mod(d, p - 2, p) as u128)
        }
        Pow(x, e) => pow_mod(eval_mod(x, pt, p)?, *e as u64, p),
    })
}
