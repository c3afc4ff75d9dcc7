use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symexpr::corpus::{eval_f64, eval_mod, random_ast, render, rewrite, Ast};
use symexpr::{parse, PowerProduct, RatExpr, VarTable};

const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn xy() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &["a", "b"]).unwrap()
}

fn st() -> Arc<VarTable> {
    VarTable::new(&["s", "t"], &["alpha", "gamma2"]).unwrap()
}

fn e(text: &str, v: &Arc<VarTable>) -> RatExpr {
    parse(text, v).unwrap()
}

/// Oracle equality: agreement at 20 random residues mod P.
fn oracle_equal(a: &Ast, b: &Ast, n: usize, rng: &mut StdRng) -> bool {
    let mut agree = 0;
    let mut tries = 0;
    while agree < 20 && tries < 200 {
        tries += 1;
        let pt: Vec<u64> = (0..n).map(|_| rng.gen_range(1..P)).collect();
        match (eval_mod(a, &pt, P), eval_mod(b, &pt, P)) {
            (Some(x), Some(y)) if x == y => agree += 1,
            (Some(_), Some(_)) => return false,
            _ => {}
        }
    }
    agree == 20
}

#[test]
fn spec_examples() {
    let v = st();
    let q = e("(s-1)*s/((t-1)*t)", &v);
    assert!(q.is_canonical());
    assert!(e("0", &v).is_zero());
    assert_eq!(e("s^2/s", &v), e("s", &v));
    assert_eq!(
        q.diff("s").unwrap(),
        e("(2*s - 1)/((t - 1)*t)", &v)
    );
    assert!(e("alpha*gamma2", &v).diff("s").unwrap().is_zero());
    let w = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let (x, y) = (e("x", &w), e("y", &w));
    assert!((&x + &(-&x)).is_zero());
    assert!((e("1/(x - y)", &w) * e("x - y", &w)).is_one());
    assert_eq!(e("x^2 - y^2", &w) / e("x - y", &w), &x + &y);
    assert_ne!(x, y);
}

#[test]
fn derivative_matches_central_difference() {
    let v = st();
    let d = e("1/(s - t)", &v).diff("t").unwrap();
    assert_eq!(d, e("1/(s - t)^2", &v));
    let f = |t: f64| 1.0 / (3.0 - t);
    let h = 1e-5;
    let fd = (f(2.0 + h) - f(2.0 - h)) / (2.0 * h);
    let exact = d.eval_f64(&[3.0, 2.0, 0.0, 0.0]);
    assert!(((fd - exact) / exact).abs() < 1e-9);
}

#[test]
fn substitution_examples() {
    let old = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let new = VarTable::new(&["s", "t"], &[] as &[&str]).unwrap();
    let mut map = HashMap::new();
    map.insert("x".to_string(), e("1/s", &new));
    map.insert("y".to_string(), e("1 - t/s", &new));
    let r = e("x*y", &old).substitute(&map, &new).unwrap();
    assert_eq!(r, e("(s - t)/s^2", &new));
    let val = r.eval_f64(&[3.0, 2.0]);
    assert!((val - 1.0 / 9.0).abs() < 1e-15);
    let same = e("x*y + 1/x", &old);
    let id: HashMap<String, RatExpr> = HashMap::new();
    assert_eq!(same.substitute(&id, &old).unwrap(), same);
    map.insert("x".to_string(), e("1", &new));
    assert!(e("1/(1 - x)", &old).substitute(&map, &new).is_err());
}

#[test]
fn log_derivative_examples() {
    let v = st();
    let g = PowerProduct::one(&v)
        .times(e("s - t", &v), e("1 - gamma2", &v))
        .unwrap();
    assert_eq!(g.log_derivative("t").unwrap(), e("(gamma2 - 1)/(s - t)", &v));
    let numeric = {
        let f = |t: f64| (3.0 - t).powf(1.0 - 1.2);
        let h = 1e-6;
        (f(2.0 + h) - f(2.0 - h)) / (2.0 * h) / f(2.0)
    };
    let exact = g.log_derivative("t").unwrap().eval_f64(&[3.0, 2.0, 0.0, 1.2]);
    assert!((numeric - exact).abs() < 1e-8);
    let sa = PowerProduct::one(&v).times(e("s", &v), e("alpha", &v)).unwrap();
    assert!(sa.log_derivative("t").unwrap().is_zero());
    let full = sa.concat(&g).unwrap();
    assert_eq!(
        full.log_derivative("s").unwrap(),
        e("alpha/s + (1 - gamma2)/(s - t)", &v)
    );
    assert!(PowerProduct::one(&v).times(e("s", &v), e("t", &v)).is_err());
}

#[test]
fn rewritten_pairs_share_canonical_form() {
    let v = xy();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let a = random_ast(&mut rng, 4, 4);
        let b = rewrite(&mut rng, &a, 4);
        let (ea, eb) = (parse(&render(&a, &names), &v), parse(&render(&b, &names), &v));
        match (ea, eb) {
            (Ok(ea), Ok(eb)) => {
                assert_eq!(ea, eb, "{} vs {}", render(&a, &names), render(&b, &names));
                assert!(ea.is_canonical());
            }
            (Err(_), Err(_)) => {}
            other => panic!("inconsistent parse results {:?}", other),
        }
    }
}

#[test]
fn equality_agrees_with_modular_oracle() {
    let v = xy();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(12);
    for i in 0..300 {
        let a = random_ast(&mut rng, 4, 3);
        let b = if i % 2 == 0 {
            rewrite(&mut rng, &a, 4)
        } else {
            random_ast(&mut rng, 4, 3)
        };
        let (Ok(ea), Ok(eb)) = (parse(&render(&a, &names), &v), parse(&render(&b, &names), &v)) else {
            continue;
        };
        assert_eq!(ea == eb, oracle_equal(&a, &b, 4, &mut rng));
    }
}

#[test]
fn print_parse_round_trip() {
    let v = xy();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..200 {
        let a = random_ast(&mut rng, 4, 4);
        if let Ok(ea) = parse(&render(&a, &names), &v) {
            let back = parse(&ea.to_string(), &v).unwrap();
            assert_eq!(back, ea);
            assert_eq!(back.to_string(), ea.to_string());
        }
    }
}

#[test]
fn modular_evaluation_matches_tree() {
    let v = xy();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..200 {
        let a = random_ast(&mut rng, 4, 4);
        let Ok(ea) = parse(&render(&a, &names), &v) else { continue };
        let pt: Vec<u64> = (0..4).map(|_| rng.gen_range(1..P)).collect();
        if let (Some(x), Some(y)) = (eval_mod(&a, &pt, P), ea.eval_mod(&pt, P)) {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn float_evaluation_matches_tree() {
    let v = xy();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..200 {
        let a = random_ast(&mut rng, 4, 3);
        let Ok(ea) = parse(&render(&a, &names), &v) else { continue };
        let pt: Vec<f64> = (0..4).map(|_| rng.gen_range(0.5..1.5)).collect();
        let (x, y) = (eval_f64(&a, &pt), ea.eval_f64(&pt));
        assert!((x - y).abs() <= 1e-8 * x.abs().max(1.0), "{} vs {}", x, y);
    }
}

fn arb_expr() -> impl Strategy<Value = String> {
    (any::<u64>(), 1u32..4).prop_map(|(seed, depth)| {
        let mut rng = StdRng::seed_from_u64(seed);
        render(&random_ast(&mut rng, 4, depth), &xy().names().to_vec())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(f in arb_expr(), g in arb_expr()) {
        let v = xy();
        let (f, g) = (parse(&f, &v).unwrap(), parse(&g, &v).unwrap());
        for var in ["x", "y"] {
            let lhs = (&f * &g).diff(var).unwrap();
            let rhs = &(&f * &g.diff(var).unwrap()) + &(&g * &f.diff(var).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mixed_partials_commute(f in arb_expr()) {
        let v = xy();
        let f = parse(&f, &v).unwrap();
        let a = f.diff("x").unwrap().diff("y").unwrap();
        let b = f.diff("y").unwrap().diff("x").unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn field_axioms(f in arb_expr(), g in arb_expr(), h in arb_expr()) {
        let v = xy();
        let (f, g, h) = (parse(&f, &v).unwrap(), parse(&g, &v).unwrap(), parse(&h, &v).unwrap());
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        if !g.is_zero() {
            prop_assert_eq!(&(&f / &g) * &g, f.clone());
        }
    }

    #[test]
    fn log_derivative_is_additive(f in arb_expr(), g in arb_expr(), e1 in -3i64..4, e2 in -3i64..4) {
        let v = xy();
        let (f, g) = (parse(&f, &v).unwrap(), parse(&g, &v).unwrap());
        prop_assume!(!f.is_zero() && !g.is_zero());
        let pf = PowerProduct::one(&v).times(f, RatExpr::int(&v, e1)).unwrap();
        let pg = PowerProduct::one(&v).times(g, &RatExpr::int(&v, e2) + &parse("a", &v).unwrap()).unwrap();
        let both = pf.concat(&pg).unwrap();
        for var in ["x", "y"] {
            prop_assert_eq!(
                both.log_derivative(var).unwrap(),
                &pf.log_derivative(var).unwrap() + &pg.log_derivative(var).unwrap()
            );
        }
    }
}

#[test]
fn parameters_cannot_be_differentiated() {
    let v = xy();
    assert!(e("a*x", &v).diff("a").is_err());
    assert!(e("x", &v).diff("z").is_err());
}

#[test]
fn table_mismatch_is_an_error() {
    let (a, b) = (xy(), st());
    assert!(e("x", &a).try_add(&e("s", &b)).is_err());
    assert!(symexpr::arith("mul", &e("x", &a), &e("s", &b)).is_err());
    assert!(symexpr::arith("div", &e("x", &a), &e("0", &a)).is_err());
}

#[test]
fn derivative_cancels_factors_free_of_the_variable() {
    let v = xy();
    let d = e("1/(y*(x*y + 1))", &v).diff("x").unwrap();
    assert!(d.is_canonical());
    assert_eq!(d, e("-1/(x*y + 1)^2", &v));
    let d = e("x/(y^2*(x*y + 1)^2)", &v).diff("x").unwrap();
    assert!(d.is_canonical());
}
