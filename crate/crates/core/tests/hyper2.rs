use std::collections::HashMap;
use std::sync::Arc;

use projsurf::hyper2::{self, HyperbolicEq, Standard};
use projsurf::{parse, PowerProduct, RatExpr, VarTable};
use rand::rngs::StdRng;
use rand::SeedableRng;
use symexpr::corpus::{random_ast, render};

fn e(t: &str, v: &Arc<VarTable>) -> RatExpr {
    parse(t, v).unwrap()
}

fn eq(a: &str, b: &str, c: &str, v: &Arc<VarTable>) -> HyperbolicEq {
    HyperbolicEq::new(e(a, v), e(b, v), e(c, v)).unwrap()
}

fn pull(f: &RatExpr, x: RatExpr, y: RatExpr) -> RatExpr {
    let map: HashMap<String, RatExpr> = [("x".to_string(), x.clone()), ("y".to_string(), y)].into();
    f.substitute(&map, x.vars()).unwrap()
}

fn epd_vars() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &["beta", "betap", "lambda"]).unwrap()
}

fn epd() -> HyperbolicEq {
    let v = epd_vars();
    hyper2::standard_equation(&Standard::Epd { beta: e("beta", &v), beta_prime: e("betap", &v) }, &v).unwrap()
}

fn random_eqs(n: usize, seed: u64) -> Vec<HyperbolicEq> {
    let v = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let names = v.names().to_vec();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let mut pick = || loop {
            if let Ok(r) = parse(&render(&random_ast(&mut rng, 2, 3), &names), &v) {
                break r;
            }
        };
        let (a, b, c) = (pick(), pick(), pick());
        out.push(HyperbolicEq::new(a, b, c).unwrap());
    }
    out
}

#[test]
fn f2_first_invariants() {
    let v = VarTable::new(&["s", "t"], &["beta2", "gamma2"]).unwrap();
    let inv = hyper2::laplace_invariants(&eq("-(1 - gamma2 + beta2)/(s - t)", "-(beta2 - 1)/(s - t)", "0", &v));
    assert_eq!(inv.h, e("beta2*(beta2 - gamma2 + 1)/(s - t)^2", &v));
    assert_eq!(inv.k, e("(beta2 - 1)*(beta2 - gamma2)/(s - t)^2", &v));
}

#[test]
fn pure_potential_has_equal_invariants() {
    let v = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let inv = hyper2::laplace_invariants(&eq("0", "0", "x*y/(x + y^2 + 1)", &v));
    assert_eq!(inv.h, e("-x*y/(x + y^2 + 1)", &v));
    assert_eq!(inv.h, inv.k);
}

#[test]
fn invariants_match_second_path() {
    for eq in random_eqs(40, 1) {
        let inv = hyper2::laplace_invariants(&eq);
        let h = eq.a.try_mul(&eq.b).unwrap().try_add(&eq.a.diff("x").unwrap()).unwrap().try_sub(&eq.c).unwrap();
        let k = eq.a.try_mul(&eq.b).unwrap().try_add(&eq.b.diff("y").unwrap()).unwrap().try_sub(&eq.c).unwrap();
        assert_eq!(inv.h, h);
        assert_eq!(inv.k, k);
        assert_eq!(&inv.h - &inv.k, eq.a.diff("x").unwrap() - eq.b.diff("y").unwrap());
    }
}

#[test]
fn gauge_examples() {
    let base = epd();
    let v = base.vars().clone();
    assert_eq!(hyper2::gauge_transform(&base, &PowerProduct::one(&v)).unwrap(), base);
    let f = PowerProduct::one(&v).times(e("x - y", &v), e("lambda", &v)).unwrap();
    let g = hyper2::gauge_transform(&base, &f).unwrap();
    assert_eq!(g.a, &base.a - &e("lambda/(x - y)", &v));
    assert_eq!(g.b, &base.b + &e("lambda/(x - y)", &v));
    assert_eq!(hyper2::laplace_invariants(&g), hyper2::laplace_invariants(&base));
}

#[test]
fn gauge_invariance_on_random_equations() {
    let eqs = random_eqs(20, 2);
    let v = eqs[0].vars().clone();
    for (i, eq) in eqs.iter().enumerate() {
        let f = PowerProduct::one(&v)
            .times(e(&format!("x + {}*y + 1", i % 3 + 1), &v), e("3/2", &v))
            .unwrap()
            .times(e("x*y + 2", &v), e(&format!("{}", i as i64 - 7), &v))
            .unwrap();
        let g = hyper2::gauge_transform(eq, &f).unwrap();
        assert_eq!(hyper2::laplace_invariants(&g), hyper2::laplace_invariants(eq));
    }
}

#[test]
fn coordinate_change_examples() {
    let base = epd();
    let v = base.vars().clone();
    let uv = VarTable::new(&["u", "v"], &["beta", "betap", "lambda"]).unwrap();
    let same = hyper2::coordinate_change(&base, &e("x", &v), &e("y", &v), &e("u", &uv), &e("v", &uv)).unwrap();
    assert_eq!(same.a, pull(&base.a, e("u", &uv), e("v", &uv)));
    assert_eq!(same.b, pull(&base.b, e("u", &uv), e("v", &uv)));

    // translation: unit Jacobian, h simply moves
    let moved = hyper2::coordinate_change(&base, &e("x + 1", &v), &e("y", &v), &e("u - 1", &uv), &e("v", &uv)).unwrap();
    assert_eq!(hyper2::laplace_invariants(&moved).h, e("betap*(beta + 1)/(u - 1 - v)^2", &uv));

    // u = 1/x: h picks up dx/du = -1/u^2
    let inv = hyper2::coordinate_change(&base, &e("1/x", &v), &e("y", &v), &e("1/u", &uv), &e("v", &uv)).unwrap();
    let h = hyper2::laplace_invariants(&inv).h;
    let want = &e("betap*(beta + 1)/(1/u - v)^2", &uv) * &e("-1/u^2", &uv);
    assert_eq!(h, want);

    // a wrong inverse is rejected
    assert!(hyper2::coordinate_change(&base, &e("1/x", &v), &e("y", &v), &e("u", &uv), &e("v", &uv)).is_err());
}

#[test]
fn covariance_under_random_separable_changes() {
    let uv = VarTable::new(&["u", "v"], &[] as &[&str]).unwrap();
    let mut checked = 0;
    let maps = [("x + 2", "u - 2"), ("1/x", "1/u"), ("x/(x + 1)", "u/(1 - u)"), ("3*x", "u/3")];
    for (i, eq) in random_eqs(12, 3).iter().enumerate() {
        let v = eq.vars().clone();
        let (fx, ix) = maps[i % 4];
        let (fy, iy) = maps[(i + 1) % 4];
        let (fy, iy) = (fy.replace('x', "y"), iy.replace('u', "v"));
        let Ok(moved) = hyper2::coordinate_change(eq, &e(fx, &v), &e(&fy, &v), &e(ix, &uv), &e(&iy, &uv)) else {
            continue;
        };
        let h_new = hyper2::laplace_invariants(&moved).h;
        let xu = e(ix, &uv).diff("u").unwrap();
        let yv = e(&iy, &uv).diff("v").unwrap();
        let back = pull(&hyper2::laplace_invariants(eq).h, e(ix, &uv), e(&iy, &uv));
        assert_eq!(h_new, &(&back * &xu) * &yv);
        checked += 1;
    }
    assert!(checked >= 8, "only {} changes applied", checked);
}

#[test]
fn higher_invariants_examples() {
    let v = VarTable::new(&["s", "t"], &["beta2", "gamma2"]).unwrap();
    let f2 = eq("-(1 - gamma2 + beta2)/(s - t)", "-(beta2 - 1)/(s - t)", "0", &v);
    let seq = hyper2::higher_invariants(&f2, 0, 3).unwrap();
    assert_eq!(seq[1].1.h, e("(beta2 + 1)*(beta2 - gamma2 + 2)/(s - t)^2", &v));
    assert_eq!(seq[2].1.h, e("(beta2 + 2)*(beta2 - gamma2 + 3)/(s - t)^2", &v));
    for w in seq.windows(2) {
        assert_eq!(w[1].1.k, w[0].1.h);
    }

    // constant h = k: (log h)_xy = 0, so h_n = (n + 1) h - n k
    let w = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let consts = hyper2::higher_invariants(&eq("0", "0", "-2", &w), 0, 3).unwrap();
    assert!(consts.iter().all(|(_, p)| p.h == e("2", &w)));

    let hv = VarTable::new(&["x", "y"], &["alpha", "beta"]).unwrap();
    let harm = hyper2::standard_equation(&Standard::Harmonic { alpha: e("alpha", &hv), beta: e("beta", &hv) }, &hv).unwrap();
    let seq = hyper2::higher_invariants(&harm, 0, 1).unwrap();
    let h = &seq[0].1.h;
    assert_eq!(seq[1].1.h, h - &h.diff("x").unwrap().try_div(h).unwrap().diff("y").unwrap());
}

#[test]
fn vanishing_invariant_reports_index() {
    let v = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let err = hyper2::higher_invariants(&eq("0", "0", "0", &v), 0, 2).unwrap_err();
    assert_eq!(err, projsurf::Error::Degenerate(0));
}

#[test]
fn standard_equations() {
    let hv = VarTable::new(&["x", "y"], &["alpha", "beta"]).unwrap();
    let harm = hyper2::standard_equation(&Standard::Harmonic { alpha: e("alpha", &hv), beta: e("beta", &hv) }, &hv).unwrap();
    let inv = hyper2::laplace_invariants(&harm);
    assert_eq!(inv.h, -&harm.c);
    assert_eq!(inv.k, -&harm.c);

    let v = epd_vars();
    let wave = hyper2::standard_equation(&Standard::Epd { beta: e("0", &v), beta_prime: e("0", &v) }, &v).unwrap();
    assert!(wave.a.is_zero() && wave.b.is_zero() && wave.c.is_zero());

    // direct computation; the roles of beta and betap differ from the printed pair
    let inv = hyper2::laplace_invariants(&epd());
    assert_eq!(inv.h, e("betap*(beta + 1)/(x - y)^2", &v));
    assert_eq!(inv.k, e("beta*(betap - 1)/(x - y)^2", &v));
    assert_ne!(inv.h, e("beta*(betap + 1)/(x - y)^2", &v));
}
