use std::sync::Arc;

use projsurf::appell::{self, Family};
use projsurf::congruence::{self, Sign};
use projsurf::hyper2;
use projsurf::presets::{self, f2_st, f2_xy, f4_st, f4_xy, plain_xy};
use projsurf::rank4::{connection_form, is_zero_matrix, maurer_cartan_residual, ConjugateSystem, System};
use projsurf::{parse, Error, RatExpr, VarTable};

fn e(t: &str, v: &Arc<VarTable>) -> RatExpr {
    parse(t, v).unwrap()
}

fn conj(v: &Arc<VarTable>, f: [&str; 7]) -> ConjugateSystem {
    let [a, b, c, q, m, n, r] = f.map(|t| e(t, v));
    ConjugateSystem { a, b, c, q, m, n, r }
}

fn integrable(c: &ConjugateSystem) -> bool {
    is_zero_matrix(&maurer_cartan_residual(&connection_form(&System::Conjugate(c.clone())).unwrap()).unwrap())
}

fn f2() -> ConjugateSystem {
    appell::conjugate_form(Family::F2, &f2_xy(), &f2_st()).unwrap()
}

fn vec4(v: &Arc<VarTable>, t: [&str; 4]) -> [RatExpr; 4] {
    t.map(|s| e(s, v))
}

#[test]
fn trivial_transforms_fix_the_hyperbolic_row() {
    let v = plain_xy();
    let s = conj(&v, ["0", "0", "-1", "1", "0", "0", "0"]);
    for sign in [Sign::Plus, Sign::Minus] {
        let rep = congruence::transform(&s, sign).unwrap();
        assert!(rep.invariant_used.is_one());
        let o = rep.output;
        assert!(o.a.is_zero() && o.b.is_zero());
        assert_eq!(o.c, e("-1", &v));
    }
}

#[test]
fn degenerate_invariants_are_rejected() {
    let v = plain_xy();
    // h = ab + a_x - c = 0
    let s = conj(&v, ["0", "1", "0", "1", "0", "0", "0"]);
    assert!(matches!(congruence::positive_transform(&s), Err(Error::Degenerate(_))));
    assert!(congruence::negative_transform(&conj(&v, ["1", "0", "0", "1", "0", "0", "0"])).is_err());
    assert!(congruence::positive_transform(&conj(&v, ["0", "0", "-1", "0", "0", "0", "0"])).is_err());
}

#[test]
fn weingarten_examples() {
    let v = plain_xy();
    let s = conj(&v, ["x", "0", "0", "x^2", "0", "0", "0"]);
    assert_eq!(congruence::weingarten(&s, Sign::Plus).unwrap(), e("2*x^4", &v));
    let s = conj(&v, ["0", "x*y^2", "0", "1", "0", "x^2*y", "0"]);
    assert_eq!(congruence::weingarten(&s, Sign::Minus).unwrap(), e("2*x*y", &v));
    let c = f2();
    for sign in [Sign::Plus, Sign::Minus] {
        assert!(congruence::weingarten(&c, sign).unwrap().is_zero());
    }
    let c4 = appell::conjugate_form(Family::F4, &f4_xy(), &f4_st()).unwrap();
    for sign in [Sign::Plus, Sign::Minus] {
        assert!(congruence::weingarten(&c4, sign).unwrap().is_zero());
    }
}

#[test]
fn invariant_exchange_and_integrability() {
    for (c, desc) in presets::random_quadric_conjugates(5, 4) {
        let base = hyper2::laplace_invariants(&c.hyperbolic());
        let next = hyper2::higher_invariants(&c.hyperbolic(), -1, 1).unwrap();
        let plus = congruence::positive_transform(&c).unwrap().output;
        let minus = congruence::negative_transform(&c).unwrap().output;
        let (hp, hm) = (hyper2::laplace_invariants(&plus.hyperbolic()), hyper2::laplace_invariants(&minus.hyperbolic()));
        assert_eq!(hp.k, base.h, "{}", desc);
        assert_eq!(hp, next[2].1, "{}", desc);
        assert_eq!(hm.h, base.k, "{}", desc);
        assert_eq!(hm, next[0].1, "{}", desc);
        assert!(integrable(&plus) && integrable(&minus), "{}", desc);
    }
}

#[test]
fn f2_sequence_follows_recursion() {
    let c = f2();
    assert!(congruence::transform_sequence(&c, 0).unwrap().is_empty());
    let seq = congruence::transform_sequence(&c, 2).unwrap();
    let rec = hyper2::higher_invariants(&c.hyperbolic(), 0, 2).unwrap();
    assert_eq!(seq.len(), 2);
    for (i, rep) in seq.iter().enumerate() {
        assert_eq!(hyper2::laplace_invariants(&rep.output.hyperbolic()), rec[i + 1].1);
    }
    let st = f2_st();
    assert_eq!(rec[1].1.h, e("(beta2 + 1)*(beta2 - gamma2 + 2)/(s - t)^2", &st));
    assert!(integrable(&seq[0].output));
}

#[test]
fn forward_then_back_restores_invariants() {
    let c = f2();
    let up = congruence::transform_sequence(&c, 1).unwrap().pop().unwrap().output;
    let back = congruence::transform_sequence(&up, -1).unwrap().pop().unwrap().output;
    assert_eq!(hyper2::laplace_invariants(&back.hyperbolic()), hyper2::laplace_invariants(&c.hyperbolic()));
}

#[test]
fn weingarten_matches_conformal_test() {
    let v = plain_xy();
    let mut cases: Vec<ConjugateSystem> = presets::random_quadric_conjugates(9, 3).into_iter().map(|c| c.0).collect();
    cases.push(conj(&v, ["x", "0", "-1", "x^2", "0", "0", "0"]));
    cases.push(conj(&v, ["x + y", "1", "0", "x*y + 1", "y", "x", "0"]));
    let mut nonzero = 0;
    for c in &cases {
        for sign in [Sign::Plus, Sign::Minus] {
            let w = congruence::weingarten(c, sign).unwrap();
            nonzero += usize::from(!w.is_zero());
            assert_eq!(w.is_zero(), congruence::conformal_match(c, sign).unwrap(), "{} {:?}", sign, c);
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn quad_quad_residuals_are_nonzero_generically() {
    let (r1, r2) = congruence::quad_quad_residuals(&f2(), Sign::Plus).unwrap();
    assert!(!r1.is_zero() || !r2.is_zero());
    let v = plain_xy();
    let s = conj(&v, ["x", "y", "1", "x + 2", "x*y", "1", "y"]);
    for sign in [Sign::Plus, Sign::Minus] {
        let (r1, r2) = congruence::quad_quad_residuals(&s, sign).unwrap();
        assert!(!r1.is_zero() || !r2.is_zero());
    }
}

#[test]
fn plucker_examples() {
    let v = plain_xy();
    let p = congruence::plucker(&vec4(&v, ["1", "0", "0", "0"]), &vec4(&v, ["0", "1", "0", "0"])).unwrap();
    assert!(p.p01.is_one());
    assert!(p.coords()[1..].iter().all(|c| c.is_zero()));

    let p = congruence::plucker(&vec4(&v, ["1", "x", "0", "0"]), &vec4(&v, ["0", "0", "1", "y"])).unwrap();
    let got: Vec<RatExpr> = p.coords().into_iter().cloned().collect();
    assert_eq!(got, ["0", "1", "y", "x", "x*y", "0"].map(|t| e(t, &v)).to_vec());
    assert!(p.klein().is_zero());
    // the relation with p03 p23 as last term fails here
    assert!(!(&(&p.p01 * &p.p23 - &p.p02 * &p.p13) + &(&p.p03 * &p.p23)).is_zero());

    let z = vec4(&v, ["1", "x", "y", "x*y"]);
    let w = vec4(&v, ["x", "x^2", "x*y", "x^2*y"]);
    assert!(matches!(congruence::plucker(&z, &w), Err(Error::Proportional)));
}

#[test]
fn klein_relation_on_random_pairs() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let v = plain_xy();
    let mut rng = StdRng::seed_from_u64(4);
    let forms = ["x", "y", "x*y + 1", "1/(x + 2)", "x^2 - y", "3", "y/(x - 1)"];
    for _ in 0..30 {
        let mut pick = || -> [RatExpr; 4] { std::array::from_fn(|_| e(forms[rng.gen_range(0..forms.len())], &v)) };
        let (a, b) = (pick(), pick());
        if let Ok(p) = congruence::plucker(&a, &b) {
            assert!(p.klein().is_zero());
        }
    }
}

#[test]
fn developability_examples() {
    let v = plain_xy();
    let z = vec4(&v, ["1", "x", "y", "x*y"]);
    let (p, q, r) = congruence::developability_form(&z, &z).unwrap();
    assert!(p.is_zero() && q.is_zero() && r.is_zero());

    let (p, q, r) = congruence::developability_form(&vec4(&v, ["1", "x", "0", "0"]), &vec4(&v, ["0", "0", "1", "y"])).unwrap();
    assert!(p.is_zero() && r.is_zero());
    assert!(q == e("1/2", &v) || q == e("-1/2", &v), "Q = {}", q);

    let a = e("x^2 + 3", &v);
    let w: [RatExpr; 4] = std::array::from_fn(|i| &z[i].diff("y").unwrap() + &(&a * &z[i]));
    let (_, _, r) = congruence::developability_form(&z, &w).unwrap();
    assert!(r.is_zero());
}
