//! Variable tables and standard objects used by the examples and the CLI.

use std::sync::Arc;

use symexpr::{parse, PowerProduct, RatExpr, VarTable};

use crate::rank4::{AsymptoticSystem, GeneralSystem};

pub const F2_PARAMS: [&str; 5] = ["alpha", "beta1", "beta2", "gamma1", "gamma2"];
pub const F4_PARAMS: [&str; 4] = ["alpha", "beta", "gamma1", "gamma2"];

pub fn f2_xy() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &F2_PARAMS).unwrap()
}

pub fn f2_st() -> Arc<VarTable> {
    VarTable::new(&["s", "t"], &F2_PARAMS).unwrap()
}

pub fn f4_xy() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &F4_PARAMS).unwrap()
}

pub fn f4_st() -> Arc<VarTable> {
    VarTable::new(&["s", "t"], &F4_PARAMS).unwrap()
}

pub fn plain_xy() -> Arc<VarTable> {
    VarTable::new(&["x", "y"], &[] as &[&str]).unwrap()
}

pub(crate) fn e(text: &str, v: &Arc<VarTable>) -> RatExpr {
    parse(text, v).unwrap_or_else(|err| panic!("preset expression {:?}: {}", text, err))
}

/// Conjugate coordinates for F2: `(x, y) = (1/s, 1 - t/s)` with gauge
/// `s^alpha (s - t)^(1 - gamma2)`.
pub fn t2(v: &Arc<VarTable>) -> ([RatExpr; 2], PowerProduct) {
    let gauge = PowerProduct::one(v)
        .times(e("s", v), e("alpha", v))
        .and_then(|g| g.times(e("s - t", v), e("1 - gamma2", v)))
        .unwrap();
    ([e("1/s", v), e("1 - t/s", v)], gauge)
}

/// Conjugate coordinates for F4: `(x, y) = (1/(s+t)^2, (s-t)^2/(s+t)^2)` with
/// gauge `(s + t)^(alpha + beta - 1/2) (s - t)^(1/2 - gamma2)`.
pub fn t4(v: &Arc<VarTable>) -> ([RatExpr; 2], PowerProduct) {
    let gauge = PowerProduct::one(v)
        .times(e("s + t", v), e("alpha + beta - 1/2", v))
        .and_then(|g| g.times(e("s - t", v), e("1/2 - gamma2", v)))
        .unwrap();
    ([e("1/(s + t)^2", v), e("(s - t)^2/(s + t)^2", v)], gauge)
}

/// `z_xx = 0`, `z_yy = 0` over the plain `(x, y)` table.
pub fn quadric() -> GeneralSystem {
    GeneralSystem::quadric(&plain_xy())
}

/// A ruled canonical system with `alpha(x) y^2 + beta(x) y + gamma(x)` on `z_y`
/// and `-alpha(x) y + delta(x)` on `z`.
pub fn ruled() -> AsymptoticSystem {
    let v = plain_xy();
    AsymptoticSystem {
        b: e("x*y^2 + (x + 1)*y + 1/(x + 2)", &v),
        c: e("0", &v),
        p: e("-x*y + x^2", &v),
        q: e("0", &v),
    }
}

/// The quadric as a canonical system, `b = c = p = q = 0`.
pub fn quadric_asymptotic() -> AsymptoticSystem {
    let z = RatExpr::zero(&plain_xy());
    AsymptoticSystem {
        b: z.clone(),
        c: z.clone(),
        p: z.clone(),
        q: z,
    }
}

pub fn plain_st() -> Arc<VarTable> {
    VarTable::new(&["s", "t"], &[] as &[&str]).unwrap()
}

fn pick<R: rand::Rng>(rng: &mut R, forms: &[&str], var: &str) -> String {
    let k = rng.gen_range(1..=3).to_string();
    forms[rng.gen_range(0..forms.len())].replace('K', &k).replace('V', var)
}

/// A conjugate system of the quadric: `z_xx = z_yy = 0` pulled back along
/// `x = F(S(s) + T(t))`, `y = G(S(s) - T(t))` and divided by a random gauge.
///
/// `dx dy` is diagonal in `(s, t)` for any such map, so the target really is
/// conjugate. Returns the system and a description of the map.
pub fn random_quadric_conjugate<R: rand::Rng>(rng: &mut R) -> crate::Result<(crate::rank4::ConjugateSystem, String)> {
    use crate::rank4::{transport, System, Target};
    let v = plain_st();
    let inner = ["V", "V^2", "K*V^2 + V", "1/(V + K)", "V/(V + K)"];
    let outer = ["U", "U^2", "1/(U + K)", "U/(U + K)", "U^2 + K*U"];
    let s_of = pick(rng, &inner, "s");
    let t_of = pick(rng, &inner, "t");
    let f = pick(rng, &outer, "U").replace('U', &format!("({} + {})", s_of, t_of));
    let g = pick(rng, &outer, "U").replace('U', &format!("({} - {})", s_of, t_of));
    let exps = ["1", "-1", "2", "1/2", "-3/2"];
    let base1 = format!("s + {}*t + {}", rng.gen_range(-2..=2), rng.gen_range(1..=4));
    let base2 = format!("s*t + {}", rng.gen_range(1..=3));
    let e1 = exps[rng.gen_range(0..exps.len())];
    let e2 = exps[rng.gen_range(0..exps.len())];
    let gauge = PowerProduct::one(&v).times(e(&base1, &v), e(e1, &v))?.times(e(&base2, &v), e(e2, &v))?;
    let map = [parse(&f, &v)?, parse(&g, &v)?];
    let desc = format!("x = {}, y = {}, gauge ({})^({}) ({})^({})", f, g, base1, e1, base2, e2);
    match transport(&System::General(quadric()), [&map[0], &map[1]], &gauge, Target::Conjugate)? {
        System::Conjugate(c) => Ok((c, desc)),
        _ => unreachable!("conjugate target"),
    }
}

/// `n` samples of [`random_quadric_conjugate`] with both invariants nonzero,
/// reproducible from `seed`.
pub fn random_quadric_conjugates(seed: u64, n: usize) -> Vec<(crate::rank4::ConjugateSystem, String)> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let Ok((c, d)) = random_quadric_conjugate(&mut rng) else { continue };
        match crate::congruence::invariants(&c) {
            Ok((h, k)) if !h.is_zero() && !k.is_zero() => out.push((c, d)),
            _ => {}
        }
    }
    out
}
