use std::sync::Arc;

use projsurf::appell::{self, Family};
use projsurf::gkz::{self, ExponentData, GkzData, ThetaOperator};
use projsurf::presets::{f2_xy, f4_xy};
use projsurf::rank4::{connection_form, is_zero_matrix, maurer_cartan_residual, System};
use projsurf::{parse, RatExpr, VarTable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn e(t: &str, v: &Arc<VarTable>) -> RatExpr {
    parse(t, v).unwrap()
}

fn f2_data() -> (GkzData, gkz::ReductionPlan) {
    let (d, g, plan) = gkz::f2_preset(&f2_xy());
    (GkzData::new(&d, g).unwrap(), plan)
}

#[test]
fn f2_cayley_matrix() {
    let (d, _, _) = gkz::f2_preset(&f2_xy());
    let want = vec![
        vec![1, 1, 1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1, 0, 0, 1],
    ];
    assert_eq!(gkz::cayley(&d).unwrap(), want);
}

#[test]
fn cayley_small_and_bad_inputs() {
    let one = ExponentData { blocks: vec![vec![vec![3]]], k: 1 };
    assert_eq!(gkz::cayley(&one).unwrap(), vec![vec![1], vec![3]]);
    let ragged = ExponentData { blocks: vec![vec![vec![1, 2], vec![0]]], k: 2 };
    assert!(gkz::cayley(&ragged).is_err());
    let short = ExponentData { blocks: vec![vec![vec![1, 2]]], k: 2 };
    assert!(gkz::cayley(&short).is_err());
    assert!(gkz::cayley(&ExponentData { blocks: vec![], k: 1 }).is_err());
}

#[test]
fn kernel_examples() {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    assert!(gkz::lattice_basis(&id).is_empty());
    let b = gkz::lattice_basis(&[vec![1, 1]]);
    assert!(gkz::lattice_eq(&b, &[vec![1, -1]]), "{:?}", b);

    let (data, _) = f2_data();
    assert_eq!(data.lattice.len(), 4);
    assert!(gkz::lattice_eq(&data.lattice, &gkz::f2_displayed_lattice()));
    // a different basis of the same lattice
    let l = gkz::f2_displayed_lattice();
    let mixed: Vec<Vec<i64>> = vec![
        l[0].iter().zip(&l[1]).map(|(a, b)| a + b).collect(),
        l[1].clone(),
        l[2].iter().zip(&l[3]).map(|(a, b)| a - 2 * b).collect(),
        l[3].clone(),
    ];
    assert!(gkz::lattice_eq(&data.lattice, &mixed));
    assert!(!gkz::lattice_eq(&data.lattice, &l[..3]));
}

#[test]
fn kernel_vectors_are_homogeneous() {
    for (fam, v) in [(Family::F2, f2_xy()), (Family::F4, f4_xy())] {
        let (data, _) = gkz::derive(fam, &v).unwrap();
        assert!(!data.lattice.is_empty());
        for l in &data.lattice {
            assert_eq!(l.iter().sum::<i64>(), 0);
            for row in &data.a {
                assert_eq!(row.iter().zip(l).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
    }
}

#[test]
fn box_operator_examples() {
    let v = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
    let n = 9;
    let d = |i: usize| ThetaOperator::v(&v, n, i, -1).mul(&ThetaOperator::theta(&v, n, i));
    let ops = gkz::box_operators(&v, &[vec![0, 0, 0, -1, 1, 0, 0, 0, 0], vec![0, 0, 0, 1, 0, -1, -1, 0, 1]]);
    assert_eq!(ops[0], (d(4), d(3)));
    let word = |i: usize, j: usize| {
        ThetaOperator::v(&v, n, i, -1)
            .mul(&ThetaOperator::v(&v, n, j, -1))
            .mul(&ThetaOperator::theta(&v, n, i))
            .mul(&ThetaOperator::theta(&v, n, j))
    };
    assert_eq!(ops[1], (word(3, 8), word(5, 6)));

    let ops = gkz::box_operators(&v, &[vec![2, -2]]);
    let sq = |i: usize| {
        let t = ThetaOperator::theta(&v, 2, i);
        ThetaOperator::v(&v, 2, i, -2).mul(&t.mul(&t).add(&t.neg()))
    };
    assert_eq!(ops[0], (sq(0), sq(1)));
}

#[test]
fn theta_commutation_and_associativity() {
    let v = VarTable::new(&["x", "y"], &["c"]).unwrap();
    let n = 3;
    // theta v = v (theta + 1)
    let lhs = ThetaOperator::theta(&v, n, 0).mul(&ThetaOperator::v(&v, n, 0, 1));
    let rhs = ThetaOperator::v(&v, n, 0, 1).mul(&ThetaOperator::theta(&v, n, 0).add(&ThetaOperator::one(&v, n)));
    assert_eq!(lhs, rhs);

    let mut rng = StdRng::seed_from_u64(3);
    let make = |rng: &mut StdRng| {
        let mut op = ThetaOperator::zero(&v, n);
        for _ in 0..3 {
            let mut w = ThetaOperator::constant(e(&format!("{} + c", rng.gen_range(-3..4)), &v), n);
            for _ in 0..rng.gen_range(1..4) {
                let i = rng.gen_range(0..n);
                w = w.mul(&match rng.gen_range(0..3) {
                    0 => ThetaOperator::theta(&v, n, i),
                    1 => ThetaOperator::v(&v, n, i, rng.gen_range(-2..3)),
                    _ => ThetaOperator::partial(&v, n, i),
                });
            }
            op = op.add(&w);
        }
        op
    };
    for _ in 0..30 {
        let (a, b, c) = (make(&mut rng), make(&mut rng), make(&mut rng));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert!(a.add(&a.neg()).is_zero());
        for (_, t, c) in a.terms() {
            assert!(!c.is_zero());
            assert_eq!(t.len(), n);
        }
    }
}

#[test]
fn f2_homogeneity_rows() {
    let (data, _) = f2_data();
    let v = f2_xy();
    let rows = gkz::homogeneity_relations(&data);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[3].coeffs, vec![0, 1, 0, 0, 0, 0, 0, 1, 0]);
    assert_eq!(rows[3].rhs, e("-beta1", &v));
    assert_eq!(rows[2].coeffs, vec![0, 0, 0, 0, 0, 0, 1, 1, 1]);
    assert_eq!(rows[2].rhs, e("-alpha", &v));
    assert_eq!(rows[2].to_string(), "theta7 + theta8 + theta9 = -alpha");
    // the factor rows sum to the all-ones row
    let m = 3;
    for j in 0..data.columns() {
        assert_eq!(rows[..m].iter().map(|r| r.coeffs[j]).sum::<i64>(), 1);
    }
}

#[test]
fn reductions() {
    let v = f2_xy();
    let (data, plan) = f2_data();
    let sys = gkz::reduce(&data, &plan).unwrap();
    assert_eq!(sys, appell::system(Family::F2, &v).unwrap());
    let mc = maurer_cartan_residual(&connection_form(&System::General(sys)).unwrap()).unwrap();
    assert!(is_zero_matrix(&mc));

    let mut short = plan.clone();
    short.variable_defs.truncate(1);
    assert!(gkz::reduce(&data, &short).is_err());

    let v4 = f4_xy();
    let (_, sys) = gkz::derive(Family::F4, &v4).unwrap();
    assert_eq!(sys, appell::system(Family::F4, &v4).unwrap());
}

#[test]
fn inconsistent_plan_is_rejected() {
    let (data, mut plan) = f2_data();
    // not a lattice vector
    plan.variable_defs[0].1 = vec![1, 0, 0, 0, 0, 0, 0, 0, 0];
    assert!(gkz::reduce(&data, &plan).is_err());
}
