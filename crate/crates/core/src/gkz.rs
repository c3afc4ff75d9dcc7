//! A-hypergeometric systems from Euler-integral exponent data, and their
//! reduction to rank-4 systems in two variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use symexpr::{linalg, RatExpr, VarTable};

use crate::presets::e;
use crate::rank4::GeneralSystem;
use crate::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

/// One exponent matrix per polynomial factor; column `q` of block `i` is the
/// exponent vector of the `q`-th monomial of `P_i` in the `k` integration
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    pub blocks: Vec<IntMatrix>,
    pub k: usize,
}

impl ExponentData {
    pub fn m(&self) -> usize {
        self.blocks.len()
    }
}

/// Stack unit rows over the concatenated blocks.
pub fn cayley(data: &ExponentData) -> Result<IntMatrix> {
    if data.blocks.is_empty() {
        return Err(Error::Invalid("no exponent blocks".into()));
    }
    let m = data.m();
    let mut a: IntMatrix = vec![vec![]; m + data.k];
    for (i, block) in data.blocks.iter().enumerate() {
        if block.len() != data.k {
            return Err(Error::Invalid(format!("block {} has {} rows, expected {}", i, block.len(), data.k)));
        }
        let cols = block[0].len();
        if block.iter().any(|r| r.len() != cols) || cols == 0 {
            return Err(Error::Invalid(format!("block {} is ragged or empty", i)));
        }
        for q in 0..cols {
            for (r, row) in a.iter_mut().enumerate() {
                row.push(if r < m {
                    (r == i) as i64
                } else {
                    block[r - m][q]
                });
            }
        }
    }
    Ok(a)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped.
pub fn hnf(rows: &[Vec<i64>]) -> IntMatrix {
    let mut a: IntMatrix = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == a.len() {
            break;
        }
        // Euclid on the column among rows rank.. until one nonzero remains.
        loop {
            let nz: Vec<usize> = (rank..a.len()).filter(|&r| a[r][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    a.swap(rank, r);
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| a[r][col].abs()).unwrap();
            for &r in &nz {
                if r != piv {
                    let f = Integer::div_floor(&a[r][col], &a[piv][col]);
                    for j in 0..ncols {
                        a[r][j] -= f * a[piv][j];
                    }
                }
            }
        }
        if a[rank][col] == 0 {
            continue;
        }
        if a[rank][col] < 0 {
            a[rank].iter_mut().for_each(|x| *x = -*x);
        }
        let p = a[rank][col];
        for r in 0..rank {
            let f = Integer::div_floor(&a[r][col], &p);
            if f != 0 {
                for j in 0..ncols {
                    a[r][j] -= f * a[rank][j];
                }
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

pub fn lattice_eq(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    hnf(a) == hnf(b)
}

pub fn in_lattice(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    hnf(&ext) == hnf(basis)
}

/// A basis of `{l in Z^N : A l = 0}`, in Hermite normal form.
pub fn lattice_basis(a: &[Vec<i64>]) -> IntMatrix {
    let n = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    // Rows: [A^T | I]; unimodular row operations keep the right block a basis
    // change, so rows whose left block dies span the kernel.
    let mut m: IntMatrix = (0..ncols)
        .map(|j| {
            let mut row: Vec<i64> = (0..n).map(|i| a[i][j]).collect();
            row.extend((0..ncols).map(|k| (k == j) as i64));
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        loop {
            let nz: Vec<usize> = (rank..ncols).filter(|&r| m[r][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    m.swap(rank, r);
                    rank += 1;
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            for &r in &nz {
                if r != piv {
                    let f = Integer::div_floor(&m[r][col], &m[piv][col]);
                    for j in 0..n + ncols {
                        m[r][j] -= f * m[piv][j];
                    }
                }
            }
        }
    }
    let kernel: IntMatrix = m[rank..].iter().map(|r| r[n..].to_vec()).collect();
    hnf(&kernel)
}

/// Cayley matrix, homogeneity parameters and integer kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct GkzData {
    pub a: IntMatrix,
    pub gamma: Vec<RatExpr>,
    pub lattice: IntMatrix,
}

impl GkzData {
    pub fn new(data: &ExponentData, gamma: Vec<RatExpr>) -> Result<GkzData> {
        let a = cayley(data)?;
        if gamma.len() != a.len() {
            return Err(Error::Invalid(format!("gamma has {} entries for {} rows", gamma.len(), a.len())));
        }
        let lattice = lattice_basis(&a);
        Ok(GkzData { a, gamma, lattice })
    }

    pub fn columns(&self) -> usize {
        self.a[0].len()
    }
}

/// `sum_j coeffs[j] theta_j = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRelation {
    pub coeffs: Vec<i64>,
    pub rhs: RatExpr,
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
            if first {
                write!(f, "{}{}theta{}", sign, mag, j + 1)?;
            } else {
                write!(f, " {} {}theta{}", sign, mag, j + 1)?;
            }
            first = false;
        }
        write!(f, " = {}", self.rhs)
    }
}

pub fn homogeneity_relations(data: &GkzData) -> Vec<LinearRelation> {
    data.a
        .iter()
        .zip(&data.gamma)
        .map(|(row, g)| LinearRelation {
            coeffs: row.clone(),
            rhs: g.clone(),
        })
        .collect()
}

/// A sum of normal-ordered words `c * v^a * theta^b` (all `v` to the left).
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaOperator {
    vars: Arc<VarTable>,
    n: usize,
    terms: BTreeMap<(Vec<i64>, Vec<u32>), RatExpr>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl ThetaOperator {
    pub fn zero(vars: &Arc<VarTable>, n: usize) -> ThetaOperator {
        ThetaOperator {
            vars: vars.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: RatExpr, n: usize) -> ThetaOperator {
        let mut out = ThetaOperator::zero(c.vars(), n);
        out.add_term(vec![0; n], vec![0; n], c);
        out
    }

    pub fn one(vars: &Arc<VarTable>, n: usize) -> ThetaOperator {
        ThetaOperator::constant(RatExpr::one(vars), n)
    }

    pub fn theta(vars: &Arc<VarTable>, n: usize, i: usize) -> ThetaOperator {
        let mut t = vec![0; n];
        t[i] = 1;
        let mut out = ThetaOperator::zero(vars, n);
        out.add_term(vec![0; n], t, RatExpr::one(vars));
        out
    }

    /// Multiplication by `v_i^e`.
    pub fn v(vars: &Arc<VarTable>, n: usize, i: usize, e: i64) -> ThetaOperator {
        let mut a = vec![0; n];
        a[i] = e;
        let mut out = ThetaOperator::zero(vars, n);
        out.add_term(a, vec![0; n], RatExpr::one(vars));
        out
    }

    /// `d/dv_i = v_i^-1 theta_i`.
    pub fn partial(vars: &Arc<VarTable>, n: usize, i: usize) -> ThetaOperator {
        ThetaOperator::v(vars, n, i, -1).mul(&ThetaOperator::theta(vars, n, i))
    }

    fn add_term(&mut self, a: Vec<i64>, t: Vec<u32>, c: RatExpr) {
        if c.is_zero() {
            return;
        }
        let key = (a, t);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Vec<u32>, &RatExpr)> {
        self.terms.iter().map(|((a, t), c)| (a, t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ThetaOperator) -> ThetaOperator {
        let mut out = self.clone();
        for ((a, t), c) in &o.terms {
            out.add_term(a.clone(), t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ThetaOperator {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c = -&*c);
        out
    }

    /// Composition `self * o`, using `theta_i v_i^b = v_i^b (theta_i + b)`.
    pub fn mul(&self, o: &ThetaOperator) -> ThetaOperator {
        let mut out = ThetaOperator::zero(&self.vars, self.n);
        for ((a1, t1), c1) in &self.terms {
            for ((a2, t2), c2) in &o.terms {
                let v: Vec<i64> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                // Expand prod_i (theta_i + a2_i)^t1_i into theta words.
                let mut words: Vec<(Vec<u32>, i64)> = vec![(t2.clone(), 1)];
                for i in 0..self.n {
                    if t1[i] == 0 {
                        continue;
                    }
                    let shift = a2[i];
                    let mut next = Vec::new();
                    for (w, k) in &words {
                        for j in 0..=t1[i] {
                            let coef = binomial(t1[i], j) * shift.pow(t1[i] - j);
                            if coef == 0 {
                                continue;
                            }
                            let mut w2 = w.clone();
                            w2[i] += j;
                            next.push((w2, k * coef));
                        }
                    }
                    words = next;
                }
                let c = c1 * c2;
                for (w, k) in words {
                    out.add_term(v.clone(), w, &c * &RatExpr::int(&self.vars, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((a, t), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c)?;
            for (i, &e) in a.iter().enumerate() {
                if e != 0 {
                    write!(f, "*v{}^{}", i + 1, e)?;
                }
            }
            for (i, &e) in t.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*theta{}", i + 1)?,
                    _ => write!(f, "*theta{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// `(prod_{l_j > 0} d_j^{l_j}, prod_{l_j < 0} d_j^{-l_j})` for each `l`.
pub fn box_operators(vars: &Arc<VarTable>, lattice: &[Vec<i64>]) -> Vec<(ThetaOperator, ThetaOperator)> {
    lattice
        .iter()
        .map(|l| {
            let n = l.len();
            let mut lhs = ThetaOperator::one(vars, n);
            let mut rhs = ThetaOperator::one(vars, n);
            for (j, &e) in l.iter().enumerate() {
                let d = ThetaOperator::partial(vars, n, j);
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        lhs = lhs.mul(&d);
                    } else {
                        rhs = rhs.mul(&d);
                    }
                }
            }
            (lhs, rhs)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceValue {
    Const(i64),
    Var(String),
}

/// New variables `name = prod_j v_j^{l_j}` and the point of the torus slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    pub variable_defs: Vec<(String, Vec<i64>)>,
    pub slice: Vec<SliceValue>,
}

/// Affine form `cx theta_x + cy theta_y + c0`.
#[derive(Clone, Debug)]
struct Affine([RatExpr; 3]);

/// Commutative polynomial in `theta_x`, `theta_y`.
type ThetaPoly = HashMap<(u32, u32), RatExpr>;

fn poly_add(p: &mut ThetaPoly, key: (u32, u32), c: RatExpr) {
    if c.is_zero() {
        return;
    }
    let sum = match p.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        p.insert(key, sum);
    }
}

fn poly_mul_affine(p: &ThetaPoly, a: &Affine) -> ThetaPoly {
    let mut out = ThetaPoly::new();
    for (&(i, j), c) in p {
        poly_add(&mut out, (i + 1, j), c * &a.0[0]);
        poly_add(&mut out, (i, j + 1), c * &a.0[1]);
        poly_add(&mut out, (i, j), c * &a.0[2]);
    }
    out
}

fn stirling2(n: u32, k: u32) -> i64 {
    let mut s = vec![vec![0i64; n as usize + 1]; n as usize + 1];
    s[0][0] = 1;
    for i in 1..=n as usize {
        for j in 1..=i {
            s[i][j] = j as i64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n as usize][k as usize]
}

/// Coefficients of `(F, F_x, F_y, F_xx, F_xy, F_yy)` in a second-order
/// operator.
type Jet2 = [RatExpr; 6];

fn jet_index(i: u32, j: u32) -> Option<usize> {
    match (i, j) {
        (0, 0) => Some(0),
        (1, 0) => Some(1),
        (0, 1) => Some(2),
        (2, 0) => Some(3),
        (1, 1) => Some(4),
        (0, 2) => Some(5),
        _ => None,
    }
}

/// Reduce the GKZ system to a rank-4 system in the plan's two variables.
pub fn reduce(data: &GkzData, plan: &ReductionPlan) -> Result<GeneralSystem> {
    let n = data.columns();
    if plan.variable_defs.len() != 2 {
        return Err(Error::Invalid(format!(
            "a reduction plan needs two new variables, found {}",
            plan.variable_defs.len()
        )));
    }
    if plan.slice.len() != n {
        return Err(Error::Invalid(format!("slice has {} entries for {} columns", plan.slice.len(), n)));
    }
    let pvars = data.gamma[0].vars().clone();
    let names: Vec<String> = plan.variable_defs.iter().map(|d| d.0.clone()).collect();
    let tv = VarTable::new(&names, pvars.params())?;
    let z = RatExpr::zero(&tv);
    let one = RatExpr::one(&tv);
    let slice_expr = |j: usize| -> Result<RatExpr> {
        Ok(match &plan.slice[j] {
            SliceValue::Const(c) => RatExpr::int(&tv, *c),
            SliceValue::Var(name) => RatExpr::var(&tv, name)?,
        })
    };
    // Each definition must lie in the lattice and evaluate to its name.
    let mut monomials = Vec::new();
    for (name, l) in &plan.variable_defs {
        if l.len() != n || !in_lattice(&data.lattice, l) {
            return Err(Error::Invalid(format!("definition of {} is not a lattice vector", name)));
        }
        let mut val = one.clone();
        for (j, &e) in l.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let s = slice_expr(j)?;
            if s.is_zero() {
                return Err(Error::Invalid(format!("{} involves v{} which the slice sets to 0", name, j + 1)));
            }
            val = &val * &s.pow(e as i32)?;
        }
        if val != RatExpr::var(&tv, name)? {
            return Err(Error::Invalid(format!("slice gives {} = {}", name, val)));
        }
        monomials.push(val);
    }
    // Linear relations for theta_1..theta_N with affine right-hand sides.
    let mut rows: Vec<Vec<RatExpr>> = Vec::new();
    let mut rhs: Vec<[RatExpr; 3]> = Vec::new();
    let unit_row = |j: usize| (0..n).map(|k| if k == j { one.clone() } else { z.clone() }).collect::<Vec<_>>();
    for (j, s) in plan.slice.iter().enumerate() {
        if let SliceValue::Var(name) = s {
            let which = names.iter().position(|x| x == name).expect("checked above");
            let others = plan.variable_defs.iter().enumerate().filter(|(k, _)| *k != which);
            if others.into_iter().any(|(_, (_, l))| l[j] != 0) {
                return Err(Error::Invalid(format!("v{} enters both new variables", j + 1)));
            }
            rows.push(unit_row(j));
            let mut r = [z.clone(), z.clone(), z.clone()];
            r[which] = one.clone();
            rhs.push(r);
        }
    }
    for rel in homogeneity_relations(data) {
        rows.push(rel.coeffs.iter().map(|&c| RatExpr::int(&tv, c)).collect());
        rhs.push([z.clone(), z.clone(), rel.rhs.rebase(&tv)?]);
    }
    // v_j = 0 with d_j = d_i for a nonzero constant v_i forces theta_j = 0.
    for j in 0..n {
        if plan.slice[j] != SliceValue::Const(0) {
            continue;
        }
        let partner = (0..n).find(|&i| {
            matches!(plan.slice[i], SliceValue::Const(c) if c != 0) && {
                let mut l = vec![0; n];
                l[j] = 1;
                l[i] = -1;
                in_lattice(&data.lattice, &l)
            }
        });
        if partner.is_none() {
            return Err(Error::Invalid(format!("no first-order relation removes v{} = 0", j + 1)));
        }
        rows.push(unit_row(j));
        rhs.push([z.clone(), z.clone(), z.clone()]);
    }
    if rows.len() != n {
        return Err(Error::Invalid(format!("plan gives {} relations for {} theta operators", rows.len(), n)));
    }
    let cols: Vec<Vec<RatExpr>> = (0..3).map(|c| rhs.iter().map(|r| r[c].clone()).collect()).collect();
    let sol = linalg::solve(&rows, &cols).map_err(|_| Error::Unsolvable("theta relations are singular".into()))?;
    let theta: Vec<Affine> = (0..n)
        .map(|j| Affine([sol[0][j].clone(), sol[1][j].clone(), sol[2][j].clone()]))
        .collect();
    // Second-order boxes: P+(theta) = monomial * P-(theta) after clearing v.
    let boxes = box_operators(&tv, &plan.variable_defs.iter().map(|d| d.1.clone()).collect::<Vec<_>>());
    let (xn, yn) = (&names[0], &names[1]);
    let mut eqs: Vec<Jet2> = Vec::new();
    for ((lhs, rhs_op), mono) in boxes.iter().zip(&monomials) {
        let mut p = ThetaPoly::new();
        for (sign, op, factor) in [(1, lhs, one.clone()), (-1, rhs_op, mono.clone())] {
            for (_, t, c) in op.terms() {
                let mut term = ThetaPoly::new();
                term.insert((0, 0), c.rebase(&tv)? * &factor * RatExpr::int(&tv, sign));
                for (j, &e) in t.iter().enumerate() {
                    for _ in 0..e {
                        term = poly_mul_affine(&term, &theta[j]);
                    }
                }
                for (k, v) in term {
                    poly_add(&mut p, k, v);
                }
            }
        }
        // theta_x^a = sum_i S(a, i) x^i d_x^i.
        let mut jet: Jet2 = std::array::from_fn(|_| z.clone());
        for (&(a, b), c) in &p {
            for i in 0..=a {
                for j in 0..=b {
                    let s = stirling2(a, i) * stirling2(b, j);
                    if s == 0 {
                        continue;
                    }
                    let idx = jet_index(i, j)
                        .ok_or_else(|| Error::Unsolvable("box relation has order above two".into()))?;
                    let coef = c * &RatExpr::int(&tv, s) * RatExpr::var(&tv, xn)?.pow(i as i32)? * RatExpr::var(&tv, yn)?.pow(j as i32)?;
                    jet[idx] = &jet[idx] + &coef;
                }
            }
        }
        eqs.push(jet);
    }
    // Solve the pair for F_xx and F_yy.
    let m = vec![vec![eqs[0][3].clone(), eqs[0][5].clone()], vec![eqs[1][3].clone(), eqs[1][5].clone()]];
    let rest: Vec<Vec<RatExpr>> = [4, 1, 2, 0]
        .iter()
        .map(|&k| vec![-&eqs[0][k], -&eqs[1][k]])
        .collect();
    let s = linalg::solve(&m, &rest).map_err(|_| Error::Unsolvable("cannot solve for the pure second derivatives".into()))?;
    Ok(GeneralSystem {
        l: s[0][0].clone(),
        a: s[1][0].clone(),
        b: s[2][0].clone(),
        p: s[3][0].clone(),
        m: s[0][1].clone(),
        c: s[1][1].clone(),
        f: s[2][1].clone(),
        q: s[3][1].clone(),
    })
}

/// Exponent data, parameters and plan for F2 over a table carrying the F2
/// parameter names.
pub fn f2_preset(vars: &Arc<VarTable>) -> (ExponentData, Vec<RatExpr>, ReductionPlan) {
    let data = ExponentData {
        blocks: vec![
            vec![vec![0, 1, 0], vec![0, 0, 0]],
            // (1, 0*u^0 v^0, v): the v column sits last, as in the Cayley matrix.
            vec![vec![0, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![0, 0, 1]],
        ],
        k: 2,
    };
    let gamma = ["gamma1 - beta1 - 1", "gamma2 - beta2 - 1", "-alpha", "-beta1", "-beta2"]
        .map(|t| e(t, vars))
        .to_vec();
    let c = SliceValue::Const;
    let var = |s: &str| SliceValue::Var(s.into());
    let plan = ReductionPlan {
        variable_defs: vec![
            ("x".into(), vec![1, -1, 0, 0, 0, 0, -1, 1, 0]),
            ("y".into(), vec![0, 0, 0, 1, 0, -1, -1, 0, 1]),
        ],
        slice: vec![c(1), c(1), c(0), c(1), c(0), c(1), c(1), var("x"), var("y")],
    };
    (data, gamma, plan)
}

/// Lattice generators as usually displayed for the F2 matrix.
pub fn f2_displayed_lattice() -> IntMatrix {
    vec![
        vec![0, 0, 0, 1, 0, -1, -1, 0, 1],
        vec![1, -1, 0, 0, 0, 0, -1, 1, 0],
        vec![0, 0, 0, -1, 1, 0, 0, 0, 0],
        vec![-1, 0, 1, 0, 0, 0, 0, 0, 0],
    ]
}

/// F4 from `(1 - x u - y v)^-beta (u + v - u v)^(gamma1 + gamma2 - alpha - 2)
/// u^(alpha - gamma2) v^(alpha - gamma1)`; the slice `(1, x, y, 1, 1, 1)`
/// absorbs the signs of the monomial coefficients.
pub fn f4_preset(vars: &Arc<VarTable>) -> (ExponentData, Vec<RatExpr>, ReductionPlan) {
    let data = ExponentData {
        blocks: vec![vec![vec![0, 1, 0], vec![0, 0, 1]], vec![vec![1, 0, 1], vec![0, 1, 1]]],
        k: 2,
    };
    let gamma = ["-beta", "gamma1 + gamma2 - alpha - 2", "gamma2 - alpha - 1", "gamma1 - alpha - 1"]
        .map(|t| e(t, vars))
        .to_vec();
    let c = SliceValue::Const;
    let var = |s: &str| SliceValue::Var(s.into());
    let plan = ReductionPlan {
        variable_defs: vec![
            ("x".into(), vec![-1, 1, 0, 0, 1, -1]),
            ("y".into(), vec![-1, 0, 1, 1, 0, -1]),
        ],
        slice: vec![c(1), var("x"), var("y"), c(1), c(1), c(1)],
    };
    (data, gamma, plan)
}

/// Run the whole pipeline for a preset.
pub fn derive(family: crate::appell::Family, vars: &Arc<VarTable>) -> Result<(GkzData, GeneralSystem)> {
    let (data, gamma, plan) = match family {
        crate::appell::Family::F2 => f2_preset(vars),
        crate::appell::Family::F4 => f4_preset(vars),
        _ => return Err(Error::Invalid("GKZ presets exist for F2 and F4".into())),
    };
    let gkz = GkzData::new(&data, gamma)?;
    let sys = reduce(&gkz, &plan)?;
    Ok((gkz, sys))
}
