// Numerical side of the Appell families: truncated series, the residual
// of their equations, and the Euler integral for F2.

use std::error::Error;

use projsurf::appell::{self, AppellParams, Family};

pub fn run() -> Result<(), Box<dyn Error>> {
    let gauss = AppellParams::new(Family::Gauss, &[1.0, 1.0, 2.0])?;
    let v = appell::series_eval(&gauss, &[0.5], 1e-15, 500)?;
    println!("2F1(1,1;2;1/2) = {:.15} (2 ln 2 = {:.15})", v.value, 2.0 * 2f64.ln());

    let f2 = AppellParams::new(Family::F2, &[1.1, 0.3, 0.7, 1.5, 1.2])?;
    println!("F2 residual {:.2e}", appell::pde_residual(&f2, &[0.1, 0.2], 40)?);
    let f4 = AppellParams::new(Family::F4, &[0.9, 0.4, 1.3, 1.6])?;
    println!("F4 residual {:.2e}", appell::pde_residual(&f4, &[0.05, 0.1], 40)?);

    let p = AppellParams::new(Family::F2, &[0.8, 0.4, 0.6, 1.3, 1.4])?;
    let e = appell::euler_transform_check(&p, 3.0, 2.0, 1e-6)?;
    println!("Euler: {:.12} vs {:.12} ({} nodes)", e.lhs, e.rhs, e.nodes);

    let conf = appell::conformal_equivalence_check()?;
    println!("conformal factor: {}", conf.factor.ok_or("not proportional")?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
