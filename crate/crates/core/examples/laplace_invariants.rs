// Laplace invariants of a plane hyperbolic equation and their behaviour
// under gauge and coordinate changes.

use std::error::Error;

use projsurf::hyper2::{self, Standard};
use projsurf::{parse, PowerProduct, VarTable};

pub fn run() -> Result<(), Box<dyn Error>> {
    let v = VarTable::new(&["x", "y"], &["beta", "betap"])?;
    let epd = hyper2::standard_equation(
        &Standard::Epd { beta: parse("beta", &v)?, beta_prime: parse("betap", &v)? },
        &v,
    )?;
    let inv = hyper2::laplace_invariants(&epd);
    println!("EPD  h = {}", inv.h);
    println!("EPD  k = {}", inv.k);

    let f = PowerProduct::one(&v).times(parse("x - y", &v)?, parse("3/2", &v)?)?;
    let moved = hyper2::gauge_transform(&epd, &f)?;
    assert_eq!(hyper2::laplace_invariants(&moved), inv);

    let w = VarTable::new(&["u", "v"], &["beta", "betap"])?;
    let changed = hyper2::coordinate_change(
        &epd,
        &parse("1/x", &v)?,
        &parse("y", &v)?,
        &parse("1/u", &w)?,
        &parse("v", &w)?,
    )?;
    // invariants are densities: h picks up the factor dx/du
    let h_uv = hyper2::laplace_invariants(&changed).h;
    println!("after u = 1/x  h = {}", h_uv);

    for (n, pair) in hyper2::higher_invariants(&epd, -2, 2)? {
        println!("n = {:>2}  h = {}", n, pair.h);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
