// Exact rational functions: parsing, canonical forms, derivatives and
// substitution.

use std::collections::HashMap;
use std::error::Error;

use projsurf::{parse, PowerProduct, VarTable};

pub fn run() -> Result<(), Box<dyn Error>> {
    let v = VarTable::new(&["s", "t"], &["gamma2"])?;
    let q = parse("(s - 1)*s/((t - 1)*t)", &v)?;
    println!("q      = {}", q);
    println!("q_s    = {}", q.diff("s")?);
    assert_eq!(parse("(s^2 - t^2)/(s - t)", &v)?, parse("s + t", &v)?);

    // gauge factors stay symbolic; only their log-derivatives are rational
    let g = PowerProduct::one(&v).times(parse("s - t", &v)?, parse("1 - gamma2", &v)?)?;
    println!("(log g)_t = {}", g.log_derivative("t")?);

    let xy = VarTable::new(&["x", "y"], &[] as &[&str])?;
    let st = VarTable::new(&["s", "t"], &[] as &[&str])?;
    let map: HashMap<String, _> = [
        ("x".to_string(), parse("1/s", &st)?),
        ("y".to_string(), parse("1 - t/s", &st)?),
    ]
    .into();
    let pulled = parse("x*y", &xy)?.substitute(&map, &st)?;
    println!("x*y at (1/s, 1 - t/s) = {}", pulled);
    assert_eq!(pulled, parse("(s - t)/s^2", &st)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
