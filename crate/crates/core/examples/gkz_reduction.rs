// From an exponent matrix to the second-order system of F2.

use std::error::Error;

use projsurf::appell::{self, Family};
use projsurf::gkz::{self, GkzData};
use projsurf::presets;

pub fn run() -> Result<(), Box<dyn Error>> {
    let v = presets::f2_xy();
    let (data, gamma, _) = gkz::f2_preset(&v);
    let g = GkzData::new(&data, gamma)?;
    println!("columns: {}", g.columns());
    for row in &g.a {
        println!("  {:?}", row);
    }
    println!("lattice HNF: {:?}", gkz::hnf(&g.lattice));
    assert!(gkz::lattice_eq(&g.lattice, &gkz::f2_displayed_lattice()));
    for rel in gkz::homogeneity_relations(&g).iter().take(2) {
        println!("homogeneity: {:?}", rel);
    }

    let (_, sys) = gkz::derive(Family::F2, &v)?;
    assert_eq!(sys, appell::system(Family::F2, &v)?);
    for (name, e) in sys.fields() {
        println!("  {} = {}", name, e);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
