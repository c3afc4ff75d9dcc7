// Rank-4 systems: integrability through the moving frame, transport into
// conjugate coordinates, and the quadric/ruled classification.

use std::error::Error;

use projsurf::appell::{self, Family};
use projsurf::presets;
use projsurf::rank4::{self, connection_form, is_zero_matrix, maurer_cartan_residual, System};

pub fn run() -> Result<(), Box<dyn Error>> {
    let f2 = System::General(appell::system(Family::F2, &presets::f2_xy())?);
    let mc = maurer_cartan_residual(&connection_form(&f2)?)?;
    println!("F2 system integrable: {}", is_zero_matrix(&mc));

    let conj = appell::conjugate_form(Family::F2, &presets::f2_xy(), &presets::f2_st())?;
    for (name, e) in conj.fields() {
        println!("  {} = {}", name, e);
    }
    let cubic = rank4::cubic_invariants(&conj)?;
    println!("A = {}", cubic.a);
    println!("class: {}", rank4::classify(&System::Conjugate(conj))?);

    println!("quadric: {}", rank4::classify(&System::Asymptotic(presets::quadric_asymptotic()))?);
    println!("ruled:   {}", rank4::classify(&System::Asymptotic(presets::ruled()))?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
