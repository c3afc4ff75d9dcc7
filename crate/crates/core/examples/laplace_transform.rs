// Laplace transforms of a conjugate system, the W-congruence test and the
// Plücker image of a line.

use std::error::Error;

use projsurf::appell::{self, Family};
use projsurf::congruence::{self, Sign};
use projsurf::{parse, presets, VarTable};

pub fn run() -> Result<(), Box<dyn Error>> {
    let c = appell::conjugate_form(Family::F2, &presets::f2_xy(), &presets::f2_st())?;
    let (h, k) = congruence::invariants(&c)?;
    println!("h = {}\nk = {}", h, k);
    for sign in [Sign::Plus, Sign::Minus] {
        let out = congruence::transform(&c, sign)?.output;
        let (h1, k1) = congruence::invariants(&out)?;
        println!("{} transform: h = {}, k = {}", sign, h1, k1);
        println!("  W{} = {}", sign, congruence::weingarten(&c, sign)?);
        let (verbatim, amended) = congruence::closed_form_check(&c, sign)?;
        let names: Vec<_> = verbatim.iter().map(|d| d.0).collect();
        println!("  closed formulas off in {:?}, corrected off in {}", names, amended.len());
    }

    // a sequence of positive transforms walks along the invariant chain
    for rep in congruence::transform_sequence(&c, 2)? {
        println!("step h-used = {}", rep.invariant_used);
    }

    let v = VarTable::new(&["x", "y"], &[] as &[&str])?;
    let p = |t: &str| parse(t, &v);
    let line = congruence::plucker(&[p("1")?, p("x")?, p("0")?, p("0")?], &[p("0")?, p("0")?, p("1")?, p("y")?])?;
    println!("Klein quadric residue: {}", line.klein());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
