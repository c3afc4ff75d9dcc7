// Drive the command line in-process and look at its reports.

use std::error::Error;

use projsurf::cli;

pub fn run() -> Result<(), Box<dyn Error>> {
    let (text, code) = cli::run(["projsurf", "invariants", "--preset", "epd"]);
    print!("{}", text);
    assert_eq!(code, 0);

    let (json, code) = cli::run(["projsurf", "weingarten", "--preset", "f4", "--format", "json"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&json)?;
    println!("weingarten f4: {}", report["status"]);

    let (_, code) = cli::run(["projsurf", "classify", "--preset", "f2", "--params", "alpha=beta1+beta2-1/2,gamma1=2*beta1,gamma2=2*beta2"]);
    println!("classify on the quadric locus exits {}", code);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
