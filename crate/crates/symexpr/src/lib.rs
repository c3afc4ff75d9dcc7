//! Exact rational-function arithmetic over Z with named coordinates and
//! parameters.
//!
//! ```
//! use symexpr::{parse, VarTable};
//! let v = VarTable::new(&["x", "y"], &[] as &[&str]).unwrap();
//! let e = parse("(x^2 - y^2)/(x - y)", &v).unwrap();
//! assert_eq!(e, parse("x + y", &v).unwrap());
//! ```

pub mod corpus;
mod gcd;
pub mod linalg;
mod parse;
pub mod poly;
mod power;
mod ratexpr;
mod vars;

pub use gcd::{gcd, integer_primitive};
pub use parse::parse;
pub use poly::{Monomial, Poly};
pub use power::PowerProduct;
pub use ratexpr::RatExpr;
pub use vars::VarTable;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identifier '{0}'")]
    UnknownIdent(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands use different variable tables")]
    VarMismatch,
    #[error("'{0}' is not a coordinate variable")]
    NotCoordinate(String),
    #[error("too many variables ({0}); at most 8 are supported")]
    TooManyVars(usize),
    #[error("invalid variable name '{0}'")]
    InvalidName(String),
    #[error("duplicate variable name '{0}'")]
    DuplicateName(String),
    #[error("substitution produced an identically zero denominator")]
    Pole,
    #[error("exponent depends on a coordinate")]
    CoordinateExponent,
    #[error("singular linear system")]
    Singular,
}

/// Convenience: `diff(e, v)`.
pub fn diff(e: &RatExpr, v: &str) -> Result<RatExpr, Error> {
    e.diff(v)
}

/// Arithmetic by operator name, checking variable tables.
pub fn arith(op: &str, lhs: &RatExpr, rhs: &RatExpr) -> Result<RatExpr, Error> {
    match op {
        "add" => lhs.try_add(rhs),
        "sub" => lhs.try_sub(rhs),
        "mul" => lhs.try_mul(rhs),
        "div" => lhs.try_div(rhs),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("unknown operator '{}'", op),
        }),
    }
}
