//! Rank-4 linear systems of projective surfaces.
//!
//! The crate works over the exact rational functions of [`symexpr`]. The
//! modules follow the objects one meets in order: plane hyperbolic equations
//! and their Laplace invariants ([`hyper2`]), rank-4 systems and their moving
//! frames ([`rank4`]), Laplace transforms of whole systems ([`congruence`]),
//! A-hypergeometric reduction ([`gkz`]) and the Appell families ([`appell`]).
//! [`cli`] wires all of it to a command line.

pub mod appell;
pub mod cli;
pub mod congruence;
pub mod gkz;
pub mod hyper2;
pub mod presets;
pub mod rank4;

pub use symexpr::{self, parse, PowerProduct, RatExpr, VarTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] symexpr::Error),
    #[error("expected exactly two coordinates, found {0}")]
    CoordinateCount(usize),
    #[error("invariant vanishes identically at index {0}")]
    Degenerate(i64),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("singular Jacobian")]
    SingularJacobian,
    #[error("normal form not solvable: {0}")]
    Unsolvable(String),
    #[error("frame closure is singular: {0}")]
    FrameClosure(String),
    #[error("proportional inputs have a zero Plücker image")]
    Proportional,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Logarithmic derivative `e_v / e` of a nonzero expression.
pub(crate) fn log_d(e: &RatExpr, v: &str) -> Result<RatExpr> {
    Ok(e.diff(v)?.try_div(e)?)
}

/// `(log e)_uv`.
pub(crate) fn log_dd(e: &RatExpr, u: &str, v: &str) -> Result<RatExpr> {
    Ok(log_d(e, u)?.diff(v)?)
}

pub(crate) fn coord_names(vars: &VarTable) -> Result<(String, String)> {
    match vars.coords() {
        [x, y] => Ok((x.clone(), y.clone())),
        other => Err(Error::CoordinateCount(other.len())),
    }
}

/// Ratio `a/b` when the triples are proportional, `None` otherwise.
pub fn proportional(a: &[RatExpr], b: &[RatExpr]) -> Option<RatExpr> {
    let piv = b.iter().position(|e| !e.is_zero())?;
    let r = &a[piv] / &b[piv];
    if r.is_zero() {
        return None;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == &r * y)
        .then_some(r)
}
