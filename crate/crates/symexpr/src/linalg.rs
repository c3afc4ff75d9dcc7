//! Dense linear solves over rational functions.

use crate::ratexpr::RatExpr;
use crate::Error;

/// Solve `m * x = b` for each right-hand side in `rhs`.
///
/// Gaussian elimination choosing the smallest available pivot. Returns
/// `Error::Singular` when the matrix is not invertible.
pub fn solve(m: &[Vec<RatExpr>], rhs: &[Vec<RatExpr>]) -> Result<Vec<Vec<RatExpr>>, Error> {
    let n = m.len();
    let k = rhs.len();
    let mut a: Vec<Vec<RatExpr>> = m.to_vec();
    // Augment with the right-hand sides as extra columns.
    for (i, row) in a.iter_mut().enumerate() {
        assert_eq!(row.len(), n, "square matrix expected");
        for b in rhs {
            row.push(b[i].clone());
        }
    }
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity())
            .ok_or(Error::Singular)?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for j in col..n + k {
            if !a[col][j].is_zero() {
                a[col][j] = &a[col][j] * &inv;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n + k {
                if !a[col][j].is_zero() {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
    }
    Ok((0..k)
        .map(|s| (0..n).map(|i| a[i][n + s].clone()).collect())
        .collect())
}

/// Determinant by fraction elimination.
pub fn det(m: &[Vec<RatExpr>]) -> RatExpr {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut a = m.to_vec();
    let mut d = RatExpr::one(&vars);
    for col in 0..n {
        let piv = match (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity())
        {
            Some(p) => p,
            None => return RatExpr::zero(&vars),
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d = &d * &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for j in col..n {
                if !a[col][j].is_zero() {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
    }
    d
}
