use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

/// Nodes and weights for `int_{-1}^{1} (1 - x)^a (1 + x)^b f(x) dx`, from the
/// eigen-decomposition of the Jacobi matrix.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0 && a > -1.0 && b > -1.0);
    let ab = a + b;
    let diag = |k: usize| {
        if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            let k = k as f64;
            (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
        }
    };
    let off = |k: usize| {
        let kf = k as f64;
        let beta = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab)
                / ((2.0 * kf + ab).powi(2) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0))
        };
        beta.sqrt()
    };
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        j[(k, k)] = diag(k);
        if k + 1 < n {
            let o = off(k + 1);
            j[(k, k + 1)] = o;
            j[(k + 1, k)] = o;
        }
    }
    let mu0 = ((ab + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0)).exp();
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs.into_iter().unzip()
}

/// Nodes and weights for `int_0^1 (1 - t)^a t^b f(t) dt`.
pub fn gauss_jacobi_unit(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_jacobi(n, a, b);
    let scale = 2f64.powf(-a - b - 1.0);
    (
        x.into_iter().map(|x| (1.0 + x) / 2.0).collect(),
        w.into_iter().map(|w| w * scale).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_integral() {
        // int_0^1 (1-t)^a t^b dt = B(a+1, b+1)
        let (a, b) = (-0.4, 0.7);
        let (_, w) = gauss_jacobi_unit(12, a, b);
        let exact = (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
        assert!((w.iter().sum::<f64>() - exact).abs() < 1e-13);
    }

    #[test]
    fn exact_for_polynomials() {
        let (x, w) = gauss_jacobi(5, 0.0, 0.0);
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((i - 2.0 / 9.0).abs() < 1e-13);
    }
}
