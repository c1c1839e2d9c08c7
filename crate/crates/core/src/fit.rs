//! Least-squares line fitting for scaling-law estimation.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Result of a straight-line least-squares fit `y ≈ slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<F> {
    /// Fitted slope.
    pub slope: F,
    /// Fitted intercept.
    pub intercept: F,
    /// Root-mean-square residual of the fit.
    pub rms_residual: F,
}

/// Ordinary least squares on `(x, y)` pairs.
///
/// Requires at least two points and non-degenerate abscissae.
pub fn least_squares<F: Scalar>(xs: &[F], ys: &[F]) -> Result<FitResult<F>> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter(
            "least squares needs >= 2 (x, y) pairs of equal length".into(),
        ));
    }
    let n = F::from_usize(xs.len()).expect("small count");
    let mean_x = xs.iter().copied().sum::<F>() / n;
    let mean_y = ys.iter().copied().sum::<F>() / n;
    let mut sxx = F::zero();
    let mut sxy = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == F::zero() {
        return Err(Error::InvalidParameter(
            "least squares needs at least two distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss += r * r;
    }
    let rms_residual = (ss / n).sqrt();
    Ok(FitResult {
        slope,
        intercept,
        rms_residual,
    })
}

/// Least squares in log2-log2 space: fits `log2 y ≈ slope * log2 x + c`.
///
/// All inputs must be strictly positive.
pub fn least_squares_loglog<F: Scalar>(xs: &[F], ys: &[F]) -> Result<FitResult<F>> {
    for &v in xs.iter().chain(ys) {
        if !(v > F::zero()) {
            return Err(Error::InvalidParameter(
                "log-log fit requires strictly positive values".into(),
            ));
        }
    }
    let lx: Vec<F> = xs.iter().map(|&v| v.log2()).collect();
    let ly: Vec<F> = ys.iter().map(|&v| v.log2()).collect();
    least_squares(&lx, &ly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        let ys = [3.0f64, 5.0, 7.0, 9.0];
        let fit = least_squares(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn power_law_recovered() {
        let xs: Vec<f64> = (1..=5).map(|k| (10.0f64).powi(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| 2.5 * x.powf(1.7)).collect();
        let fit = least_squares_loglog(&xs, &ys).unwrap();
        assert!((fit.slope - 1.7).abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(least_squares(&[1.0f64], &[2.0]).is_err());
        assert!(least_squares(&[1.0f64, 1.0], &[2.0, 3.0]).is_err());
        assert!(least_squares_loglog(&[1.0f64, -2.0], &[2.0, 3.0]).is_err());
    }
}
