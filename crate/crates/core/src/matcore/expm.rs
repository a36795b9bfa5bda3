//! Exponential of a skew-symmetric generator by scaling and squaring of a
//! truncated Taylor series.

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

use super::Tolerances;

pub fn expm_skew<T: Scalar>(j: &RealMatrix<T>, phi: T) -> Result<RealMatrix<T>> {
    expm_skew_with(j, phi, &Tolerances::DEFAULT)
}

/// `exp(φ J)` for skew-symmetric `J`. Returns the identity exactly when
/// `φ = 0` or `J = 0`.
pub fn expm_skew_with<T: Scalar>(j: &RealMatrix<T>, phi: T, tol: &Tolerances) -> Result<RealMatrix<T>> {
    if !j.is_square() {
        return Err(Error::dim(format!(
            "expm_skew needs a square matrix, got {}x{}",
            j.rows(),
            j.cols()
        )));
    }
    let skew = (j + &j.transpose()).frobenius_norm();
    if skew > T::lit(tol.skew) * j.frobenius_norm().max(T::one()) {
        return Err(Error::NotSkewSymmetric {
            residual: skew.to_f64_lossy(),
        });
    }
    if !phi.is_finite() {
        return Err(Error::param("exponent scale must be finite"));
    }
    let n = j.rows();
    if phi == T::zero() || j.max_abs() == T::zero() {
        return Ok(RealMatrix::identity(n));
    }

    let a = j.scale(phi);
    // One-norm bound, then halve until it is at most 1/4.
    let norm1 = (0..n)
        .map(|c| (0..n).map(|r| a[(r, c)].abs()).sum::<T>())
        .fold(T::zero(), T::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm1;
    while scaled_norm > T::lit(0.25) {
        scaled_norm = scaled_norm * T::lit(0.5);
        squarings += 1;
    }
    let a = a.scale(T::lit(0.5).powi(squarings as i32));

    let mut result = RealMatrix::identity(n);
    let mut term = RealMatrix::identity(n);
    for k in 1..=30 {
        term = term.matmul(&a).scale(T::one() / T::from_count(k));
        result = &result + &term;
        if term.max_abs() <= T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}
