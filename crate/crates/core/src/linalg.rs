//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

const SCHUR_MAX_ITER: usize = 10_000;

/// All eigenvalues of a general complex square matrix (complex Schur form).
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let dim = m.nrows();
    let failure = || Error::EigenFailure {
        dim,
        context: format!("{m:.6e}"),
    };
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(failure());
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(failure)?;
    let values = schur.eigenvalues().ok_or_else(failure)?;
    Ok(values.iter().copied().collect())
}

/// Solve `m x = b` by partial-pivot LU.
pub fn solve(m: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let lu = m.clone().lu();
    let x = lu.solve(b).ok_or_else(|| {
        Error::Singular(format!("{}x{} LU has a zero pivot", m.nrows(), m.ncols()))
    })?;
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Singular("non-finite solution".into()));
    }
    Ok(x)
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm_1(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition number `‖M‖₁ ‖M⁻¹‖₁`. The matrices here are at most
/// 36×36 so the inverse is formed explicitly.
pub fn condition_number_1(m: &DMatrix<Complex64>) -> Result<f64> {
    let inv = m
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
    Ok(norm_1(m) * norm_1(&inv))
}

/// Sort by imaginary part ascending, then real part ascending. Imaginary
/// parts that agree to within `tie_tol` (relative to the largest modulus)
/// count as equal, so that partners `λ` and `−λ*` are ordered by their real
/// parts rather than by rounding noise.
pub fn sort_spectrum(values: &mut [Complex64], tie_tol: f64) {
    values.sort_by(|a, b| a.im.total_cmp(&b.im));
    let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = tie_tol * scale;
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end].im - values[end - 1].im <= eps {
            end += 1;
        }
        values[start..end].sort_by(|a, b| a.re.total_cmp(&b.re));
        start = end;
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}
