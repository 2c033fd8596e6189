use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::MeasurementOperator;

/// Least-squares coefficients on `support` (0-based column indices), zero
/// elsewhere. The system is solved by Householder QR of the support columns,
/// falling back to an SVD solve when they are numerically rank deficient.
pub fn debias_on_support(
    op: &MeasurementOperator,
    support: &[usize],
    y: &[Complex64],
) -> Result<Vec<Complex64>> {
    let (m, n) = (op.rows(), op.cols());
    if y.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: y.len(),
        });
    }
    if support.len() > m {
        return Err(Error::OverdeterminedSupport {
            support: support.len(),
            rows: m,
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    if support.is_empty() {
        return Ok(out);
    }
    let mut a = DMatrix::<Complex64>::zeros(m, support.len());
    for (c, &j) in support.iter().enumerate() {
        a.set_column(c, &DVector::from_vec(op.column(j)?));
    }
    let b = DVector::from_column_slice(y);
    let coef = least_squares(a, &b)?;
    for (&j, v) in support.iter().zip(coef.iter()) {
        out[j] = *v;
    }
    Ok(out)
}

fn least_squares(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let qr = a.clone().qr();
    let r = qr.r();
    let diag_max = r.diagonal().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let well_posed = r.diagonal().iter().all(|v| v.norm() > 1e-10 * diag_max);
    if well_posed {
        let rhs = qr.q().adjoint() * b;
        if let Some(x) = r.solve_upper_triangular(&rhs) {
            return Ok(x);
        }
    }
    a.svd(true, true)
        .solve(b, 1e-12)
        .map_err(|e| Error::invalid(format!("least-squares solve failed: {e}")))
}
