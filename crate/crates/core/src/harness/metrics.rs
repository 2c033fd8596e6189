use num_complex::Complex64;

use crate::channel::SparseChannel;
use crate::error::{Error, Result};

/// Per-trial error and support-detection scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// `||h - h_hat||^2 / N`
    pub mse: f64,
    /// `||h - h_hat|| / ||h||`
    pub rel_err: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Scores `estimate` against the true channel. Precision of an empty support
/// estimate is 1; recall against an empty true support is 1.
pub fn compute_metrics(
    h: &SparseChannel,
    estimate: &[Complex64],
    support_estimate: &[usize],
) -> Result<Metrics> {
    if estimate.len() != h.len() {
        return Err(Error::LengthMismatch {
            expected: h.len(),
            actual: estimate.len(),
        });
    }
    let truth = h.to_dense();
    let err_sq: f64 = truth
        .iter()
        .zip(estimate)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    let norm_sq = h.norm_sq();
    let rel_err = if norm_sq > 0.0 {
        (err_sq / norm_sq).sqrt()
    } else if err_sq == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };

    // both supports are ascending
    let hits = support_estimate
        .iter()
        .filter(|i| h.support().binary_search(i).is_ok())
        .count();
    let precision = if support_estimate.is_empty() {
        1.0
    } else {
        hits as f64 / support_estimate.len() as f64
    };
    let recall = if h.sparsity() == 0 {
        1.0
    } else {
        hits as f64 / h.sparsity() as f64
    };
    Ok(Metrics {
        mse: err_sq / h.len() as f64,
        rel_err,
        precision,
        recall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{generate_sparse_channel, MagnitudeModel};

    #[test]
    fn perfect_estimate() {
        let h = generate_sparse_channel(50, 7, MagnitudeModel::Unit, 2).unwrap();
        let m = compute_metrics(&h, &h.to_dense(), h.support()).unwrap();
        assert_eq!(m.mse, 0.0);
        assert_eq!(m.rel_err, 0.0);
        assert_eq!((m.precision, m.recall), (1.0, 1.0));
    }

    #[test]
    fn zero_estimate() {
        let h = generate_sparse_channel(50, 7, MagnitudeModel::Unit, 2).unwrap();
        let m = compute_metrics(&h, &vec![Complex64::new(0.0, 0.0); 50], &[]).unwrap();
        assert!((m.mse - 7.0 / 50.0).abs() < 1e-15);
        assert!((m.rel_err - 1.0).abs() < 1e-15);
        assert_eq!(m.recall, 0.0);
    }

    #[test]
    fn partial_support() {
        let c = Complex64::new(1.0, 0.0);
        let h = SparseChannel::new(10, vec![1, 4, 7], vec![c, c, c]).unwrap();
        let m = compute_metrics(&h, &h.to_dense(), &[1, 2, 4, 9]).unwrap();
        assert_eq!(m.precision, 0.5);
        assert!((m.recall - 2.0 / 3.0).abs() < 1e-15);
        assert!(compute_metrics(&h, &[c; 9], &[]).is_err());
    }
}
