//! Dense matrices written directly from their index formulas. Used to check
//! the fast operator and the pilot construction element by element.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::pilot::PilotPlan;
use crate::seqgen::PeriodicSequence;

/// `(M + L - 1) x L` banded Toeplitz matrix of the linear convolution with `pilot`.
pub fn convolution_matrix(pilot: &PeriodicSequence, l: usize) -> DMatrix<Complex64> {
    let m = pilot.period();
    let p = pilot.values();
    DMatrix::from_fn(m + l - 1, l, |r, c| {
        if r >= c && r - c < m {
            p[r - c]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `M x L` matrix of the folded (circular) convolution with `pilot`: its
/// first row is `[p(L-1), ..., p(0), p(M-1), ..., p(L)]` restricted to `L`
/// columns, and each subsequent row is shifted right by one.
pub fn partial_circulant(pilot: &PeriodicSequence, l: usize) -> DMatrix<Complex64> {
    let m = pilot.period();
    let p = pilot.values();
    DMatrix::from_fn(m, l, |r, c| p[(l - 1 + r + m - c) % m])
}

/// `M x M` circulant with first row `b`.
pub fn circulant(b: &PeriodicSequence) -> DMatrix<Complex64> {
    let m = b.period();
    let v = b.values();
    DMatrix::from_fn(m, m, |r, c| v[(c + m - r) % m])
}

/// `[Phi_1 ... Phi_t]` assembled from the plan's emitted pilots.
pub fn from_pilots(plan: &PilotPlan) -> DMatrix<Complex64> {
    let (m, l) = (plan.m(), plan.l());
    let mut out = DMatrix::zeros(m, plan.n());
    for (i, a) in plan.assignments().iter().enumerate() {
        out.view_mut((0, i * l), (m, l))
            .copy_from(&partial_circulant(&a.pilot, l));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqgen::fzc_sequence;

    #[test]
    fn circulant_rows_shift_right() {
        let b = fzc_sequence(2, 5).unwrap();
        let a = circulant(&b);
        for r in 1..5 {
            for c in 0..5 {
                assert_eq!(a[(r, c)], a[(r - 1, (c + 4) % 5)]);
            }
        }
    }

    #[test]
    fn partial_circulant_first_row() {
        let p = fzc_sequence(3, 7).unwrap();
        let v = p.values();
        let a = partial_circulant(&p, 3);
        assert_eq!(a[(0, 0)], v[2]);
        assert_eq!(a[(0, 1)], v[1]);
        assert_eq!(a[(0, 2)], v[0]);
        // row M-L+1 starts with p(0), then wraps to p(M-1)
        assert_eq!(a[(5, 0)], v[0]);
        assert_eq!(a[(5, 1)], v[6]);
    }
}
