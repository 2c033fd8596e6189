use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use pilotcs::channel::{add_awgn, generate_sparse_channel, MagnitudeModel};
use pilotcs::operator::MeasurementOperator;
use pilotcs::recovery::{
    basis_pursuit, debias_on_support, lasso, lasso_objective, noise_lambda, soft_threshold,
    SolverConfig, StepRule, BP_RESIDUAL_TOL,
};
use pilotcs::seqgen::{fzc_family, PeriodicSequence};
use pilotcs::Error;

fn fzc255_op() -> MeasurementOperator {
    MeasurementOperator::new(fzc_family(255).unwrap().sequences().to_vec()).unwrap()
}

fn small_op(m: usize, q: usize, seed: u64) -> MeasurementOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = (0..q)
        .map(|_| {
            let v = (0..m)
                .map(|_| {
                    Complex64::new(
                        StandardNormal.sample(&mut rng),
                        StandardNormal.sample(&mut rng),
                    )
                })
                .collect();
            PeriodicSequence::normalized(v).unwrap()
        })
        .collect();
    MeasurementOperator::new(bases).unwrap()
}

fn noisy_instance(
    op: &MeasurementOperator,
    k: usize,
    snr: f64,
    seed: u64,
) -> (Vec<Complex64>, Vec<Complex64>, f64) {
    let h = generate_sparse_channel(op.cols(), k, MagnitudeModel::Rayleigh, seed).unwrap();
    let clean = op.forward(&h.to_dense()).unwrap();
    let (y, noise) = add_awgn(&clean, snr, seed + 1000).unwrap();
    (
        h.to_dense(),
        y,
        noise_lambda(noise.realized_sigma_sq, op.cols(), 1.0),
    )
}

fn rel_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let n: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    (d / n.max(f64::MIN_POSITIVE)).sqrt()
}

#[test]
fn objective_never_increases_within_a_stage() {
    let op = fzc255_op();
    for step_rule in [StepRule::FixedFromNormBound, StepRule::Backtracking] {
        let (_, y, lambda) = noisy_instance(&op, 40, 20.0, 3);
        let cfg = SolverConfig {
            lambda,
            record_log: true,
            step_rule,
            ..SolverConfig::default()
        };
        let res = lasso(&op, &y, &cfg).unwrap();
        assert!(res.log.len() > 10);
        for w in res.log.windows(2) {
            if w[0].stage == w[1].stage {
                let slack = 1e-10 * w[0].objective.max(1.0);
                assert!(
                    w[1].objective <= w[0].objective + slack,
                    "{step_rule:?}: {:?} -> {:?}",
                    w[0],
                    w[1]
                );
            }
        }
    }
}

#[test]
fn estimate_scales_with_measurements() {
    let op = fzc255_op();
    let (_, y, lambda) = noisy_instance(&op, 30, 20.0, 4);
    let base = lasso(&op, &y, &SolverConfig::with_lambda(lambda)).unwrap();
    for c in [0.01, 7.5] {
        let ys: Vec<_> = y.iter().map(|z| z * c).collect();
        let scaled = lasso(&op, &ys, &SolverConfig::with_lambda(lambda * c)).unwrap();
        let expect: Vec<_> = base.estimate.iter().map(|z| z * c).collect();
        assert!(rel_dist(&scaled.estimate, &expect) < 1e-6, "c={c}");
        assert_eq!(scaled.support_estimate, base.support_estimate);
    }
}

#[test]
fn converged_estimate_is_a_proximal_fixed_point() {
    let op = fzc255_op();
    let (_, y, lambda) = noisy_instance(&op, 50, 20.0, 5);
    let cfg = SolverConfig {
        lambda,
        debias: false,
        max_iters: 20_000,
        ..SolverConfig::default()
    };
    let res = lasso(&op, &y, &cfg).unwrap();
    assert!(res.converged);
    let h = &res.estimate;
    let step = 1.0 / op.spectral_norm_sq();
    let r: Vec<_> = op
        .forward(h)
        .unwrap()
        .iter()
        .zip(&y)
        .map(|(a, b)| a - b)
        .collect();
    let g = op.adjoint(&r).unwrap();
    let mapped: Vec<_> = h
        .iter()
        .zip(&g)
        .map(|(x, gx)| soft_threshold(x - gx * step, step * lambda))
        .collect();
    assert!(
        rel_dist(&mapped, h) <= 10.0 * cfg.rel_tol,
        "{}",
        rel_dist(&mapped, h)
    );
    assert!((lasso_objective(&op, h, &y, lambda).unwrap() - res.final_objective).abs() < 1e-12);
}

#[test]
fn large_lambda_returns_zero() {
    let op = fzc255_op();
    let (_, y, _) = noisy_instance(&op, 20, 20.0, 6);
    let lmax = op
        .adjoint(&y)
        .unwrap()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let res = lasso(&op, &y, &SolverConfig::with_lambda(lmax)).unwrap();
    assert!(res.estimate.iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    assert!(res.support_estimate.is_empty());
}

#[test]
fn debias_matches_pseudo_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (m, q, s) in [(16, 2, 5), (32, 3, 12), (64, 2, 30), (12, 1, 12)] {
        let op = small_op(m, q, m as u64);
        let y: Vec<Complex64> = (0..m)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let support: Vec<usize> = rand::seq::index::sample(&mut rng, op.cols(), s).into_vec();
        let mut sorted = support.clone();
        sorted.sort_unstable();
        let got = debias_on_support(&op, &sorted, &y).unwrap();

        let a = op.materialize().unwrap();
        let cols: Vec<_> = sorted.iter().map(|&j| a.column(j).into_owned()).collect();
        let sub = DMatrix::from_columns(&cols);
        let coef = sub.clone().pseudo_inverse(1e-12).unwrap() * DVector::from_column_slice(&y);
        for (c, &j) in sorted.iter().enumerate() {
            assert!((got[j] - coef[c]).norm() < 1e-8, "M={m} q={q} |S|={s}");
        }
        let off: f64 = (0..op.cols())
            .filter(|j| !sorted.contains(j))
            .map(|j| got[j].norm())
            .sum();
        assert_eq!(off, 0.0);

        // residual orthogonal to the support columns
        let fit = op.forward(&got).unwrap();
        let r = DVector::from_iterator(m, fit.iter().zip(&y).map(|(a, b)| b - a));
        assert!((sub.adjoint() * r).norm() < 1e-8);
    }
}

#[test]
fn debias_edge_cases() {
    let op = small_op(8, 2, 1);
    let y = vec![Complex64::new(1.0, 0.0); 8];
    assert!(debias_on_support(&op, &[], &y)
        .unwrap()
        .iter()
        .all(|z| z.norm() == 0.0));
    let too_many: Vec<usize> = (0..9).collect();
    assert!(matches!(
        debias_on_support(&op, &too_many, &y),
        Err(Error::OverdeterminedSupport {
            support: 9,
            rows: 8
        })
    ));
}

#[test]
fn basis_pursuit_recovers_sparse_channels_exactly() {
    let op = fzc255_op();
    for (seed, k) in [(1, 1), (2, 10), (3, 40)] {
        let h = generate_sparse_channel(op.cols(), k, MagnitudeModel::Rayleigh, seed).unwrap();
        let y = op.forward(&h.to_dense()).unwrap();
        let res = basis_pursuit(&op, &y, &SolverConfig::default()).unwrap();
        assert!(res.converged);
        assert!(rel_dist(&res.estimate, &h.to_dense()) < 1e-6, "K={k}");
        assert_eq!(res.support_estimate, h.support(), "K={k}");
        let fit = op.forward(&res.estimate).unwrap();
        assert!(rel_dist(&fit, &y) <= BP_RESIDUAL_TOL);
    }
    let zero = vec![Complex64::new(0.0, 0.0); 255];
    assert!(basis_pursuit(&op, &zero, &SolverConfig::default())
        .unwrap()
        .estimate
        .iter()
        .all(|z| z.norm() == 0.0));
}

#[test]
fn noiseless_lasso_with_debias_is_accurate() {
    let op = fzc255_op();
    let h = generate_sparse_channel(op.cols(), 10, MagnitudeModel::Unit, 12).unwrap();
    let y = op.forward(&h.to_dense()).unwrap();
    let res = lasso(&op, &y, &SolverConfig::with_lambda(1e-3)).unwrap();
    assert!(rel_dist(&res.estimate, &h.to_dense()) < 1e-4);
}

#[test]
fn backtracking_reaches_the_same_solution() {
    let op = fzc255_op();
    let (_, y, lambda) = noisy_instance(&op, 30, 30.0, 13);
    let fixed = lasso(&op, &y, &SolverConfig::with_lambda(lambda)).unwrap();
    let bt = lasso(
        &op,
        &y,
        &SolverConfig {
            step_rule: StepRule::Backtracking,
            ..SolverConfig::with_lambda(lambda)
        },
    )
    .unwrap();
    assert_eq!(fixed.support_estimate, bt.support_estimate);
    assert!(rel_dist(&bt.estimate, &fixed.estimate) < 1e-5);
}

#[test]
fn invalid_inputs_are_rejected() {
    let op = small_op(8, 2, 2);
    assert!(lasso(
        &op,
        &[Complex64::new(1.0, 0.0); 7],
        &SolverConfig::default()
    )
    .is_err());
    let mut y = vec![Complex64::new(1.0, 0.0); 8];
    y[3] = Complex64::new(f64::NAN, 0.0);
    assert!(lasso(&op, &y, &SolverConfig::default()).is_err());
    let bad = SolverConfig {
        max_iters: 0,
        ..SolverConfig::default()
    };
    assert!(lasso(&op, &[Complex64::new(1.0, 0.0); 8], &bad).is_err());
}
