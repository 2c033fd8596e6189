use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pilotcs::channel::{generate_sparse_channel, MagnitudeModel, SparseChannel};
use pilotcs::correlation::profile_naive;
use pilotcs::harness::{
    analyze, compute_metrics, run_experiment, ExperimentConfig, SUMMARY_HEADER,
};
use pilotcs::seqgen::{gold_family_default, FamilyKind};

fn small_sweep() -> ExperimentConfig {
    ExperimentConfig {
        k_list: vec![20, 60],
        snr_db: vec![10.0, 30.0, f64::INFINITY],
        trials: 4,
        base_seed: 5,
        ..ExperimentConfig::default()
    }
}

#[test]
fn sweep_is_reproducible_and_worker_independent() {
    let a = run_experiment(&small_sweep()).unwrap();
    let b = run_experiment(&ExperimentConfig {
        workers: 3,
        ..small_sweep()
    })
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.summary_csv(), b.summary_csv());
    assert_eq!(a.detail_csv(), b.detail_csv());
    assert!(a.summary_csv().starts_with(SUMMARY_HEADER));
    assert_eq!(a.cells.len(), 6);
    assert!(a.cells.iter().all(|c| c.trials == 4));
}

#[test]
fn cells_do_not_depend_on_their_neighbours() {
    let full = run_experiment(&small_sweep()).unwrap();
    let alone = run_experiment(&ExperimentConfig {
        k_list: vec![60],
        snr_db: vec![30.0],
        ..small_sweep()
    })
    .unwrap();
    assert_eq!(alone.cells[0], *full.cell(60, 30.0).unwrap());
}

#[test]
fn noiseless_small_k_is_always_exact() {
    let res = run_experiment(&ExperimentConfig {
        k_list: vec![10],
        snr_db: vec![f64::INFINITY],
        trials: 20,
        ..ExperimentConfig::default()
    })
    .unwrap();
    assert_eq!(res.cells[0].exact_rate, 1.0);
}

#[test]
fn invalid_configs_fail_before_running() {
    for text in [
        "M = 255\nL = 50",
        "t = 3",
        "K = 600",
        "trials = 0",
        "family = gold\nM = 31\nL = 31\nt = 2",
    ] {
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert!(run_experiment(&cfg).is_err(), "{text}");
    }
    assert!(ExperimentConfig::parse("bogus = 1").is_err());
    assert!(ExperimentConfig::parse("M 255").is_err());
}

#[test]
fn config_text_round_trips() {
    let cfg = ExperimentConfig::parse(
        "family = kasami\ndegree = 4\nM = 15\nL = 5\nt = 9\nK = 3, 6\nsnr_db = 15.5\nsolver.debias = false\nsolver.step_rule = backtracking\n",
    )
    .unwrap();
    assert_eq!(ExperimentConfig::parse(&cfg.to_string()).unwrap(), cfg);
    assert_eq!(cfg.q(), 3);
    assert_eq!(cfg.n(), 45);
}

/// Metrics recomputed element by element on the dense vectors.
fn reference_metrics(
    truth: &[Complex64],
    est: &[Complex64],
    support: &[usize],
) -> (f64, f64, f64, f64) {
    let mut err = 0.0;
    let mut energy = 0.0;
    for i in 0..truth.len() {
        let d = truth[i] - est[i];
        err += d.re * d.re + d.im * d.im;
        energy += truth[i].re * truth[i].re + truth[i].im * truth[i].im;
    }
    let true_support: Vec<usize> = (0..truth.len())
        .filter(|&i| truth[i] != Complex64::new(0.0, 0.0))
        .collect();
    let hits = support.iter().filter(|i| true_support.contains(i)).count() as f64;
    (
        err / truth.len() as f64,
        (err / energy).sqrt(),
        hits / support.len() as f64,
        hits / true_support.len() as f64,
    )
}

#[test]
fn metrics_match_reference_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for seed in 0..50 {
        let h = generate_sparse_channel(120, 15, MagnitudeModel::Rayleigh, seed).unwrap();
        let truth = h.to_dense();
        let est: Vec<Complex64> = truth
            .iter()
            .map(|z| z + Complex64::new(rng.random_range(-0.1..0.1), rng.random_range(-0.1..0.1)))
            .collect();
        let mut support: Vec<usize> = rand::seq::index::sample(&mut rng, 120, 20).into_vec();
        support.sort_unstable();
        let m = compute_metrics(&h, &est, &support).unwrap();
        let (mse, rel, p, r) = reference_metrics(&truth, &est, &support);
        assert!((m.mse - mse).abs() < 1e-12);
        assert!((m.rel_err - rel).abs() < 1e-12);
        assert!((m.precision - p).abs() < 1e-12);
        assert!((m.recall - r).abs() < 1e-12);
    }
}

#[test]
fn metric_edge_cases() {
    let h = SparseChannel::new(10, vec![1, 4, 7], vec![Complex64::new(1.0, 0.0); 3]).unwrap();
    let exact = compute_metrics(&h, &h.to_dense(), h.support()).unwrap();
    assert_eq!((exact.mse, exact.precision, exact.recall), (0.0, 1.0, 1.0));
    let zero = compute_metrics(&h, &[Complex64::new(0.0, 0.0); 10], &[]).unwrap();
    assert!((zero.mse - 3.0 / 10.0).abs() < 1e-15);
    assert_eq!(zero.recall, 0.0);
    assert!(compute_metrics(&h, &[Complex64::new(0.0, 0.0); 9], &[]).is_err());
}

#[test]
fn gold_analysis_matches_independent_profile() {
    let cfg = ExperimentConfig {
        family: FamilyKind::Gold,
        degree: Some(5),
        m: 31,
        l: 31,
        t: 2,
        k_list: vec![3],
        ..ExperimentConfig::default()
    };
    let report = analyze(&cfg).unwrap();
    let fam = gold_family_default(5).unwrap();
    let prof = profile_naive(&fam.sequences()[..2]).unwrap();
    let upper = 2.0 * (1.0 + prof.theta_a * 30.0);
    assert!((report.spectral_upper - upper).abs() < 1e-12);
    assert!((report.spectral_lower - 2.0).abs() < 1e-12);
    assert!(report.coherence <= prof.max_correlation() + 1e-12);
    assert!(report.violations(1e-9).is_empty());
}

#[test]
fn single_base_coherence_is_out_of_phase_autocorrelation() {
    let cfg = ExperimentConfig {
        family: FamilyKind::Gold,
        degree: Some(5),
        m: 31,
        l: 31,
        t: 1,
        k_list: vec![3],
        ..ExperimentConfig::default()
    };
    let report = analyze(&cfg).unwrap();
    let fam = gold_family_default(5).unwrap();
    let theta = profile_naive(&fam.sequences()[..1]).unwrap().theta_a;
    assert!((report.coherence - theta).abs() < 1e-12);
    assert_eq!(report.n, 31);
}

#[test]
fn default_analysis() {
    let report = analyze(&ExperimentConfig::default()).unwrap();
    assert!((report.coherence - 1.0 / 255f64.sqrt()).abs() < 1e-10);
    assert!((report.spectral_norm_sq - 2.0).abs() < 1e-10);
    assert!(report.violations(1e-9).is_empty());
}
