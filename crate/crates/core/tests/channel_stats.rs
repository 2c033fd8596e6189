use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use pilotcs::channel::{add_awgn, generate_sparse_channel, noise_variance, MagnitudeModel};

#[test]
fn support_positions_are_uniform() {
    let (n, k, draws) = (20usize, 5usize, 100_000u64);
    let mut counts = vec![0u64; n];
    for seed in 0..draws {
        let h = generate_sparse_channel(n, k, MagnitudeModel::Unit, seed).unwrap();
        assert_eq!(h.sparsity(), k);
        for &i in h.support() {
            counts[i] += 1;
        }
    }
    let p = k as f64 / n as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    for (i, &c) in counts.iter().enumerate() {
        let freq = c as f64 / draws as f64;
        assert!((freq - p).abs() <= 3.0 * se, "position {i}: {freq} vs {p}");
    }
}

#[test]
fn unit_model_has_unit_magnitudes_and_rayleigh_has_unit_power() {
    let h = generate_sparse_channel(510, 140, MagnitudeModel::Unit, 5).unwrap();
    assert!(h
        .coefficients()
        .iter()
        .all(|z| (z.norm() - 1.0).abs() < 1e-12));

    let mut power = 0.0;
    let mut count = 0;
    for seed in 0..200 {
        let h = generate_sparse_channel(510, 100, MagnitudeModel::Rayleigh, seed).unwrap();
        power += h.norm_sq();
        count += h.sparsity();
    }
    let mean = power / count as f64;
    // 2e4 exponential(1) draws: standard error about 0.007
    assert!((mean - 1.0).abs() < 0.03, "mean tap power {mean}");
}

#[test]
fn realized_snr_matches_request() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let y: Vec<Complex64> = (0..10_000)
        .map(|_| {
            Complex64::new(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        })
        .collect();
    let signal: f64 = y.iter().map(|z| z.norm_sqr()).sum();
    for (snr, seed) in [(10.0, 1), (20.0, 2), (30.0, 3), (0.0, 4)] {
        let (noisy, spec) = add_awgn(&y, snr, seed).unwrap();
        let noise: f64 = noisy.iter().zip(&y).map(|(a, b)| (a - b).norm_sqr()).sum();
        let measured = 10.0 * (signal / noise).log10();
        assert!(
            (measured - snr).abs() < 0.2,
            "requested {snr} dB, measured {measured}"
        );
        assert!((spec.realized_sigma_sq - noise_variance(&y, snr).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn seeds_reproduce_bit_exactly() {
    let a = generate_sparse_channel(510, 60, MagnitudeModel::Rayleigh, 77).unwrap();
    let b = generate_sparse_channel(510, 60, MagnitudeModel::Rayleigh, 77).unwrap();
    assert_eq!(a, b);
    let y = a.to_dense();
    assert_eq!(
        add_awgn(&y, 20.0, 3).unwrap(),
        add_awgn(&y, 20.0, 3).unwrap()
    );
    assert_ne!(
        add_awgn(&y, 20.0, 3).unwrap().0,
        add_awgn(&y, 20.0, 4).unwrap().0
    );
}
