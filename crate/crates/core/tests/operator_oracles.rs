use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use pilotcs::channel::{generate_sparse_channel, MagnitudeModel};
use pilotcs::operator::{dense, MeasurementOperator};
use pilotcs::pilot::assign_pilots;
use pilotcs::seqgen::{fzc_family, gold_family_default, kasami_family, PeriodicSequence};

fn cvec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn operators() -> Vec<(&'static str, MeasurementOperator)> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let random = (0..3)
        .map(|_| PeriodicSequence::normalized(cvec(&mut rng, 24)).unwrap())
        .collect();
    vec![
        (
            "fzc255",
            MeasurementOperator::new(fzc_family(255).unwrap().sequences().to_vec()).unwrap(),
        ),
        (
            "gold5",
            MeasurementOperator::new(gold_family_default(5).unwrap().sequences()[..3].to_vec())
                .unwrap(),
        ),
        (
            "kasami4",
            MeasurementOperator::new(kasami_family(4).unwrap().sequences().to_vec()).unwrap(),
        ),
        ("random24", MeasurementOperator::new(random).unwrap()),
    ]
}

#[test]
fn adjoint_satisfies_inner_product_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, op) in operators() {
        for _ in 0..5 {
            let x = cvec(&mut rng, op.cols());
            let y = cvec(&mut rng, op.rows());
            let lhs = dot(&op.forward(&x).unwrap(), &y);
            let rhs = dot(&x, &op.adjoint(&y).unwrap());
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()), "{name}");
        }
    }
}

#[test]
fn spectral_norm_matches_power_iteration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, op) in operators() {
        let mut v = cvec(&mut rng, op.cols());
        let mut estimate = 0.0;
        for _ in 0..3000 {
            let w = op.adjoint(&op.forward(&v).unwrap()).unwrap();
            estimate = norm(&w) / norm(&v);
            let s = norm(&w);
            v = w.into_iter().map(|z| z / s).collect();
        }
        let exact = op.spectral_norm_sq();
        assert!(
            (estimate - exact).abs() < 1e-6 * exact,
            "{name}: power {estimate} vs {exact}"
        );
    }
}

#[test]
fn materialized_columns_match_forward_on_unit_vectors() {
    for (name, op) in operators() {
        let a = op.materialize().unwrap();
        for j in (0..op.cols()).step_by(7) {
            let mut e = vec![Complex64::new(0.0, 0.0); op.cols()];
            e[j] = Complex64::new(1.0, 0.0);
            let col = op.forward(&e).unwrap();
            for (r, v) in col.iter().enumerate() {
                assert!((v - a[(r, j)]).norm() < 1e-12, "{name} column {j}");
            }
            assert_eq!(
                op.column(j).unwrap(),
                a.column(j).iter().copied().collect::<Vec<_>>(),
                "{name}"
            );
        }
    }
}

#[test]
fn dense_gram_agrees_with_coherence() {
    for (name, op) in operators() {
        let a = op.materialize().unwrap();
        let gram = a.adjoint() * &a;
        let mut mu: f64 = 0.0;
        for i in 0..op.cols() {
            assert!(
                (gram[(i, i)].re - 1.0).abs() < 1e-12,
                "{name}: column {i} not unit norm"
            );
            for j in i + 1..op.cols() {
                mu = mu.max(gram[(i, j)].norm());
            }
        }
        assert!(
            (mu - op.coherence()).abs() < 1e-10,
            "{name}: {mu} vs {}",
            op.coherence()
        );
        let top = gram
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(0.0, f64::max);
        assert!((top - op.spectral_norm_sq()).abs() < 1e-9, "{name}");
    }
}

#[test]
fn measurement_energy_is_bounded_by_operator_norm() {
    let fam = fzc_family(255).unwrap();
    let plan = assign_pilots(&fam, 10, 255, 51).unwrap();
    let op = MeasurementOperator::from_plan(&plan).unwrap();
    let bound = op.spectral_norm_sq().sqrt();
    for (seed, k) in [(1, 10), (2, 60), (3, 140), (4, 510)] {
        let h = generate_sparse_channel(op.cols(), k, MagnitudeModel::Rayleigh, seed).unwrap();
        let y = op.forward(&h.to_dense()).unwrap();
        assert!(norm(&y) <= bound * h.norm_sq().sqrt() + 1e-9);
    }
}

#[test]
fn convolution_matrix_folds_onto_partial_circulant() {
    let fam = fzc_family(35).unwrap();
    let plan = assign_pilots(&fam, 10, 35, 7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in plan.assignments() {
        let conv = dense::convolution_matrix(&a.pilot, 7);
        assert_eq!(conv.nrows(), 35 + 7 - 1);
        let mut folded = conv.rows(7 - 1, 35).into_owned();
        for r in 0..7 - 1 {
            let extra = conv.row(r).into_owned();
            let mut target = folded.row_mut(35 - (7 - 1) + r);
            target += extra;
        }
        let h = DVector::from_vec(cvec(&mut rng, 7));
        let diff = (&folded * &h) - dense::partial_circulant(&a.pilot, 7) * &h;
        assert!(diff.norm() < 1e-12, "transmitter {}", a.transmitter);
    }
}

#[test]
fn dense_limit_is_enforced() {
    let op = MeasurementOperator::new(fzc_family(255).unwrap().sequences().to_vec()).unwrap();
    assert!(op.materialize_with_limit(1000).is_err());
    assert!(op.materialize_with_limit(255 * 510).is_ok());
}
