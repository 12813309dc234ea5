use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_hadamard::{
    beta_star, is_schur_stable, locate_onset, principal_power, pstar_exact, pstar_grid, to_integer_order, Direction,
    Error, FractionalPolynomial, Mode, MonicPolynomial, StabilityStatus,
};

fn random_contracting(rng: &mut ChaCha8Rng) -> MonicPolynomial {
    let n = rng.gen_range(2..=8);
    let coeffs = (0..n)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(0.0..std::f64::consts::TAU))
            }
        })
        .collect();
    MonicPolynomial::new(coeffs).unwrap()
}

#[test]
fn ordering_chain_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let f = random_contracting(&mut rng);
        if f.support().is_empty() {
            continue;
        }
        let exact = pstar_exact(&f, Mode::Max, 1e-10).unwrap().value;
        let grid = pstar_grid(&f, Mode::Max, 200).unwrap().value;
        assert!(exact <= grid + 1e-12, "{f}: exact {exact} grid {grid}");
        let onset = match locate_onset(&f, Direction::Increasing, 1e-6) {
            Ok(r) => r,
            Err(Error::MarginalZone { .. }) => continue,
            Err(e) => panic!("{f}: {e}"),
        };
        assert!(onset.value <= exact + 1e-6, "{f}: onset {} exact {exact}", onset.value);
        if let Ok(b) = beta_star(&f, Mode::Min) {
            assert!(
                b.value <= onset.value + 1e-6,
                "{f}: beta {} onset {}",
                b.value,
                onset.value
            );
        }
        checked += 1;
    }
}

#[test]
fn instability_bounds_hold_at_sampled_powers() {
    let g = MonicPolynomial::from_real(&[3.0, 2.0, 2.5, 0.0, 0.0]).unwrap();
    let b = beta_star(&g, Mode::Max).unwrap().value;
    for i in 0..10 {
        let p = b + 0.5 * i as f64;
        assert_eq!(
            is_schur_stable(&principal_power(&g, p)).unwrap().status,
            StabilityStatus::Unstable
        );
    }
    let f = MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).unwrap();
    let b = beta_star(&f, Mode::Min).unwrap().value;
    for i in 0..10 {
        let p = b - 0.5 * i as f64;
        assert_ne!(
            is_schur_stable(&principal_power(&f, p)).unwrap().status,
            StabilityStatus::Stable
        );
    }
}

#[test]
fn fractional_form_has_identical_thresholds() {
    let frac: FractionalPolynomial = serde_json::from_str(
        r#"{"terms": [{"pow": [5, 2]}, {"pow": [1, 1], "coeff": [0.9, 0]}, {"pow": [1, 2], "coeff": [0.2, 0]}, {"pow": [0, 1], "coeff": [0.7, 0]}]}"#,
    )
    .unwrap();
    let (alpha, big_f) = to_integer_order(&frac).unwrap();
    assert_eq!(alpha.to_f64(), 0.5);
    let f = MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).unwrap();
    let a = pstar_grid(&big_f, Mode::Max, 1000).unwrap().value;
    let b = pstar_grid(&f, Mode::Max, 1000).unwrap().value;
    assert!((a - b).abs() <= 1e-9);
    let a = pstar_exact(&big_f, Mode::Max, 1e-10).unwrap().value;
    let b = pstar_exact(&f, Mode::Max, 1e-10).unwrap().value;
    assert!((a - b).abs() <= 1e-9);
}

#[test]
fn polynomial_json_round_trip() {
    let f: MonicPolynomial =
        serde_json::from_str(r#"{"degree": 4, "coeffs": [[0, -0.9], [0.7, 0], [0, 0], [0.2, -0.4]]}"#).unwrap();
    assert_eq!(f.degree(), 4);
    assert_eq!(f.coeff(3), Complex64::new(0.2, -0.4));
    let back: MonicPolynomial = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(back, f);
    assert!(serde_json::from_str::<MonicPolynomial>(r#"{"degree": 3, "coeffs": [[1, 0]]}"#).is_err());
}
