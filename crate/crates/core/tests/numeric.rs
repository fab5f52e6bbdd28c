use mvbessel_core::numeric::gamma::gamma_eval;
use mvbessel_core::numeric::validate::torus_integral;
use mvbessel_core::{
    contour_orthogonality_numeric, eval_weight_series, kadell_numeric, l2_orthogonality_numeric,
    rat, ratio, Engine, Mode, Partition, QuadratureConfig, Status, WeightSeriesEvaluator,
};
use num_complex::Complex64;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn gamma_known_values() {
    let g = |x: f64| gamma_eval(Complex64::new(x, 0.0)).unwrap().re;
    assert!((g(5.0) - 24.0).abs() < 1e-12);
    assert!((g(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    assert!((g(3.5) - 3.323_350_970_447_842_6).abs() < 1e-12);
    assert!(gamma_eval(Complex64::new(-2.0, 0.0)).is_err());
}

#[test]
fn weight_series_examples() {
    let cfg = QuadratureConfig::default();
    let one = eval_weight_series(&[Complex64::new(1.0, 0.0)], &rat(3), &rat(1), &cfg).unwrap();
    assert!((one.value.re - (1.0 - (-2.0f64).exp())).abs() < 1e-13);
    let mut e = WeightSeriesEvaluator::new(2, &rat(3), &rat(1));
    let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    let t = e.eval_truncated(&x, 40).unwrap();
    assert!(t.tail < 1e-12, "{t:?}");
}

#[test]
fn contour_is_stable_under_doubling() {
    let e = Engine::symbolic();
    let y = e.bessel(&p(&[2]), 2).unwrap();
    let f = y
        .monomial_form
        .specialize(Some(&rat(3)), Some(&rat(1)))
        .unwrap()
        .to_rational()
        .unwrap();
    let f = f.multiply(&f).unwrap();
    let (v1, _) = torus_integral(&f, &rat(3), &rat(1), 24, 8).unwrap();
    let (v2, _) = torus_integral(&f, &rat(3), &rat(1), 48, 16).unwrap();
    assert!((v1 - v2).abs() < 1e-20 * v1.abs(), "{v1} {v2}");
}

#[test]
fn contour_two_variable_pairs() {
    let cfg = QuadratureConfig::default().with_tolerance(1e-8);
    for (l, m) in [(p(&[1]), p(&[])), (p(&[2]), p(&[1, 1])), (p(&[1]), p(&[1]))] {
        let r = contour_orthogonality_numeric(&l, &m, 2, &rat(3), &rat(2), &cfg).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn contour_matches_exact_diagonal_at_fractional_a() {
    let cfg = QuadratureConfig::default().with_tolerance(1e-10);
    let r =
        contour_orthogonality_numeric(&p(&[2]), &p(&[2]), 1, &ratio(7, 3), &rat(1), &cfg).unwrap();
    assert!(r.passed(), "{r:?}");
}

// The per-sample spread of the off-diagonal integrand is about twice the
// diagonal scale, so 2^31 samples put the 1e-4 tolerance at two standard errors.
#[test]
fn l2_monte_carlo_example() {
    let cfg = QuadratureConfig {
        seed: 42,
        mc_samples: 1 << 31,
        tolerance: 1e-4,
        ..Default::default()
    };
    let r =
        l2_orthogonality_numeric(&p(&[1]), &p(&[]), 2, &rat(-10), &rat(1), &cfg, Mode::Mc).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn monte_carlo_is_bit_reproducible() {
    let cfg = QuadratureConfig {
        mc_samples: 1 << 18,
        ..Default::default()
    };
    let run = || {
        l2_orthogonality_numeric(&p(&[1]), &p(&[]), 2, &rat(-10), &rat(1), &cfg, Mode::Mc).unwrap()
    };
    assert_eq!(
        serde_json::to_vec(&run()).unwrap(),
        serde_json::to_vec(&run()).unwrap()
    );
}

#[test]
fn kadell_precondition() {
    let cfg = QuadratureConfig::default();
    assert!(kadell_numeric(&p(&[]), 2, &rat(0), &rat(1), &rat(1), &cfg, Mode::Quad).is_err());
    assert!(kadell_numeric(&p(&[1]), 1, &rat(1), &rat(-1), &rat(1), &cfg, Mode::Quad).is_err());
}

#[test]
fn numeric_reports_carry_provenance() {
    let cfg = QuadratureConfig::default();
    let r = kadell_numeric(&p(&[1]), 2, &rat(2), &rat(3), &rat(1), &cfg, Mode::Mc).unwrap();
    let d = r.numeric.as_ref().unwrap();
    assert_eq!(d.seed, Some(42));
    assert!(d.samples.is_some() && d.std_err.is_some());
    assert_ne!(r.status, Status::Inconclusive);
}
