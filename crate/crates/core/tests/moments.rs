use mvbessel_core::ortho::{f2_laguerre_bridge, integral_equality_discrepancy};
use mvbessel_core::{
    enumerate_partitions, integral_equality_check, moment_consistency, Engine, GammaFactors,
    LinearForm, MomentTable,
};

#[test]
fn moment_ratios_are_rational() {
    for n in 1..=3 {
        MomentTable::build(n, 5)
            .unwrap()
            .check_factorisation()
            .unwrap();
    }
}

#[test]
fn moments_match_jack_orthogonality() {
    for n in 1..=3 {
        for nu in enumerate_partitions(5, n) {
            let r = moment_consistency(&nu, n).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn pairing_is_rational_multiple_of_base_moment() {
    let e = Engine::symbolic();
    for n in 1..=2 {
        for l in enumerate_partitions(3, n) {
            for m in enumerate_partitions(3, n) {
                let y = e.bessel(&l, n).unwrap();
                let z = e.bessel(&m, n).unwrap();
                let r = e
                    .w_pairing_ratio(&y.monomial_form, &z.monomial_form)
                    .unwrap();
                assert_eq!(r.is_zero(), l != m, "n={n} {l} {m}");
            }
        }
    }
}

#[test]
fn bridge_between_closed_forms() {
    let e = Engine::symbolic();
    for n in 1..=2 {
        for nu in enumerate_partitions(3, n) {
            for extra in 0..2 {
                assert!(
                    f2_laguerre_bridge(e, &nu, n, nu.part(1) + extra).unwrap(),
                    "n={n} {nu}"
                );
            }
        }
    }
}

#[test]
fn integral_equality_in_one_variable() {
    for nu in enumerate_partitions(5, 1) {
        assert!(integral_equality_check(&nu, 1).unwrap().passed());
    }
}

#[test]
fn integral_equality_prefactor_is_off_by_base_norm() {
    // The printed prefactor carries Γ(κ)/Γ(κi) where Γ(κi)/Γ(κ) is needed;
    // the quotient is ∏Γ(κi)²/Γ(κ)², the same for every ν.
    for n in 2..=3 {
        let mut expect = GammaFactors::new();
        for i in 1..=n as i64 {
            expect = expect
                .gamma(LinearForm::ints(0, 0, i))
                .gamma(LinearForm::ints(0, 0, i))
                .over_gamma(LinearForm::ints(0, 0, 1))
                .over_gamma(LinearForm::ints(0, 0, 1));
        }
        let expect = expect.build();
        for nu in enumerate_partitions(3, n) {
            assert_eq!(
                integral_equality_discrepancy(&nu, n).unwrap(),
                expect,
                "n={n} {nu}"
            );
        }
    }
}
