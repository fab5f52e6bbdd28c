use mvbessel_core::{
    pochhammer, GammaFactors, GammaProduct, LinearForm, ParamPolynomial, ParamRational, Rational,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = ParamPolynomial> {
    prop::collection::vec(((0usize..3, 0usize..3), -4i64..5), 0..5).prop_map(|terms| {
        ParamPolynomial::from_terms(
            terms
                .into_iter()
                .map(|(d, c)| (d, Rational::from_integer(c.into()))),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = ParamPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = ParamRational> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| ParamRational::new(n, d).unwrap())
}

fn linear_form() -> impl Strategy<Value = LinearForm> {
    (-3i64..4, -1i64..2, -2i64..3).prop_map(|(c, a, k)| LinearForm::ints(c, a, k))
}

fn gamma_product() -> impl Strategy<Value = GammaProduct> {
    (
        prop::collection::vec(linear_form(), 0..4),
        prop::collection::vec(linear_form(), 0..4),
        linear_form(),
        ratfunc().prop_filter("nonzero", |r| !r.is_zero()),
    )
        .prop_map(|(num, den, two, pre)| {
            let mut g = GammaFactors::new().times(&pre).two_to(two);
            for l in num {
                g = g.gamma(l);
            }
            for l in den {
                g = g.over_gamma(l);
            }
            g.build()
        })
}

fn point() -> impl Strategy<Value = (Rational, Rational)> {
    (-40i64..40, 1i64..7, -40i64..40, 1i64..7).prop_map(|(p, q, r, s)| {
        (
            Rational::new(p.into(), q.into()),
            Rational::new(r.into(), s.into()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_times_divisor(x in ratfunc(), y in ratfunc().prop_filter("nonzero", |y| !y.is_zero())) {
        prop_assert_eq!(&(&x / &y) * &y, x);
    }

    #[test]
    fn field_axioms(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_round_trips(x in ratfunc()) {
        let back: ParamRational = x.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), x.to_string());
        prop_assert_eq!(back, x);
    }

    #[test]
    fn pochhammer_splits(l in linear_form(), m in 0u32..5, m2 in 0u32..5) {
        let whole = pochhammer(&l, m + m2);
        let split = pochhammer(&l, m).mul(&pochhammer(&l.shift(m as i64), m2));
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn normalisation_is_idempotent(g in gamma_product()) {
        let once = g.normalize();
        prop_assert_eq!(&once, &g);
        prop_assert_eq!(once.normalize().to_string(), once.to_string());
        prop_assert!(once.is_normal());
    }

    #[test]
    fn gamma_quotient_of_shift_is_pochhammer(
        l in linear_form().prop_filter("off the poles", |l| !l.as_constant().is_some_and(|c| c.is_integer() && *c <= Rational::from_integer(0.into()))),
        m in 0u32..6,
    ) {
        let g = GammaFactors::new().gamma(l.shift(m as i64)).over_gamma(l.clone()).build();
        prop_assert_eq!(g.as_ratfunc(), Some(ParamRational::from(pochhammer(&l, m))));
    }

    #[test]
    fn substitution_is_multiplicative(x in ratfunc(), y in ratfunc(), (a, k) in point()) {
        let (Ok(fx), Ok(fy), Ok(fxy)) = (x.eval(&a, &k), y.eval(&a, &k), (&x * &y).eval(&a, &k)) else {
            return Ok(());
        };
        prop_assert_eq!(&fx * &fy, fxy.clone());
        let (af, kf) = (a.to_f64().unwrap(), k.to_f64().unwrap());
        let prod = x.eval_f64(af, kf).unwrap() * y.eval_f64(af, kf).unwrap();
        let direct = fxy.to_f64().unwrap();
        prop_assert!((prod - direct).abs() <= 1e-12 * direct.abs().max(1e-300) || prod == direct);
    }

    #[test]
    fn substitution_is_additive(x in ratfunc(), y in ratfunc(), (a, k) in point()) {
        if let (Ok(fx), Ok(fy), Ok(s)) = (x.eval(&a, &k), y.eval(&a, &k), (&x + &y).eval(&a, &k)) {
            prop_assert_eq!(fx + fy, s);
        }
    }
}

#[test]
fn linear_form_display_order() {
    assert_eq!(LinearForm::ints(-1, 1, 1).to_string(), "a-1+k");
    assert_eq!(LinearForm::ints(0, 0, 2).to_string(), "2*k");
}

#[test]
fn gamma_products_compare_by_normal_form() {
    let a = LinearForm::ints(0, 1, 0);
    let lhs = GammaFactors::new().gamma(a.shift(2)).build();
    let rhs = GammaFactors::new()
        .gamma(a.clone())
        .times(&ParamRational::from(pochhammer(&a, 2)))
        .build();
    assert_eq!(lhs, rhs);
}
