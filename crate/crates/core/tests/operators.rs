use mvbessel_core::{
    enumerate_partitions, partitions_of, Engine, ParamRational, Partition, SymmetricPolynomial,
};
use proptest::prelude::*;

fn sym_poly(n: usize, max_weight: u32) -> impl Strategy<Value = SymmetricPolynomial> {
    let shapes = enumerate_partitions(max_weight, n);
    prop::collection::vec((prop::sample::select(shapes), -3i64..4, 0u32..2), 0..4).prop_map(
        move |terms| {
            SymmetricPolynomial::from_terms(
                n,
                terms.into_iter().map(|(l, c, with_k)| {
                    let coeff = ParamRational::from_int(c) * ParamRational::k().pow(with_k);
                    (l, coeff)
                }),
            )
            .unwrap()
        },
    )
}

fn scalar() -> impl Strategy<Value = ParamRational> {
    (-3i64..4, 0u32..2).prop_map(|(c, e)| ParamRational::from_int(c) * ParamRational::a().pow(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn operators_are_linear(f in sym_poly(3, 4), g in sym_poly(3, 4), s in scalar(), t in scalar()) {
        let combo = f.scale(&s).add(&g.scale(&t));
        let d = combo.apply_d().unwrap();
        prop_assert_eq!(d, f.apply_d().unwrap().scale(&s).add(&g.apply_d().unwrap().scale(&t)));
        let db = combo.apply_db().unwrap();
        prop_assert_eq!(db, f.apply_db().unwrap().scale(&s).add(&g.apply_db().unwrap().scale(&t)));
    }

    #[test]
    fn operators_preserve_symmetry(f in sym_poly(3, 4)) {
        for out in [f.apply_d().unwrap(), f.apply_db().unwrap()] {
            let expanded = out.expand_to_exponents();
            prop_assert!(expanded.is_symmetric());
            prop_assert_eq!(expanded.symmetrize().unwrap(), out);
        }
    }
}

#[test]
fn d_is_triangular_in_dominance_order() {
    for n in 1..=3 {
        for w in 0..=6 {
            for lambda in partitions_of(w, n) {
                let image = SymmetricPolynomial::monomial(&lambda, n)
                    .unwrap()
                    .apply_d()
                    .unwrap();
                for mu in image.coeffs().keys() {
                    assert!(
                        mu.dominance_leq(&lambda).unwrap(),
                        "n={n}: D(m{lambda}) has m{mu}"
                    );
                }
            }
        }
    }
}

#[test]
fn db_preserves_containment_span_of_jacks() {
    let e = Engine::symbolic();
    for n in 1..=3 {
        for mu in enumerate_partitions(4, n) {
            let image = e.db_on_jack(&mu, n).unwrap();
            for nu in image.coeffs().keys() {
                assert!(mu.contains(nu), "n={n}: D^B P{mu} has P{nu}");
            }
        }
    }
}

#[test]
fn db_lowers_degree_by_at_most_one() {
    let n = 2;
    for lambda in enumerate_partitions(4, n) {
        let image = SymmetricPolynomial::monomial(&lambda, n)
            .unwrap()
            .apply_db()
            .unwrap();
        for mu in image.coeffs().keys() {
            assert!(mu.weight() + 1 >= lambda.weight() && mu.weight() <= lambda.weight());
        }
    }
}

#[test]
fn d_of_one_variable_monomial() {
    // D x^m = m(m-1) x^m in one variable
    let m = Partition::new(vec![3]).unwrap();
    let d = SymmetricPolynomial::monomial(&m, 1)
        .unwrap()
        .apply_d()
        .unwrap();
    assert_eq!(d.coeff(&m), ParamRational::from_int(6));
}
