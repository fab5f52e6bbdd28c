use mvbessel_core::bessel::bessel_at_zero_amended;
use mvbessel_core::jack::is_nonneg_integral_in_inverse_kappa;
use mvbessel_core::{
    bessel_at_zero, enumerate_partitions, jack_norm_closed, pochhammer, pole_certificate, rat,
    torus_pairing_integer_kappa, Engine, LinearForm, ParamPolynomial, ParamRational, Partition,
};

fn budget() -> Vec<(usize, Partition)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let w = if n == 3 { 3 } else { 4 };
        out.extend(enumerate_partitions(w, n).into_iter().map(|l| (n, l)));
    }
    out
}

/// Strips factors `qκ + p` with `p, q > 0`; what remains must be constant.
fn only_negative_rational_poles(den: &ParamPolynomial) -> bool {
    let mut rest = den.clone();
    'outer: while !rest.is_constant() {
        for q in 1..=6 {
            for p in 1..=40 {
                let f = ParamPolynomial::from_terms([((0, 0), rat(p)), ((0, 1), rat(q))]);
                if let Some(r) = rest.exact_div(&f) {
                    rest = r;
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

#[test]
fn jacks_are_homogeneous_with_kappa_only_poles() {
    let e = Engine::symbolic();
    for n in 1..=3 {
        for l in enumerate_partitions(5, n) {
            let p = e.jack(&l, n).unwrap();
            assert!(p.is_homogeneous() && p.degree() == l.weight(), "{l}");
            assert_eq!(p.coeff(&l), ParamRational::one());
            for c in p.coeffs().values() {
                assert!(!c.depends_on_a());
                assert!(only_negative_rational_poles(c.denom()), "P{l}: {c}");
            }
        }
    }
}

#[test]
fn shift_identity() {
    let e = Engine::symbolic();
    for n in 1..=3 {
        for nu in enumerate_partitions(4, n) {
            assert!(e.shift_identity_check(&nu, n).unwrap(), "n={n} {nu}");
        }
    }
}

#[test]
fn integral_form_is_integral_in_inverse_kappa() {
    let e = Engine::symbolic();
    for n in 1..=3 {
        for l in enumerate_partitions(4, n) {
            let (j, _) = e.jack_integral_form(&l, n).unwrap();
            for (mu, c) in j.coeffs() {
                assert!(is_nonneg_integral_in_inverse_kappa(c), "J{l} at m{mu}: {c}");
            }
        }
    }
}

#[test]
fn torus_orthogonality_at_integer_kappa() {
    for kappa in 1..=3u32 {
        let e = Engine::new(mvbessel_core::Params::new(None, Some(rat(kappa as i64))));
        for n in 1..=3 {
            let max_w = if kappa == 3 && n == 3 { 3 } else { 4 };
            for w in 0..=max_w {
                let ps = mvbessel_core::partitions_of(w, n);
                for l in &ps {
                    for m in &ps {
                        let v = torus_pairing_integer_kappa(
                            &e.jack(l, n).unwrap(),
                            &e.jack(m, n).unwrap(),
                            kappa,
                        )
                        .unwrap();
                        if l == m {
                            let closed = jack_norm_closed(l, n)
                                .unwrap()
                                .eval_exact(&rat(0), &rat(kappa as i64))
                                .unwrap();
                            assert_eq!(v, closed, "kappa={kappa} n={n} {l}");
                        } else {
                            assert_eq!(v, rat(0), "kappa={kappa} n={n} {l} vs {m}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn bessel_structure() {
    let e = Engine::symbolic();
    for (n, l) in budget() {
        let y = e.bessel(&l, n).unwrap();
        let residual = y
            .monomial_form
            .apply_db()
            .unwrap()
            .sub(&y.monomial_form.scale(&y.eigenvalue));
        assert!(residual.is_zero(), "n={n} {l}");
        for mu in y.jack_coeffs.coeffs().keys() {
            assert!(l.contains(mu), "Y{l} has P{mu}");
        }
        assert_eq!(y.jack_coeffs.coeff(&l), ParamRational::one());
        let cert = pole_certificate(&y);
        assert!(cert.pass, "n={n} {l}: leftover {}", cert.leftover);
        let zero = bessel_at_zero_amended(&l, n).unwrap();
        assert_eq!(y.constant_term(), zero, "n={n} {l}");
    }
}

#[test]
fn one_variable_differential_equation() {
    // x²y'' + (ax + 2)y' = ε y, coefficientwise
    let e = Engine::symbolic();
    let a = ParamRational::a();
    for m in 0..=6u32 {
        let y = e.bessel(&Partition::new(vec![m]).unwrap(), 1).unwrap();
        let c = |j: u32| {
            let p = if j == 0 {
                Partition::empty()
            } else {
                Partition::new(vec![j]).unwrap()
            };
            y.monomial_form.coeff(&p)
        };
        for j in 0..=m {
            let jj = ParamRational::from_int(j as i64);
            let lhs = &jj * &(&ParamRational::from_int(j as i64 - 1) + &a) * c(j)
                + ParamRational::from_int(2 * (j as i64 + 1)) * c(j + 1);
            assert_eq!(lhs, &y.eigenvalue * &c(j), "m={m} j={j}");
        }
    }
}

#[test]
fn one_variable_constant_term() {
    let e = Engine::symbolic();
    let am1 = LinearForm::ints(-1, 1, 0);
    for m in 0..=6u32 {
        let l = Partition::new(vec![m]).unwrap();
        let closed = ParamRational::new(
            pochhammer(&am1, m).scale(&rat(2).pow(m as i32)),
            pochhammer(&am1, 2 * m),
        )
        .unwrap();
        assert_eq!(bessel_at_zero(&l, 1).unwrap(), closed);
        assert_eq!(e.bessel(&l, 1).unwrap().constant_term(), closed, "m={m}");
    }
}
