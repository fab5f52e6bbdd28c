//! Jack polynomials `P_λ`, the Jack basis, torus norms and the integral
//! form `J_λ`.

use crate::engine::Engine;
use crate::exact::{
    rat, GammaFactors, GammaProduct, LinearForm, ParamPolynomial, ParamRational, Rational,
};
use crate::partition::{partitions_of, Partition};
use crate::sympoly::{d_image, ExponentPolynomial, PolyJson, SymmetricPolynomial, TermJson};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

/// Coordinates `Σ c_μ P_μ` in the Jack basis.
#[derive(Clone, Debug, PartialEq)]
pub struct JackExpansion {
    n: usize,
    coeffs: BTreeMap<Partition, ParamRational>,
}

impl JackExpansion {
    pub fn new(n: usize) -> Self {
        JackExpansion {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, ParamRational> {
        &self.coeffs
    }

    pub fn coeff(&self, mu: &Partition) -> ParamRational {
        self.coeffs
            .get(mu)
            .cloned()
            .unwrap_or_else(ParamRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mu: Partition, c: ParamRational) {
        if c.is_zero() {
            return;
        }
        let sum = &self.coeff(&mu) + &c;
        if sum.is_zero() {
            self.coeffs.remove(&mu);
        } else {
            self.coeffs.insert(mu, sum);
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            basis: "jack".into(),
            terms: self
                .coeffs
                .iter()
                .rev()
                .map(|(mu, c)| TermJson {
                    mu: mu.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

fn big(c: &BigInt) -> ParamRational {
    ParamRational::from_rational(Rational::from_integer(c.clone()))
}

impl Engine {
    /// `P_λ` in `n` variables, in the monomial basis.
    pub fn jack(&self, lambda: &Partition, n: usize) -> Result<Arc<SymmetricPolynomial>> {
        lambda.check_length(n)?;
        self.jack
            .get_or_try(&(lambda.clone(), n), || self.solve_jack(lambda, n))
    }

    /// Diagonal coefficient of `D` on `m_μ`, which is also the eigenvalue of
    /// `P_μ`.
    pub fn jack_eigenvalue(&self, mu: &Partition, n: usize) -> Result<ParamRational> {
        mu.check_length(n)?;
        let img = d_image(mu, n)?;
        let pair = img
            .pair
            .iter()
            .find(|(p, _)| p == mu)
            .map(|(_, c)| big(c))
            .unwrap_or_else(ParamRational::zero);
        let two_k = self.params().k_value() * ParamRational::from_int(2);
        Ok(ParamRational::from_int(img.diag) + two_k * pair)
    }

    fn solve_jack(&self, lambda: &Partition, n: usize) -> Result<SymmetricPolynomial> {
        let two_k = self.params().k_value() * ParamRational::from_int(2);
        let eps = self.jack_eigenvalue(lambda, n)?;
        let below = partitions_of(lambda.weight(), n)
            .into_iter()
            .filter(|mu| mu <= lambda && mu.dominance_leq(lambda).unwrap_or(false));
        let mut rhs: HashMap<Partition, ParamRational> = HashMap::new();
        let mut out = SymmetricPolynomial::zero(n);
        for mu in below {
            let u = if &mu == lambda {
                ParamRational::one()
            } else {
                let gap = &eps - &self.jack_eigenvalue(&mu, n)?;
                if gap.is_zero() {
                    return Err(Error::Degeneracy {
                        lambda: lambda.clone(),
                        mu,
                    });
                }
                match rhs.remove(&mu) {
                    Some(r) => r / gap,
                    None => continue,
                }
            };
            if u.is_zero() {
                continue;
            }
            let scaled = &u * &two_k;
            for (nu, c) in &d_image(&mu, n)?.pair {
                if nu != &mu {
                    let e = rhs.entry(nu.clone()).or_insert_with(ParamRational::zero);
                    *e = &*e + &scaled * big(c);
                }
            }
            out.add_term(mu, u);
        }
        Ok(out)
    }

    /// Coordinates of `f` in the Jack basis, peeling off the lex-largest
    /// monomial each step.
    pub fn to_jack_basis(&self, f: &SymmetricPolynomial) -> Result<JackExpansion> {
        let n = f.n();
        let mut rem = f.clone();
        let mut out = JackExpansion::new(n);
        while let Some((mu, c)) = rem.coeffs().last_key_value() {
            let (mu, c) = (mu.clone(), c.clone());
            let p = self.jack(&mu, n)?;
            rem = rem.sub(&p.scale(&c));
            out.coeffs.insert(mu, c);
        }
        Ok(out)
    }

    pub fn from_jack_basis(&self, e: &JackExpansion) -> Result<SymmetricPolynomial> {
        let mut out = SymmetricPolynomial::zero(e.n);
        for (mu, c) in &e.coeffs {
            out = out.add(&self.jack(mu, e.n)?.scale(c));
        }
        Ok(out)
    }

    /// `m_μ` in the Jack basis (memoised).
    pub(crate) fn monomial_in_jack(&self, mu: &Partition, n: usize) -> Result<Arc<JackExpansion>> {
        self.monomial_in_jack.get_or_try(&(mu.clone(), n), || {
            self.to_jack_basis(&SymmetricPolynomial::monomial(mu, n)?)
        })
    }

    /// `(J_λ, h^λ)` with `J_λ = κ^{-|λ|} h^λ P_λ`.
    pub fn jack_integral_form(
        &self,
        lambda: &Partition,
        n: usize,
    ) -> Result<(SymmetricPolynomial, ParamRational)> {
        let p = self.jack(lambda, n)?;
        let h = self
            .params()
            .apply(&ParamRational::from_poly(hook_product(lambda)))?;
        let k = self.params().k_value();
        let scale = &h * &k.powi(-(lambda.weight() as i32))?;
        Ok((p.scale(&scale), h))
    }

    /// Checks `(y_1⋯y_n)^N P_ν(1/y) = P_ν̂` exactly.
    pub fn reciprocal_complement_check(
        &self,
        nu: &Partition,
        big_n: u32,
        n: usize,
    ) -> Result<bool> {
        let hat = nu.complement_in_box(big_n, n)?;
        let lhs = reciprocal_times_power(&*self.jack(nu, n)?, big_n)?;
        Ok(lhs == *self.jack(&hat, n)?)
    }

    /// Checks `x_1⋯x_n P_ν = P_{ν+(1^n)}` exactly.
    pub fn shift_identity_check(&self, nu: &Partition, n: usize) -> Result<bool> {
        let shifted = nu.add_column(n)?;
        let p = self.jack(nu, n)?;
        let mut lhs = SymmetricPolynomial::zero(n);
        for (mu, c) in p.coeffs() {
            lhs.add_term(mu.add_column(n)?, c.clone());
        }
        Ok(lhs == *self.jack(&shifted, n)?)
    }
}

fn reciprocal_times_power(p: &SymmetricPolynomial, big_n: u32) -> Result<SymmetricPolynomial> {
    let n = p.n();
    let mut out = ExponentPolynomial::new(n);
    for (e, c) in p.expand_to_exponents().terms() {
        let flipped = e
            .iter()
            .map(|&x| big_n.checked_sub(x))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::Precondition(format!("degree exceeds {big_n}")))?;
        out.add_term(flipped, c.clone());
    }
    out.symmetrize()
}

/// `h^λ = ∏_{(i,j)∈λ} (λ_i - j + κ(λ'_j - i + 1))`.
pub fn hook_product(lambda: &Partition) -> ParamPolynomial {
    let conj = lambda.conjugate();
    lambda.boxes().fold(ParamPolynomial::one(), |acc, (i, j)| {
        let c0 = lambda.part(i) as i64 - j as i64;
        let ck = conj.part(j as usize) as i64 - i as i64 + 1;
        acc.mul(&LinearForm::ints(c0, 0, ck).to_poly())
    })
}

/// `J_λ(1^n) = κ^{-|λ|} ∏_{(i,j)∈λ} (j - 1 + κ(n - i + 1))`.
pub fn jack_integral_at_ones(lambda: &Partition, n: usize) -> ParamRational {
    let prod = lambda.boxes().fold(ParamPolynomial::one(), |acc, (i, j)| {
        acc.mul(&LinearForm::ints(j as i64 - 1, 0, n as i64 - i as i64 + 1).to_poly())
    });
    let k_pow = ParamRational::from_poly(ParamPolynomial::k().pow(lambda.weight()));
    ParamRational::from_poly(prod) / k_pow
}

/// Closed form of `⟨P_λ, P_λ⟩'_n` as the unreduced four-factor product.
pub fn jack_norm_closed(lambda: &Partition, n: usize) -> Result<GammaProduct> {
    lambda.check_length(n)?;
    let mut g = GammaFactors::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let d = lambda.part(i) as i64 - lambda.part(j) as i64;
            let s = (j - i) as i64;
            g = g
                .gamma(LinearForm::ints(d, 0, s + 1))
                .gamma(LinearForm::ints(d + 1, 0, s - 1))
                .over_gamma(LinearForm::ints(d, 0, s))
                .over_gamma(LinearForm::ints(d + 1, 0, s));
        }
    }
    Ok(g.build())
}

type Laurent = HashMap<Vec<i64>, BigInt>;

fn binomial(k: u32, t: u32) -> BigInt {
    (0..t).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(k - i) / BigInt::from(i + 1)
    })
}

/// `∏_{i≠j} (1 - x_i/x_j)^κ` as a Laurent polynomial.
fn torus_density(n: usize, kappa: u32) -> Arc<Laurent> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, u32), Arc<Laurent>>>> = OnceLock::new();
    let lock = CACHE.get_or_init(Default::default);
    if let Some(v) = lock.read().unwrap().get(&(n, kappa)) {
        return v.clone();
    }
    let mut acc: Laurent = HashMap::from([(vec![0; n], BigInt::one())]);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next: Laurent = HashMap::new();
            for (e, c) in &acc {
                for t in 0..=kappa {
                    let mut b = binomial(kappa, t);
                    if t % 2 == 1 {
                        b = -b;
                    }
                    let mut e2 = e.clone();
                    e2[i] += t as i64;
                    e2[j] -= t as i64;
                    let slot = next.entry(e2).or_insert_with(BigInt::zero);
                    *slot += c * &b;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
    }
    let v = Arc::new(acc);
    lock.write().unwrap().entry((n, kappa)).or_insert(v).clone()
}

/// `⟨f, g⟩'_n` at a positive integer κ, as `1/n!` times the constant term of
/// `f(x) g(1/x) ∏_{i≠j}(1 - x_i/x_j)^κ`.
pub fn torus_pairing_integer_kappa(
    f: &SymmetricPolynomial,
    g: &SymmetricPolynomial,
    kappa: u32,
) -> Result<Rational> {
    if f.n() != g.n() {
        return Err(Error::Precondition("variable counts differ".into()));
    }
    if kappa == 0 {
        return Err(Error::Precondition(
            "kappa must be a positive integer".into(),
        ));
    }
    let n = f.n();
    let k = rat(kappa as i64);
    let fe = f
        .specialize(None, Some(&k))?
        .to_rational()?
        .expand_to_exponents();
    let ge = g
        .specialize(None, Some(&k))?
        .to_rational()?
        .expand_to_exponents();
    let dens = torus_density(n, kappa);
    let mut total = Rational::zero();
    for (a, ca) in fe.terms() {
        for (b, cb) in ge.terms() {
            let key: Vec<i64> = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| y as i64 - x as i64)
                .collect();
            if let Some(d) = dens.get(&key) {
                total += ca * cb * Rational::from_integer(d.clone());
            }
        }
    }
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    Ok(total / Rational::from_integer(fact))
}

/// Coefficients of `c` as a polynomial in `1/κ` (constant term first), when
/// `c` is one.
pub fn inverse_kappa_coefficients(c: &ParamRational) -> Option<Vec<Rational>> {
    if c.depends_on_a() {
        return None;
    }
    let den = c.denom().terms();
    let [((0, d), s)] = den.as_slice() else {
        return None;
    };
    let mut out = vec![Rational::zero(); *d + 1];
    for ((da, dk), v) in c.numer().terms() {
        if da != 0 || dk > *d {
            return None;
        }
        out[*d - dk] = v / s;
    }
    Some(out)
}

/// True when `c` is a polynomial in `1/κ` with nonnegative integer
/// coefficients.
pub fn is_nonneg_integral_in_inverse_kappa(c: &ParamRational) -> bool {
    inverse_kappa_coefficients(c)
        .is_some_and(|v| v.iter().all(|x| x.is_integer() && !x.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn pr(s: &str) -> ParamRational {
        s.parse().unwrap()
    }

    #[test]
    fn small_jacks() {
        let e = Engine::symbolic();
        let p11 = e.jack(&p(&[1, 1]), 2).unwrap();
        assert_eq!(*p11, SymmetricPolynomial::monomial(&p(&[1, 1]), 2).unwrap());
        let p2 = e.jack(&p(&[2]), 2).unwrap();
        assert_eq!(p2.coeff(&p(&[2])), ParamRational::one());
        assert_eq!(p2.coeff(&p(&[1, 1])), pr("2*k/(k+1)"));
        let p3 = e.jack(&p(&[3]), 1).unwrap();
        assert_eq!(*p3, SymmetricPolynomial::monomial(&p(&[3]), 1).unwrap());
    }

    #[test]
    fn jack_basis_conversion() {
        let e = Engine::symbolic();
        let m2 = SymmetricPolynomial::monomial(&p(&[2]), 2).unwrap();
        let j = e.to_jack_basis(&m2).unwrap();
        assert_eq!(j.coeff(&p(&[2])), ParamRational::one());
        assert_eq!(j.coeff(&p(&[1, 1])), pr("-2*k/(k+1)"));
        assert_eq!(e.from_jack_basis(&j).unwrap(), m2);
    }

    #[test]
    fn jack_is_eigenfunction() {
        let e = Engine::symbolic();
        for lam in [p(&[2, 1]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])] {
            let pl = e.jack(&lam, 3).unwrap();
            let eps = e.jack_eigenvalue(&lam, 3).unwrap();
            assert_eq!(pl.apply_d().unwrap(), pl.scale(&eps), "{lam}");
        }
    }

    #[test]
    fn integral_form_examples() {
        let e = Engine::symbolic();
        let (j1, h1) = e.jack_integral_form(&p(&[1]), 3).unwrap();
        assert_eq!(h1, ParamRational::k());
        assert_eq!(j1, SymmetricPolynomial::monomial(&p(&[1]), 3).unwrap());
        assert_eq!(
            jack_integral_at_ones(&p(&[1]), 3),
            ParamRational::from_int(3)
        );
        let (_, h2) = e.jack_integral_form(&p(&[2]), 1).unwrap();
        assert_eq!(h2, pr("k^2+k"));
        let (j0, h0) = e.jack_integral_form(&p(&[]), 2).unwrap();
        assert_eq!(h0, ParamRational::one());
        assert_eq!(j0, SymmetricPolynomial::one(2));
    }

    #[test]
    fn torus_pairing_small() {
        let one = SymmetricPolynomial::one(1);
        assert_eq!(torus_pairing_integer_kappa(&one, &one, 1).unwrap(), rat(1));
        let e = Engine::symbolic();
        let p1 = e.jack(&p(&[1]), 2).unwrap();
        let v = torus_pairing_integer_kappa(&p1, &p1, 1).unwrap();
        let closed = jack_norm_closed(&p(&[1]), 2)
            .unwrap()
            .eval_exact(&rat(0), &rat(1))
            .unwrap();
        assert_eq!(v, closed);
        let p2 = e.jack(&p(&[2]), 2).unwrap();
        let p11 = e.jack(&p(&[1, 1]), 2).unwrap();
        assert_eq!(torus_pairing_integer_kappa(&p2, &p11, 1).unwrap(), rat(0));
        assert!(torus_pairing_integer_kappa(&p2, &p11, 0).is_err());
        let with_a = SymmetricPolynomial::constant(ParamRational::a(), 2);
        assert!(torus_pairing_integer_kappa(&with_a, &p11, 1).is_err());
    }

    #[test]
    fn norm_closed_at_n1_is_one() {
        let g = jack_norm_closed(&p(&[3]), 1).unwrap();
        assert_eq!(g, GammaProduct::one());
    }

    #[test]
    fn complement_examples() {
        let e = Engine::symbolic();
        assert!(e.reciprocal_complement_check(&p(&[]), 1, 2).unwrap());
        assert!(e.reciprocal_complement_check(&p(&[1]), 1, 2).unwrap());
        assert!(e.reciprocal_complement_check(&p(&[2]), 2, 2).unwrap());
        assert!(e.reciprocal_complement_check(&p(&[2, 1]), 3, 3).unwrap());
    }

    #[test]
    fn inverse_kappa() {
        assert_eq!(
            inverse_kappa_coefficients(&pr("(2*k+1)/k")),
            Some(vec![rat(2), rat(1)])
        );
        assert!(is_nonneg_integral_in_inverse_kappa(&pr("1+3/k^2")));
        assert!(!is_nonneg_integral_in_inverse_kappa(&pr("1/(k+1)")));
        assert!(!is_nonneg_integral_in_inverse_kappa(&pr("1/(2*k)")));
        assert_eq!(
            inverse_kappa_coefficients(&ParamRational::from_rational(ratio(1, 2))),
            Some(vec![ratio(1, 2)])
        );
    }
}
