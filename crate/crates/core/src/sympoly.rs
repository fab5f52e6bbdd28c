//! Symmetric polynomials in the monomial basis and the operators D, D^B.

use crate::exact::{ParamRational, Rational, Scalar};
use crate::partition::Partition;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

/// Polynomial in `x_1..x_n` keyed by exponent vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct ExponentPolynomial<C = ParamRational> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> ExponentPolynomial<C> {
    pub fn new(n: usize) -> Self {
        ExponentPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: C) {
        debug_assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// `x_i² ∂_i f` (0-based `i`).
    pub fn x2_d(&self, i: usize) -> Self {
        let mut out = Self::new(self.n);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] += 1;
                out.add_term(e2, c.mul(&C::from_i64(e[i] as i64)));
            }
        }
        out
    }

    /// `∂_i f`.
    pub fn d(&self, i: usize) -> Self {
        let mut out = Self::new(self.n);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c.mul(&C::from_i64(e[i] as i64)));
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Exact quotient by `x_i - x_j`; fails if the remainder is nonzero.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        // View f as a polynomial in x_i over the other variables and run
        // synthetic division by (x_i - x_j): q_{d-1} = c_d,
        // q_{k-1} = c_k + x_j q_k, remainder c_0 + x_j q_0.
        let mut by_deg: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            by_deg
                .entry(e[i])
                .or_insert_with(|| Self::new(self.n))
                .add_term(rest, c.clone());
        }
        let Some(&top) = by_deg.keys().next_back() else {
            return Ok(Self::new(self.n));
        };
        let mut quotient = Self::new(self.n);
        let mut carry = Self::new(self.n); // q_k, free of x_i
        for k in (0..=top).rev() {
            let mut cur = by_deg.remove(&k).unwrap_or_else(|| Self::new(self.n));
            // cur = c_k + x_j q_k
            for (e, c) in &carry.terms {
                let mut e2 = e.clone();
                e2[j] += 1;
                cur.add_term(e2, c.clone());
            }
            if k == 0 {
                if !cur.is_zero() {
                    return Err(Error::NonDivisible { i: i + 1, j: j + 1 });
                }
                break;
            }
            // cur is q_{k-1}
            for (e, c) in &cur.terms {
                let mut e2 = e.clone();
                e2[i] = k - 1;
                quotient.add_term(e2, c.clone());
            }
            carry = cur;
        }
        Ok(quotient)
    }

    /// True when every permutation of the variables fixes the polynomial.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            let mut s = e.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            distinct_permutations(&s)
                .iter()
                .all(|p| self.terms.get(p) == Some(c))
        })
    }

    /// Collect a symmetric polynomial into the monomial basis.
    pub fn symmetrize(&self) -> Result<SymmetricPolynomial<C>> {
        if !self.is_symmetric() {
            return Err(Error::Precondition("polynomial is not symmetric".into()));
        }
        let mut out = SymmetricPolynomial::zero(self.n);
        for (e, c) in &self.terms {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                out.add_term(Partition::trimmed(e.clone()), c.clone());
            }
        }
        Ok(out)
    }
}

/// Distinct permutations of `v`, in lex-descending order.
pub(crate) fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous permutation in lex order
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] <= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] >= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Symmetric polynomial `Σ c_λ m_λ` in `n` variables.
#[derive(Clone, PartialEq, Debug)]
pub struct SymmetricPolynomial<C = ParamRational> {
    n: usize,
    coeffs: BTreeMap<Partition, C>,
}

impl<C: Scalar> SymmetricPolynomial<C> {
    pub fn zero(n: usize) -> Self {
        SymmetricPolynomial {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(C::one(), n)
    }

    pub fn constant(c: C, n: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Partition::empty(), c);
        p
    }

    /// `m_λ`.
    pub fn monomial(lambda: &Partition, n: usize) -> Result<Self> {
        lambda.check_length(n)?;
        let mut p = Self::zero(n);
        p.add_term(lambda.clone(), C::one());
        Ok(p)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, C)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (l, c) in terms {
            l.check_length(n)?;
            p.add_term(l, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, C> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.coeffs.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add_term(&mut self, lambda: Partition, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.coeffs {
            out.add_term(l.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        SymmetricPolynomial {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c.mul(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Largest weight present; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.coeffs.keys().map(Partition::weight);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    pub fn expand_to_exponents(&self) -> ExponentPolynomial<C> {
        let mut out = ExponentPolynomial::new(self.n);
        for (l, c) in &self.coeffs {
            for e in distinct_permutations(&l.padded(self.n)) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::Precondition(format!(
                "variable counts differ: {} vs {}",
                self.n, o.n
            )));
        }
        let mut acc: BTreeMap<Partition, C> = BTreeMap::new();
        for (l, c) in &self.coeffs {
            for (m, d) in &o.coeffs {
                let cd = c.mul(d);
                for (nu, k) in monomial_product(l, m, self.n).iter() {
                    let t = cd.mul(&C::from_i64(*k));
                    let e = acc.entry(nu.clone()).or_insert_with(C::zero);
                    *e = e.add(&t);
                }
            }
        }
        Ok(SymmetricPolynomial {
            n: self.n,
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Apply `D = Σ x_i²∂_i² + 2κ Σ_{i≠j} x_i²/(x_i-x_j) ∂_i`.
    pub fn apply_d_with(&self, kappa: &C) -> Result<Self> {
        let mut diag = Self::zero(self.n);
        let mut pair = Self::zero(self.n);
        for (l, c) in &self.coeffs {
            let img = d_image(l, self.n)?;
            diag.add_term(l.clone(), c.mul(&C::from_i64(img.diag)));
            for (mu, k) in &img.pair {
                pair.add_term(mu.clone(), c.mul(&big_to_scalar(k)));
            }
        }
        Ok(diag.add(&pair.scale(&kappa.mul(&C::from_i64(2)))))
    }

    /// Apply `D^B = D + Σ (a x_i + 2) ∂_i`.
    pub fn apply_db_with(&self, a: &C, kappa: &C) -> Result<Self> {
        let mut out = self.apply_d_with(kappa)?;
        let mut euler = Self::zero(self.n);
        let mut lower = Self::zero(self.n);
        for (l, c) in &self.coeffs {
            euler.add_term(l.clone(), c.mul(&C::from_i64(l.weight() as i64)));
            for (mu, k) in deriv_image(l, self.n).iter() {
                lower.add_term(mu.clone(), c.mul(&C::from_i64(2 * k)));
            }
        }
        out = out.add(&euler.scale(a)).add(&lower);
        Ok(out)
    }

    pub fn map_coeffs<D: Scalar>(
        &self,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<SymmetricPolynomial<D>> {
        let mut out = SymmetricPolynomial::zero(self.n);
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl SymmetricPolynomial<ParamRational> {
    /// `D` with symbolic κ.
    pub fn apply_d(&self) -> Result<Self> {
        self.apply_d_with(&ParamRational::k())
    }

    /// `D^B` with symbolic `a` and κ.
    pub fn apply_db(&self) -> Result<Self> {
        self.apply_db_with(&ParamRational::a(), &ParamRational::k())
    }

    pub fn specialize(&self, a: Option<&Rational>, k: Option<&Rational>) -> Result<Self> {
        self.map_coeffs(|c| c.specialize(a, k))
    }

    /// Coefficients as exact rationals; fails if any parameter remains.
    pub fn to_rational(&self) -> Result<SymmetricPolynomial<Rational>> {
        self.map_coeffs(|c| {
            c.as_constant()
                .ok_or(Error::SymbolicRemains(if c.depends_on_k() {
                    "k"
                } else {
                    "a"
                }))
        })
    }

    pub fn to_json(&self, basis: &str) -> PolyJson {
        PolyJson {
            n: self.n,
            basis: basis.to_string(),
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

fn big_to_scalar<C: Scalar>(k: &BigInt) -> C {
    C::from_i64(k.to_i64().expect("operator coefficient fits in i64"))
}

/// JSON form `{ "n", "basis", "terms": [{ "mu", "coeff" }] }`.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct PolyJson {
    pub n: usize,
    pub basis: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct TermJson {
    pub mu: Partition,
    pub coeff: String,
}

/// Integer data of `D(m_λ) = diag·m_λ + 2κ·Σ pair_μ m_μ`.
pub(crate) struct DImage {
    pub(crate) diag: i64,
    pub(crate) pair: Vec<(Partition, BigInt)>,
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(
    cell: &'static Cache<K, V>,
    key: K,
    make: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    let lock = cell.get_or_init(Default::default);
    if let Some(v) = lock.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    Ok(lock.write().unwrap().entry(key).or_insert(v).clone())
}

/// Pairwise Sutherland term `Σ_{i<j} (x_i²∂_i - x_j²∂_j)/(x_i - x_j)` applied
/// to an expanded polynomial, by exact division.
pub fn sutherland_pairs<C: Scalar>(f: &ExponentPolynomial<C>) -> Result<ExponentPolynomial<C>> {
    let n = f.n();
    let mut acc = ExponentPolynomial::new(n);
    let derivs: Vec<_> = (0..n).map(|i| f.x2_d(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let num = derivs[i].sub(&derivs[j]);
            acc = acc.add(&num.div_by_difference(i, j)?);
        }
    }
    Ok(acc)
}

pub(crate) fn d_image(lambda: &Partition, n: usize) -> Result<Arc<DImage>> {
    static CACHE: Cache<(Partition, usize), DImage> = OnceLock::new();
    cached(&CACHE, (lambda.clone(), n), || {
        let m = SymmetricPolynomial::<BigInt>::monomial(lambda, n)?;
        let pairs = sutherland_pairs(&m.expand_to_exponents())?.symmetrize()?;
        let diag = lambda
            .parts()
            .iter()
            .map(|&p| p as i64 * (p as i64 - 1))
            .sum();
        Ok(DImage {
            diag,
            pair: pairs.coeffs.into_iter().collect(),
        })
    })
}

/// `Σ_i ∂_i m_λ` in the monomial basis.
pub(crate) fn deriv_image(lambda: &Partition, n: usize) -> Arc<Vec<(Partition, i64)>> {
    static CACHE: Cache<(Partition, usize), Vec<(Partition, i64)>> = OnceLock::new();
    cached(&CACHE, (lambda.clone(), n), || {
        let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
        let padded = lambda.padded(n);
        // coefficient of m_μ = coefficient of x^μ in Σ∂_i m_λ; x^μ arises
        // from the exponent μ + e_i whenever that is a permutation of λ
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..n {
            if padded[i] == 0 || !seen.insert(padded[i]) {
                continue;
            }
            let mut v = padded.clone();
            v[i] -= 1;
            let mu = Partition::from_unsorted(v);
            let mp = mu.padded(n);
            let count: i64 = (0..n)
                .filter(|&k| {
                    let mut w = mp.clone();
                    w[k] += 1;
                    w.sort_unstable_by(|a, b| b.cmp(a));
                    w == padded
                })
                .map(|k| mp[k] as i64 + 1)
                .sum();
            out.insert(mu, count);
        }
        Ok(out.into_iter().collect())
    })
    .expect("derivative image is infallible")
}

/// Structure constants of `m_λ · m_μ = Σ c_ν m_ν`.
pub(crate) fn monomial_product(
    l: &Partition,
    m: &Partition,
    n: usize,
) -> Arc<Vec<(Partition, i64)>> {
    static CACHE: Cache<(Partition, Partition, usize), Vec<(Partition, i64)>> = OnceLock::new();
    let (l, m) = if l <= m { (l, m) } else { (m, l) };
    cached(&CACHE, (l.clone(), m.clone(), n), || {
        let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
        let pl = distinct_permutations(&l.padded(n));
        let base = m.padded(n);
        let pm = distinct_permutations(&base);
        // coefficient of m_ν is the number of pairs (α, β) with α+β = ν,
        // ν weakly decreasing
        for a in &pl {
            for b in &pm {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if s.windows(2).all(|w| w[0] >= w[1]) {
                    *out.entry(Partition::trimmed(s)).or_insert(0) += 1;
                }
            }
        }
        Ok(out.into_iter().collect())
    })
    .expect("structure constants are infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, partitions_of};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn m(v: &[u32], n: usize) -> SymmetricPolynomial {
        SymmetricPolynomial::monomial(&p(v), n).unwrap()
    }

    fn q(s: &str) -> ParamRational {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(m(&[1], 2).expand_to_exponents().terms().len(), 2);
        let e = m(&[1, 1], 2).expand_to_exponents();
        assert_eq!(e.terms().keys().collect::<Vec<_>>(), vec![&vec![1, 1]]);
        let e = m(&[2, 1], 3).expand_to_exponents();
        assert_eq!(e.terms().len(), 6);
        assert_eq!(e.symmetrize().unwrap(), m(&[2, 1], 3));
    }

    #[test]
    fn product_examples() {
        let s = m(&[1], 2).multiply(&m(&[1], 2)).unwrap();
        let expected = m(&[2], 2).add(&m(&[1, 1], 2).scale(&ParamRational::from_int(2)));
        assert_eq!(s, expected);
        let f = m(&[2, 1], 3);
        assert_eq!(f.multiply(&SymmetricPolynomial::one(3)).unwrap(), f);
        assert_eq!(m(&[1], 1).multiply(&m(&[1], 1)).unwrap(), m(&[2], 1));
    }

    #[test]
    fn d_examples() {
        assert_eq!(
            m(&[2], 1).apply_d().unwrap(),
            m(&[2], 1).scale(&ParamRational::from_int(2))
        );
        assert!(SymmetricPolynomial::one(3).apply_d().unwrap().is_zero());
        assert_eq!(m(&[1], 2).apply_d().unwrap(), m(&[1], 2).scale(&q("2*k")));
    }

    #[test]
    fn db_examples() {
        // n = 1: (a x + 2)·1 = a (x + 2/a)
        let f = m(&[1], 1).add(&SymmetricPolynomial::constant(q("2/a"), 1));
        assert_eq!(f.apply_db().unwrap(), f.scale(&ParamRational::a()));
        assert!(SymmetricPolynomial::one(2).apply_db().unwrap().is_zero());
        // the lower-order part is 2·Σ∂_i m_(1) = 2·2
        let expected = m(&[1], 2)
            .scale(&q("a+2*k"))
            .add(&SymmetricPolynomial::constant(
                ParamRational::from_int(4),
                2,
            ));
        assert_eq!(m(&[1], 2).apply_db().unwrap(), expected);
    }

    #[test]
    fn db_single_variable_second_derivative() {
        // x²·(x³)'' + (a x + 2)(x³)' = (6 + 3a) x³ + 6 x²
        let expected = m(&[3], 1)
            .scale(&q("3*a+6"))
            .add(&m(&[2], 1).scale(&ParamRational::from_int(6)));
        assert_eq!(m(&[3], 1).apply_db().unwrap(), expected);
    }

    #[test]
    fn non_symmetric_input_is_rejected_by_division() {
        let mut e = ExponentPolynomial::<BigInt>::new(2);
        e.add_term(vec![2, 0], BigInt::from(1));
        let num = e.x2_d(0).sub(&e.x2_d(1));
        assert!(num.div_by_difference(0, 1).is_err());
    }

    #[test]
    fn d_is_dominance_triangular() {
        for n in 1..=3 {
            for w in 0..=6 {
                for lam in partitions_of(w, n) {
                    let img = m(lam.parts(), n).apply_d().unwrap();
                    for mu in img.coeffs().keys() {
                        assert!(mu.dominance_leq(&lam).unwrap(), "{mu} in D(m{lam})");
                    }
                }
            }
        }
    }

    #[test]
    fn db_does_not_raise_degree() {
        for n in 1..=3 {
            for lam in enumerate_partitions(4, n) {
                let img = m(lam.parts(), n).apply_db().unwrap();
                assert!(img.degree() <= lam.weight());
            }
        }
    }

    #[test]
    fn permutations_are_distinct_and_complete() {
        let ps = distinct_permutations(&[2, 1, 1, 0]);
        assert_eq!(ps.len(), 12);
        let set: std::collections::BTreeSet<_> = ps.iter().collect();
        assert_eq!(set.len(), 12);
    }
}
