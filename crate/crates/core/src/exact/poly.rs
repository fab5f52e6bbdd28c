use super::dense::{Dense, GcdRing};
use super::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

type Univ = Dense<BigInt>;
/// ℤ[κ][a]: outer index is the degree in `a`, inner the degree in `κ`.
pub(crate) type Biv = Dense<Univ>;

/// Polynomial in `a` and `κ` with rational coefficients.
///
/// Stored as `content · prim` where `prim` has coprime integer coefficients
/// and a positive leading coefficient in graded-lex order (`a > κ`). This
/// makes the representation canonical and keeps arithmetic over ℤ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamPolynomial {
    content: Rational,
    prim: Biv,
}

fn biv_get(p: &Biv, i: usize, j: usize) -> Option<&BigInt> {
    p.c.get(i).and_then(|u| u.c.get(j))
}

/// Graded-lex leading coefficient of a nonzero bivariate polynomial.
fn grlex_lead(p: &Biv) -> &BigInt {
    let mut best: Option<(usize, usize)> = None;
    for (i, u) in p.c.iter().enumerate() {
        if let Some(j) = u.c.len().checked_sub(1) {
            // highest κ-degree term at this a-degree
            let key = (i + j, i);
            if best.is_none_or(|b| key > (b.0 + b.1, b.0)) {
                best = Some((i, j));
            }
        }
    }
    let (i, j) = best.expect("grlex lead of zero");
    biv_get(p, i, j).unwrap()
}

fn biv_int_content(p: &Biv) -> BigInt {
    let mut g = <BigInt as Zero>::zero();
    for u in &p.c {
        for x in &u.c {
            g = g.gcd(x);
            if num_traits::One::is_one(&g) {
                return g;
            }
        }
    }
    g
}

fn biv_scale_int(p: &Biv, s: &BigInt) -> Biv {
    Dense {
        c: p.c
            .iter()
            .map(|u| Dense {
                c: u.c.iter().map(|x| x * s).collect(),
            })
            .collect(),
    }
}

fn biv_div_int(p: &Biv, s: &BigInt) -> Biv {
    Dense {
        c: p.c
            .iter()
            .map(|u| Dense {
                c: u.c.iter().map(|x| x / s).collect(),
            })
            .collect(),
    }
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        ParamPolynomial {
            content: Rational::zero(),
            prim: Biv::nil(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            content: c,
            prim: Biv::unit(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// The parameter `a`.
    pub fn a() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    /// The parameter `κ`.
    pub fn k() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, deg_a: usize, deg_k: usize) -> Self {
        Self::from_terms([((deg_a, deg_k), c)])
    }

    /// Build from `((deg_a, deg_k), coefficient)` pairs; repeated keys add.
    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lcm = terms
            .iter()
            .fold(<BigInt as One>::one(), |l, (_, c)| l.lcm(c.denom()));
        let max_a = terms.iter().map(|((i, _), _)| *i).max().unwrap();
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); max_a + 1];
        for ((i, j), c) in &terms {
            let row = &mut rows[*i];
            if row.len() <= *j {
                row.resize(j + 1, <BigInt as Zero>::zero());
            }
            row[*j] += c.numer() * (&lcm / c.denom());
        }
        let prim = Dense::from_vec(rows.into_iter().map(Dense::from_vec).collect());
        Self::from_parts(Rational::new(<BigInt as One>::one(), lcm), prim)
    }

    /// Normalise `content · p` for an arbitrary integer polynomial `p`.
    pub(crate) fn from_parts(content: Rational, p: Biv) -> Self {
        if p.is_nil() || content.is_zero() {
            return Self::zero();
        }
        let mut g = biv_int_content(&p);
        if Signed::is_negative(grlex_lead(&p)) {
            g = -g;
        }
        let prim = if num_traits::One::is_one(&g) {
            p
        } else {
            biv_div_int(&p, &g)
        };
        ParamPolynomial {
            content: content * Rational::from_integer(g),
            prim,
        }
    }

    pub(crate) fn content(&self) -> &Rational {
        &self.content
    }

    /// The primitive part as a polynomial with content one.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            content: Rational::one(),
            prim: self.prim.clone(),
        }
    }

    pub(crate) fn from_prim(prim: Biv) -> Self {
        ParamPolynomial {
            content: Rational::one(),
            prim,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.content.is_zero()
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.prim.c.len() == 1 && self.prim.c[0].c.len() == 1)
            .then(|| self.content.clone() * Rational::from_integer(self.prim.c[0].c[0].clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn degree_a(&self) -> usize {
        self.prim.c.len().saturating_sub(1)
    }

    pub fn degree_k(&self) -> usize {
        self.prim
            .c
            .iter()
            .map(|u| u.c.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms()
            .iter()
            .map(|((i, j), _)| i + j)
            .max()
            .unwrap_or(0)
    }

    /// Terms in graded-lex descending order.
    pub fn terms(&self) -> Vec<((usize, usize), Rational)> {
        let mut out = Vec::new();
        for (i, u) in self.prim.c.iter().enumerate() {
            for (j, x) in u.c.iter().enumerate() {
                if !Zero::is_zero(x) {
                    out.push((
                        (i, j),
                        self.content.clone() * Rational::from_integer(x.clone()),
                    ));
                }
            }
        }
        out.sort_by(|((i1, j1), _), ((i2, j2), _)| (i2 + j2, i2).cmp(&(i1 + j1, i1)));
        out
    }

    pub fn coefficient(&self, deg_a: usize, deg_k: usize) -> Rational {
        biv_get(&self.prim, deg_a, deg_k)
            .map(|x| self.content.clone() * Rational::from_integer(x.clone()))
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            content: &self.content * r,
            prim: self.prim.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.prim == o.prim {
            return Self::from_parts(&self.content + &o.content, self.prim.clone());
        }
        // common denominator of the contents, then integer combination
        let l = self.content.denom().lcm(o.content.denom());
        let s1 = self.content.numer() * (&l / self.content.denom());
        let s2 = o.content.numer() * (&l / o.content.denom());
        let sum = biv_scale_int(&self.prim, &s1).plus(&biv_scale_int(&o.prim, &s2));
        Self::from_parts(Rational::new(<BigInt as One>::one(), l), sum)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial {
            content: -&self.content,
            prim: self.prim.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        // Gauss: primitive times primitive is primitive, and the grlex lead
        // of a product is the product of the leads.
        let prim = if self.prim.is_unit() {
            o.prim.clone()
        } else if o.prim.is_unit() {
            self.prim.clone()
        } else {
            self.prim.times(&o.prim)
        };
        ParamPolynomial {
            content: &self.content * &o.content,
            prim,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `self / d` when `d` divides `self` in ℚ[a, κ].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = if d.prim.is_unit() {
            self.prim.clone()
        } else {
            self.prim.div_exact(&d.prim)?
        };
        Some(ParamPolynomial {
            content: &self.content / &d.content,
            prim: q,
        })
    }

    /// Greatest common divisor, primitive with positive grlex lead; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        Self::from_prim(gcd_prim(&self.prim, &o.prim))
    }

    /// Exact evaluation at rational parameter values.
    pub fn eval(&self, a: &Rational, k: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for u in self.prim.c.iter().rev() {
            let mut inner = Rational::zero();
            for x in u.c.iter().rev() {
                inner = inner * k + Rational::from_integer(x.clone());
            }
            acc = acc * a + inner;
        }
        acc * &self.content
    }

    /// Substitute a rational value for one or both parameters.
    pub fn specialize(&self, a: Option<&Rational>, k: Option<&Rational>) -> Self {
        if a.is_none() && k.is_none() {
            return self.clone();
        }
        let mut terms: Vec<((usize, usize), Rational)> = Vec::new();
        for ((i, j), c) in self.terms() {
            let mut c = c;
            let mut key = (i, j);
            if let Some(av) = a {
                c *= pow_rat(av, i);
                key.0 = 0;
            }
            if let Some(kv) = k {
                c *= pow_rat(kv, j);
                key.1 = 0;
            }
            terms.push((key, c));
        }
        Self::from_terms(terms)
    }

    pub fn eval_complex(&self, a: Complex64, k: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for u in self.prim.c.iter().rev() {
            let mut inner = Complex64::new(0.0, 0.0);
            for x in u.c.iter().rev() {
                inner = inner * k + x.to_f64().unwrap_or(f64::NAN);
            }
            acc = acc * a + inner;
        }
        acc * self.content.to_f64().unwrap_or(f64::NAN)
    }

    /// Sum of absolute values of the terms at `(|a|, |k|)`; scale for
    /// deciding whether a floating-point evaluation is a genuine zero.
    pub(crate) fn abs_eval(&self, a: f64, k: f64) -> f64 {
        self.terms()
            .iter()
            .map(|((i, j), c)| {
                c.to_f64().unwrap_or(f64::NAN).abs() * a.powi(*i as i32) * k.powi(*j as i32)
            })
            .sum()
    }

    /// Canonical string with integer coefficients after scaling by `mult`.
    pub(crate) fn fmt_scaled(&self, mult: &Rational) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, ((i, j), c)) in terms.iter().enumerate() {
            let c = c * mult;
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (*i == 0 && *j == 0) {
                factors.push(abs.to_string());
            }
            for (var, e) in [("a", *i), ("k", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    pub(crate) fn term_count(&self) -> usize {
        self.prim
            .c
            .iter()
            .map(|u| u.c.iter().filter(|x| !Zero::is_zero(*x)).count())
            .sum()
    }
}

pub(crate) fn pow_rat(x: &Rational, e: usize) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

/// gcd of two primitive integer polynomials, positive grlex lead.
pub(crate) fn gcd_prim(p: &Biv, q: &Biv) -> Biv {
    if p.is_unit() || q.is_unit() {
        return Biv::unit();
    }
    if p == q {
        return p.clone();
    }
    let g = p.gcd_with(q);
    if Signed::is_negative(grlex_lead(&g)) {
        g.negate()
    } else {
        g
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_scaled(&Rational::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = ParamPolynomial::a();
        let k = ParamPolynomial::k();
        let p1 = a.mul(&k).scale(&r(2)).add(&ParamPolynomial::from_int(6));
        let p2 = ParamPolynomial::from_terms([((1, 1), r(2)), ((0, 0), r(6))]);
        assert_eq!(p1, p2);
        assert_eq!(p1.to_string(), "2*a*k+6");
    }

    #[test]
    fn gcd_of_pochhammer_products() {
        let a = ParamPolynomial::a();
        let am1 = a.sub(&ParamPolynomial::one());
        let ap1 = a.add(&ParamPolynomial::one());
        let p = am1.mul(&a);
        let q = am1.mul(&a).mul(&a).mul(&ap1);
        assert_eq!(p.gcd(&q), p);
        assert_eq!(q.exact_div(&p).unwrap(), a.mul(&ap1));
    }

    #[test]
    fn grlex_sign_normalisation() {
        // -a + k^2: grlex lead is k^2, positive
        let p = ParamPolynomial::k().pow(2).sub(&ParamPolynomial::a());
        assert_eq!(p.to_string(), "k^2-a");
        let q = p.neg();
        assert_eq!(q.to_string(), "-k^2+a");
        assert_eq!(p.gcd(&q), p);
    }

    #[test]
    fn specialize_and_eval_agree() {
        let p = ParamPolynomial::from_terms([((2, 1), r(3)), ((0, 2), r(-1)), ((0, 0), r(5))]);
        let av = Rational::new(3.into(), 2.into());
        let kv = r(-2);
        let s = p.specialize(Some(&av), None).specialize(None, Some(&kv));
        assert_eq!(s.as_constant().unwrap(), p.eval(&av, &kv));
    }
}
