//! Suite configuration and the verification sections shared by `verify` and
//! `suite`.

use mvbessel_core::bessel::bessel_at_zero_amended;
use mvbessel_core::exact::parse_rational;
use mvbessel_core::jack::is_nonneg_integral_in_inverse_kappa;
use mvbessel_core::numeric::validate::laguerre_limit_gaps;
use mvbessel_core::{
    contour_orthogonality_numeric, enumerate_partitions, integral_equality_check,
    integral_equality_numeric, jack_norm_closed, kadell_numeric, l2_orthogonality_numeric,
    laguerre_numeric, moment_consistency, partitions_of, pole_certificate, rat, ratio,
    torus_pairing_integer_kappa, Engine, Error, Mode, MomentTable, Params, Partition,
    QuadratureConfig, Rational, Result, Status, SymmetricPolynomial, VerificationReport,
};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;

/// A parameter that is either kept symbolic or fixed to an exact rational.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum ParamMode {
    #[default]
    Symbolic,
    Value(Rational),
}

impl ParamMode {
    pub fn value(&self) -> Option<Rational> {
        match self {
            ParamMode::Symbolic => None,
            ParamMode::Value(v) => Some(v.clone()),
        }
    }
}

impl std::str::FromStr for ParamMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "symbolic" {
            Ok(ParamMode::Symbolic)
        } else {
            parse_rational(s).map(ParamMode::Value)
        }
    }
}

impl fmt::Display for ParamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamMode::Symbolic => write!(f, "symbolic"),
            ParamMode::Value(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ParamMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ParamMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Tolerances of the numeric cross-checks; the defaults are the acceptance
/// thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub krall_frink_off_diagonal: f64,
    pub krall_frink_diagonal: f64,
    pub kadell_n1: f64,
    pub kadell_n2: f64,
    pub laguerre_n1: f64,
    pub laguerre_n2: f64,
    pub laguerre_limit_gap: f64,
    pub l2: f64,
    pub spot_check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            krall_frink_off_diagonal: 1e-10,
            krall_frink_diagonal: 1e-8,
            kadell_n1: 1e-10,
            kadell_n2: 1e-6,
            laguerre_n1: 1e-8,
            laguerre_n2: 1e-6,
            laguerre_limit_gap: 1e-3,
            l2: 1e-6,
            spot_check: 1e-8,
        }
    }
}

/// Suite configuration, read from TOML. Every field has a default:
/// `n_range = [1, 2]`, `max_weight = 4`, symbolic `kappa` and `a`,
/// `numeric = false`, `seed = 42`. `seed` overrides `quadrature.seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub n_range: [usize; 2],
    pub max_weight: u32,
    pub kappa: ParamMode,
    pub a: ParamMode,
    pub numeric: bool,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
    pub quadrature: QuadratureConfig,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_range: [1, 2],
            max_weight: 4,
            kappa: ParamMode::Symbolic,
            a: ParamMode::Symbolic,
            numeric: false,
            seed: 42,
            output: None,
            quadrature: QuadratureConfig::default(),
            tolerances: Tolerances::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.n_range;
        if lo == 0 || lo > hi {
            return Err(Error::Precondition(format!(
                "n_range must satisfy 1 <= lo <= hi, got [{lo}, {hi}]"
            )));
        }
        if let ParamMode::Value(k) = &self.kappa {
            if k <= &Rational::zero() {
                return Err(Error::Precondition(format!(
                    "kappa must be positive, got {k}"
                )));
            }
        }
        self.quadrature.validate()
    }

    pub fn params(&self) -> Params {
        Params::new(self.a.value(), self.kappa.value())
    }

    fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            seed: self.seed,
            ..self.quadrature.clone()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Summary {
            total: reports.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inconclusive: count(Status::Inconclusive),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.pass == self.total
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

/// Runs `f` and turns an error into a failing (or inconclusive) report.
fn guarded(
    case: String,
    identity: &str,
    f: impl FnOnce() -> Result<VerificationReport>,
) -> VerificationReport {
    f().unwrap_or_else(|e| VerificationReport::error(case, identity, &e))
}

fn with_engine<T>(params: &Params, f: impl FnOnce(&Engine) -> T) -> T {
    if params.is_symbolic() {
        f(Engine::symbolic())
    } else {
        f(&Engine::new(params.clone()))
    }
}

/// Off-diagonal orthogonality and the diagonal ratio law.
pub fn orthogonality_and_norms(e: &Engine, n: usize, max_weight: u32) -> Vec<VerificationReport> {
    e.verify_theorem(n, max_weight).unwrap_or_else(|err| {
        vec![VerificationReport::error(
            format!("orthogonality/n={n}/w<={max_weight}"),
            "bessel-orthogonality",
            &err,
        )]
    })
}

pub fn zero_specialisation(e: &Engine, n: usize, max_weight: u32) -> Vec<VerificationReport> {
    enumerate_partitions(max_weight, n)
        .par_iter()
        .map(|l| {
            let case = format!("zero-value/n={n}/{l}");
            guarded(case.clone(), "zero-specialisation", || {
                let (pass, lhs, rhs) = e.constant_term_consistency(l, n)?;
                let r = VerificationReport::exact(case, "zero-specialisation", pass, &lhs, rhs);
                if pass {
                    return Ok(r);
                }
                let amended = e.params().apply(&bessel_at_zero_amended(l, n)?)?;
                Ok(r.with_note(if lhs == amended {
                    "matches the closed product with a-1+ added to each pair factor"
                } else {
                    "differs from the closed product in either form"
                }))
            })
        })
        .collect()
}

pub fn rationality(e: &Engine, n: usize, max_weight: u32) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = enumerate_partitions(max_weight, n)
        .par_iter()
        .map(|l| {
            let case = format!("pole-certificate/n={n}/{l}");
            guarded(case.clone(), "rationality-certificate", || {
                let cert = pole_certificate(&*e.bessel(l, n)?);
                let factors: Vec<String> =
                    cert.allowed_factors.iter().map(|f| f.to_string()).collect();
                Ok(VerificationReport::exact(
                    case,
                    "rationality-certificate",
                    cert.pass,
                    cert.leftover,
                    1,
                )
                .with_note(format!("allowed factors: {}", factors.join(" "))))
            })
        })
        .collect();
    if e.params().is_symbolic() {
        let case = format!("moment-ratios/n={n}/w<={max_weight}");
        out.push(guarded(case.clone(), "moment-ratio-rationality", || {
            MomentTable::build(n, max_weight)?.check_factorisation()?;
            Ok(VerificationReport::exact(
                case,
                "moment-ratio-rationality",
                true,
                "rational",
                "rational",
            ))
        }));
    }
    out
}

pub fn moments(n: usize, max_weight: u32) -> Vec<VerificationReport> {
    enumerate_partitions(max_weight, n)
        .par_iter()
        .map(|nu| {
            guarded(format!("moment/n={n}/{nu}"), "moment-formula", || {
                moment_consistency(nu, n)
            })
        })
        .collect()
}

pub fn integral_equality(n: usize, max_weight: u32) -> Vec<VerificationReport> {
    enumerate_partitions(max_weight, n)
        .par_iter()
        .map(|nu| {
            guarded(
                format!("integral-equality/n={n}/{nu}"),
                "integral-equality",
                || integral_equality_check(nu, n),
            )
        })
        .collect()
}

/// The integer values of κ at which the torus pairing is a finite constant
/// term: the configured κ if it is a positive integer, `{1, 2, 3}` if κ is
/// symbolic, none otherwise.
pub fn integer_kappas(kappa: &ParamMode) -> Vec<u32> {
    match kappa {
        ParamMode::Symbolic => vec![1, 2, 3],
        ParamMode::Value(k) if k.is_integer() && k >= &Rational::one() => {
            k.to_integer().to_u32().into_iter().collect()
        }
        ParamMode::Value(_) => Vec::new(),
    }
}

/// Constant-term orthogonality of Jacks and their closed norms.
pub fn jack_norms(kappas: &[u32], n: usize, max_weight: u32) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for &kappa in kappas {
        let k = rat(kappa as i64);
        let e = Engine::new(Params::new(None, Some(k.clone())));
        for w in 0..=max_weight {
            let ps = partitions_of(w, n);
            let pairs: Vec<(&Partition, &Partition)> = ps
                .iter()
                .enumerate()
                .flat_map(|(i, l)| ps[i..].iter().map(move |m| (l, m)))
                .collect();
            out.par_extend(pairs.par_iter().map(|&(l, m)| {
                let diag = l == m;
                let identity = if diag {
                    "jack-norm"
                } else {
                    "jack-orthogonality"
                };
                let case = format!("jack-pairing/n={n}/k={kappa}/{l}x{m}");
                guarded(case.clone(), identity, || {
                    let v = torus_pairing_integer_kappa(&*e.jack(l, n)?, &*e.jack(m, n)?, kappa)?;
                    let expect = if diag {
                        jack_norm_closed(l, n)?.eval_exact(&rat(0), &k)?
                    } else {
                        rat(0)
                    };
                    Ok(VerificationReport::exact(
                        case,
                        identity,
                        v == expect,
                        v,
                        expect,
                    ))
                })
            }));
        }
    }
    out
}

/// Closed norms of the Jacks at each integer κ, as table rows.
pub fn jack_norm_rows(kappas: &[u32], n: usize, max_weight: u32) -> Result<Vec<[String; 3]>> {
    let mut rows = Vec::new();
    for &kappa in kappas {
        for l in enumerate_partitions(max_weight, n) {
            let v = jack_norm_closed(&l, n)?.eval_exact(&rat(0), &rat(kappa as i64))?;
            rows.push([kappa.to_string(), l.to_string(), v.to_string()]);
        }
    }
    Ok(rows)
}

pub fn integrality(e: &Engine, n: usize, max_weight: u32) -> Vec<VerificationReport> {
    enumerate_partitions(max_weight, n)
        .par_iter()
        .map(|l| {
            let case = format!("integral-form/n={n}/{l}");
            guarded(case.clone(), "integral-form-integrality", || {
                let (j, _) = e.jack_integral_form(l, n)?;
                let bad = j
                    .coeffs()
                    .iter()
                    .find(|(_, c)| !is_nonneg_integral_in_inverse_kappa(c));
                Ok(match bad {
                    None => VerificationReport::exact(
                        case,
                        "integral-form-integrality",
                        true,
                        "integral",
                        "integral",
                    ),
                    Some((mu, c)) => VerificationReport::exact(
                        case,
                        "integral-form-integrality",
                        false,
                        format!("coefficient of m{mu} is {c}"),
                        "nonnegative integer polynomial in 1/k",
                    ),
                })
            })
        })
        .collect()
}

pub fn structural(e: &Engine, n: usize, max_weight: u32) -> Vec<VerificationReport> {
    let parts = enumerate_partitions(max_weight, n);
    let mut out: Vec<VerificationReport> = parts
        .par_iter()
        .map(|l| {
            let case = format!("d-triangularity/n={n}/{l}");
            guarded(case.clone(), "d-triangularity", || {
                let img = SymmetricPolynomial::monomial(l, n)?.apply_d()?;
                let mut pass = true;
                for mu in img.coeffs().keys() {
                    pass &= mu.dominance_leq(l)?;
                }
                Ok(VerificationReport::exact(
                    case,
                    "d-triangularity",
                    pass,
                    "lower",
                    "lower",
                ))
            })
        })
        .collect();
    out.par_extend(parts.par_iter().map(|mu| {
        let case = format!("db-containment/n={n}/{mu}");
        guarded(case.clone(), "db-containment", || {
            let img = e.db_on_jack(mu, n)?;
            let pass = img.coeffs().keys().all(|nu| mu.contains(nu));
            Ok(VerificationReport::exact(
                case,
                "db-containment",
                pass,
                "contained",
                "contained",
            ))
        })
    }));
    out.par_extend(parts.par_iter().map(|nu| {
        let case = format!("shift/n={n}/{nu}");
        guarded(case.clone(), "shift-identity", || {
            let pass = e.shift_identity_check(nu, n)?;
            Ok(VerificationReport::exact(
                case,
                "shift-identity",
                pass,
                "equal",
                "equal",
            ))
        })
    }));
    out.par_extend(parts.par_iter().map(|nu| {
        let big_n = nu.part(1) + 1;
        let case = format!("complement/n={n}/N={big_n}/{nu}");
        guarded(case.clone(), "complement-reciprocal", || {
            let pass = e.reciprocal_complement_check(nu, big_n, n)?;
            Ok(VerificationReport::exact(
                case,
                "complement-reciprocal",
                pass,
                "equal",
                "equal",
            ))
        })
    }));
    out
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).expect("literal partition")
}

/// The numeric cross-checks of the acceptance battery for one `n`.
pub fn numeric_checks(
    n: usize,
    max_weight: u32,
    q: &QuadratureConfig,
    t: &Tolerances,
) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let run = |case: &str, identity: &str, f: &dyn Fn() -> Result<VerificationReport>| {
        guarded(case.into(), identity, f)
    };
    if n == 1 {
        let top = max_weight.min(5);
        for m in 0..=top {
            for m2 in m..=top {
                let tol = if m == m2 {
                    t.krall_frink_diagonal
                } else {
                    t.krall_frink_off_diagonal
                };
                let (l, l2) = (part(&[m]), part(&[m2]));
                out.push(run(
                    &format!("contour/n=1/a=3/{l}x{l2}"),
                    "bessel-orthogonality",
                    &|| {
                        contour_orthogonality_numeric(
                            &l,
                            &l2,
                            1,
                            &rat(3),
                            &rat(1),
                            &q.with_tolerance(tol),
                        )
                    },
                ));
            }
        }
        out.push(run("kadell/n=1", "kadell", &|| {
            kadell_numeric(
                &part(&[2]),
                1,
                &ratio(3, 2),
                &ratio(5, 2),
                &rat(1),
                &q.with_tolerance(t.kadell_n1),
                Mode::Quad,
            )
        }));
        for nu in [part(&[]), part(&[2])] {
            out.push(run(
                &format!("laguerre/n=1/{nu}"),
                "laguerre-limit",
                &|| {
                    let r = laguerre_numeric(
                        &nu,
                        1,
                        &rat(2),
                        &rat(1),
                        &q.with_tolerance(t.laguerre_n1),
                        Mode::Quad,
                    )?;
                    let gap = laguerre_limit_gaps(&nu, 1, &rat(2), &rat(1))?
                        .last()
                        .map_or(f64::INFINITY, |g| g.1);
                    Ok(if gap < t.laguerre_limit_gap {
                        r
                    } else {
                        let mut r = r;
                        r.status = Status::Fail;
                        r.with_note(format!("limit gap {gap:e} at the largest beta"))
                    })
                },
            ));
        }
    }
    if n == 2 {
        let nu = part(&[1]);
        out.push(run("kadell/n=2/quad", "kadell", &|| {
            kadell_numeric(
                &nu,
                2,
                &rat(2),
                &rat(3),
                &rat(1),
                &q.with_tolerance(t.kadell_n2),
                Mode::Quad,
            )
        }));
        out.push(run("kadell/n=2/mc", "kadell", &|| {
            kadell_numeric(&nu, 2, &rat(2), &rat(3), &rat(1), q, Mode::Mc)
        }));
        for nu in [part(&[]), part(&[2, 1])] {
            out.push(run(
                &format!("laguerre/n=2/{nu}"),
                "laguerre-limit",
                &|| {
                    laguerre_numeric(
                        &nu,
                        2,
                        &rat(2),
                        &rat(1),
                        &q.with_tolerance(t.laguerre_n2),
                        Mode::Quad,
                    )
                },
            ));
        }
        let ps = enumerate_partitions(max_weight.min(2), 2);
        for (i, l) in ps.iter().enumerate() {
            for m in &ps[i + 1..] {
                out.push(run(
                    &format!("l2/n=2/a=-10/{l}x{m}"),
                    "l2-orthogonality",
                    &|| {
                        l2_orthogonality_numeric(
                            l,
                            m,
                            2,
                            &rat(-10),
                            &rat(1),
                            &q.with_tolerance(t.l2),
                            Mode::Quad,
                        )
                    },
                ));
            }
        }
    }
    if n <= 2 {
        out.push(run(
            &format!("integral-equality-numeric/n={n}"),
            "integral-equality",
            &|| {
                integral_equality_numeric(
                    &part(&[1]),
                    n,
                    &ratio(-21, 2),
                    &rat(2),
                    &q.with_tolerance(t.spot_check),
                )
            },
        ));
    }
    out
}

/// Runs every section for each `n` in the configured range, in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let params = cfg.params();
    let kappas = integer_kappas(&cfg.kappa);
    let q = cfg.quadrature();
    let w = cfg.max_weight;
    let mut reports = Vec::new();
    for n in cfg.n_range[0]..=cfg.n_range[1] {
        with_engine(&params, |e| {
            reports.extend(orthogonality_and_norms(e, n, w));
            reports.extend(zero_specialisation(e, n, w));
            reports.extend(rationality(e, n, w));
            if params.a.is_none() {
                reports.extend(integrality(e, n, w));
                reports.extend(structural(e, n, w));
            }
        });
        if params.is_symbolic() {
            reports.extend(moments(n, w));
            reports.extend(integral_equality(n, w));
        }
        reports.extend(jack_norms(&kappas, n, w));
        if cfg.numeric {
            reports.extend(numeric_checks(n, w, &q, &cfg.tolerances));
        }
    }
    Ok(SuiteReport {
        config: cfg.clone(),
        summary: Summary::of(&reports),
        reports,
    })
}
