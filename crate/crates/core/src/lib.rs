//! Exact construction of Jack and multivariable Bessel polynomials, with
//! symbolic verification of their orthogonality on the torus and numeric
//! cross-checks of the underlying integral formulas.

pub mod bessel;
pub mod engine;
pub mod error;
pub mod exact;
pub mod jack;
pub mod numeric;
pub mod ortho;
pub mod partition;
pub mod report;
pub mod sympoly;

pub use bessel::{
    bessel_at_zero, interpolation_diagonal, pole_certificate, BesselPolynomial, PoleCertificate,
};
pub use engine::{Engine, Params};
pub use error::{Error, Result};
pub use exact::{
    pochhammer, rat, ratio, GammaFactors, GammaProduct, LinearForm, ParamPolynomial, ParamRational,
    Rational,
};
pub use jack::{jack_norm_closed, torus_pairing_integer_kappa, JackExpansion};
pub use numeric::validate::{
    contour_orthogonality_numeric, integral_equality_numeric, kadell_numeric,
    l2_orthogonality_numeric, laguerre_numeric, Mode, QuadratureConfig,
};
pub use numeric::weight::{eval_weight_series, WeightSeriesEvaluator};
pub use ortho::{
    f2_closed, integral_equality_check, kadell_closed, laguerre_closed, moment_consistency,
    normfactor_rhs, torus_moment, weight_coefficient, MomentTable,
};
pub use partition::{enumerate_partitions, partitions_of, Partition};
pub use report::{NumericDetail, Status, VerificationReport};
pub use sympoly::{ExponentPolynomial, SymmetricPolynomial};
