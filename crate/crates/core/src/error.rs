use crate::partition::Partition;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    /// A substitution hit a zero of a denominator or a pole of Γ.
    #[error("parameter degeneracy: {factor} vanishes at the requested point")]
    ParameterDegeneracy { factor: String },

    #[error("dominance order compares partitions of equal weight only ({mu} vs {lambda})")]
    UnequalWeights { mu: Partition, lambda: Partition },

    #[error("partition {nu} does not fit in the {rows}x{cols} box")]
    OutsideBox {
        nu: Partition,
        rows: usize,
        cols: u32,
    },

    #[error("partition {lambda} has more than {n} parts")]
    TooManyParts { lambda: Partition, n: usize },

    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<u32>),

    /// Exact division by `x_i - x_j` failed; the input was not symmetric.
    #[error("symmetry violation: pairwise difference quotient not exact for (x{i} - x{j})")]
    NonDivisible { i: usize, j: usize },

    #[error("non-generic degeneracy: eigenvalues of {lambda} and {mu} coincide identically")]
    Degeneracy { lambda: Partition, mu: Partition },

    #[error(
        "structural error: image of P{mu} has a component along P{nu} outside the containment span"
    )]
    Structural { mu: Partition, nu: Partition },

    #[error("coefficient still depends on {0} after specialisation")]
    SymbolicRemains(&'static str),

    #[error("pole of the Gamma function at {0}")]
    GammaPole(String),

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {case}: {lhs} != {rhs}")]
    VerificationFailed {
        case: String,
        lhs: String,
        rhs: String,
    },
}
