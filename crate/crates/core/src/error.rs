use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the computational modules.
///
/// [`Error::is_validation`] separates malformed input (shape, parse, schema)
/// from contract violations on well-formed input (for example a degenerate
/// form where a nondegenerate one is required).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("component {0} is not skew-symmetric")]
    NotSkew(usize),

    #[error("form is degenerate: {0}")]
    Degenerate(String),

    #[error("coefficient map is not surjective (rank {rank} < {target})")]
    NotSurjective { rank: usize, target: usize },

    #[error("structure constants violate {0}")]
    StructureConstants(String),

    #[error("Lie algebra has a nonzero center of dimension {0}")]
    NonzeroCenter(usize),

    #[error("matrix violates the group relations (defect {0:.3e})")]
    GroupRelation(f64),

    #[error("vacuous instance: {0}")]
    Vacuous(String),

    #[error("non-finite value produced by a callback at {0:?}")]
    NonFinite(Vec<f64>),

    #[error("function is not Hamiltonian here (residual {residual:.3e} > {threshold:.3e})")]
    NotHamiltonian { residual: f64, threshold: f64 },

    #[error("the action does not preserve the potential (defect {0:.3e})")]
    PotentialNotPreserved(f64),

    #[error("fiber second variation is rank deficient (rank {rank} < {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("no cochains above the top degree {0}")]
    TopDegree(usize),

    #[error("degree {0} exceeds the complex dimension {1}")]
    DegreeOverflow(usize, usize),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by ill-shaped or unparsable input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::Malformed(_)
                | Error::NotSkew(_)
                | Error::StructureConstants(_)
                | Error::InvalidComplex(_)
                | Error::DegreeOverflow(..)
                | Error::TopDegree(_)
        )
    }
}

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
