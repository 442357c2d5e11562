use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant belongs to exactly one [`ErrorClass`], which front ends use
/// to pick an exit status.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("triple root: g2 = g3 = 0 has no finite periods")]
    TripleRoot,
    #[error("degenerate lattice: period ratio is real")]
    DegenerateLattice,
    #[error("matrix is not unimodular (det = {0})")]
    NonUnimodular(i64),
    #[error("scale factor is zero")]
    ZeroScale,
    #[error("rescaled invariants are not real")]
    NonRealInvariants,
    #[error("pole at z = {re} + {im}i")]
    PoleAt { re: f64, im: f64 },
    #[error("degenerate arguments: p(z) and p(w) coincide")]
    DegenerateArguments,
    #[error("stationary point: p'(z) vanishes")]
    StationaryPoint,
    #[error("no bounded branch: the cubic has a single real root")]
    NoBoundedBranch,
    #[error("energy {energy} below the minimum {minimum}")]
    BelowMinimumEnergy { energy: f64, minimum: f64 },
    #[error("no real solution: {0}")]
    NoRealSolution(String),
    #[error("spectral parameter congruent to a lattice point")]
    SpectralParameterAtLatticePoint,
    #[error("operation requires distinct roots")]
    DegenerateRoots,
    #[error("operation requires three real roots")]
    OneRealClassification,
    #[error("singularity at x = {0}")]
    Singularity(f64),
    #[error("quadrature did not converge (estimated error {0:e})")]
    QuadratureFailed(f64),
}

/// Coarse classification used for exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The request lies outside the domain of the mathematics.
    Domain,
    /// The mathematics is defined but the computation failed.
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::QuadratureFailed(_) => ErrorClass::Numerical,
            Error::NonFinite(_)
            | Error::InvalidParameter(_)
            | Error::TripleRoot
            | Error::DegenerateLattice
            | Error::NonUnimodular(_)
            | Error::ZeroScale
            | Error::NonRealInvariants
            | Error::PoleAt { .. }
            | Error::DegenerateArguments
            | Error::StationaryPoint
            | Error::NoBoundedBranch
            | Error::BelowMinimumEnergy { .. }
            | Error::NoRealSolution(_)
            | Error::SpectralParameterAtLatticePoint
            | Error::DegenerateRoots
            | Error::OneRealClassification
            | Error::Singularity(_) => ErrorClass::Domain,
        }
    }

    pub(crate) fn pole<T: crate::Real>(z: crate::Cx<T>) -> Self {
        Error::PoleAt {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
