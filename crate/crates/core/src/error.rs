use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("U(m) requires m >= 1, got {0}")]
    NonPositiveTwist(BigInt),
    #[error("sublattice generators are linearly dependent")]
    DependentGenerators,
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("vector does not lie in the rational span of the sublattice")]
    NotInSpan,
    #[error("zero vector is not allowed here")]
    ZeroVector,
    #[error("{which} is not isotropic (self-pairing {value})")]
    NotIsotropic { which: &'static str, value: BigInt },
    #[error("pairing E.E' is {found}, expected {expected}")]
    WrongPairing { expected: BigInt, found: BigInt },
    #[error("{which} has divisibility {divisibility} in T, below m = {m}")]
    Divisibility {
        which: &'static str,
        divisibility: BigInt,
        m: BigInt,
    },
    #[error("{which} is not primitive in T")]
    NotPrimitive { which: &'static str },
    #[error(
        "admissibility formulations disagree: divisibility test {divisibility_ok}, splitting test {splitting_ok}"
    )]
    FormulationMismatch {
        divisibility_ok: bool,
        splitting_ok: bool,
    },
    #[error("P + M_check has index {index} in T, expected 1")]
    SplittingIndex { index: String },
    #[error("point is not in the tube domain (omega.omega = {0})")]
    NotInTube(String),
    #[error("period is not in the period domain: {0}")]
    NotInPeriodDomain(&'static str),
    #[error("zero vector is not a period")]
    ZeroPeriod,
    #[error("period pairs to zero with E; cannot normalize")]
    ZeroPairingWithE,
    #[error("Kahler parameter must be positive, got {0}")]
    NonPositiveOmega(String),
    #[error("normalization fails: {0}")]
    Normalization(&'static str),
    #[error("phase is not on the unit circle (c^2 + s^2 = {0})")]
    NotUnitPhase(String),
    #[error("matrix does not square to the identity")]
    NotInvolution,
    #[error("matrix does not preserve the bilinear form")]
    NotIsometry,
    #[error("mirror involution requires m = 1, got m = {0}")]
    RequiresUnimodularPlane(BigInt),
    #[error("precondition mismatch: {0}")]
    Precondition(&'static str),
    #[error("symplectic form is invalid: {0}")]
    InvalidSymplecticForm(&'static str),
    #[error("map is singular")]
    Singular,
    #[error("map is not anti-symplectic")]
    NotAntiSymplectic,
    #[error("{0} is a smooth fiber type; only singular types dualize")]
    SmoothFiberType(&'static str),
    #[error("invalid fixed-curve data: {0}")]
    InvalidBvData(&'static str),
    #[error("Hodge number {name} = {value} is not positive")]
    NonPositiveHodge { name: &'static str, value: i64 },
    #[error("N' = 0: no mirror family exists")]
    NoMirrorFamily,
    #[error(
        "fixed locus is empty or two elliptic curves: self-mirror, Hodge formulas do not apply"
    )]
    SelfMirrorCase,
    #[error("census violates: {}", .0.join("; "))]
    CensusViolations(Vec<String>),
    #[error("census Euler sum {found} differs from 12(N-N') = {expected}")]
    EulerMismatch { expected: i64, found: i64 },
    #[error("point is not on S^2 x S^1")]
    NotOnBase,
    #[error("rank {rank} out of range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSymmetric => "not_symmetric",
            Error::NotSquare { .. } => "not_square",
            Error::NonPositiveTwist(_) => "non_positive_twist",
            Error::DependentGenerators => "dependent_generators",
            Error::NotInLattice => "not_in_lattice",
            Error::NotInSpan => "not_in_span",
            Error::ZeroVector => "zero_vector",
            Error::NotIsotropic { .. } => "not_isotropic",
            Error::WrongPairing { .. } => "wrong_pairing",
            Error::Divisibility { .. } => "divisibility",
            Error::NotPrimitive { .. } => "not_primitive",
            Error::FormulationMismatch { .. } => "formulation_mismatch",
            Error::SplittingIndex { .. } => "splitting_index",
            Error::NotInTube(_) => "not_in_tube",
            Error::NotInPeriodDomain(_) => "not_in_period_domain",
            Error::ZeroPeriod => "zero_period",
            Error::ZeroPairingWithE => "zero_pairing_with_e",
            Error::NonPositiveOmega(_) => "non_positive_omega",
            Error::Normalization(_) => "normalization",
            Error::NotUnitPhase(_) => "not_unit_phase",
            Error::NotInvolution => "not_involution",
            Error::NotIsometry => "not_isometry",
            Error::RequiresUnimodularPlane(_) => "requires_m_1",
            Error::Precondition(_) => "precondition",
            Error::InvalidSymplecticForm(_) => "invalid_symplectic_form",
            Error::Singular => "singular",
            Error::NotAntiSymplectic => "not_anti_symplectic",
            Error::SmoothFiberType(_) => "smooth_fiber_type",
            Error::InvalidBvData(_) => "invalid_bv_data",
            Error::NonPositiveHodge { .. } => "non_positive_hodge",
            Error::NoMirrorFamily => "no_mirror_family",
            Error::SelfMirrorCase => "self_mirror_case",
            Error::CensusViolations(_) => "census_violations",
            Error::EulerMismatch { .. } => "euler_mismatch",
            Error::NotOnBase => "not_on_base",
            Error::RankOutOfRange { .. } => "rank_out_of_range",
            Error::Parse(_) => "parse",
        }
    }
}
