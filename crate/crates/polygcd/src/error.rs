use num_bigint::BigInt;
use thiserror::Error;

/// All domain errors produced by this crate.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// so that front ends can map failures without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomial must be nonconstant (degree >= 1)")]
    DegreeTooSmall,

    #[error("resultant is zero: the polynomials share a root, gcd sequence is unbounded")]
    NotCoprime,

    #[error("factorization incomplete: cofactor {remaining} exceeds the trial bound and is not provably prime")]
    FactorizationIncomplete { remaining: BigInt },

    #[error("{n} is not prime")]
    NotPrime { n: u64 },

    #[error("polynomial vanishes identically modulo {p}")]
    ZeroModP { p: u64 },

    #[error("operation requires monic polynomials")]
    NotMonic,

    #[error("residue {rho} is not a simple root modulo {p} (derivative vanishes)")]
    NotSimpleRoot { rho: u64, p: u64 },

    #[error("residue {rho} is not a root modulo {p}")]
    NotARoot { rho: u64, p: u64 },

    #[error("polynomial is not split with simple roots modulo {p}")]
    NotSplitSimple { p: u64 },

    #[error("factorizations have different moduli")]
    ModulusMismatch,

    #[error("expected resultant valuation 1, got {omega}")]
    WrongValuation { omega: u32 },

    #[error("precondition violated: {0}")]
    PrereqViolated(String),

    #[error("A(n) and B(n) are both zero at n = {n}")]
    BothZero { n: BigInt },

    #[error("window of {len} values is too short, need at least {needed}")]
    WindowTooShort { len: usize, needed: u64 },

    #[error("scan of {needed} evaluations exceeds the cap of {cap}")]
    ScanCapExceeded { needed: u64, cap: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable error code, used by the CLI for exit reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse-error",
            Error::DegreeTooSmall => "degree-too-small",
            Error::NotCoprime => "not-coprime",
            Error::FactorizationIncomplete { .. } => "factorization-incomplete",
            Error::NotPrime { .. } => "not-prime",
            Error::ZeroModP { .. } => "zero-mod-p",
            Error::NotMonic => "not-monic",
            Error::NotSimpleRoot { .. } => "not-simple-root",
            Error::NotARoot { .. } => "not-a-root",
            Error::NotSplitSimple { .. } => "not-split-simple",
            Error::ModulusMismatch => "modulus-mismatch",
            Error::WrongValuation { .. } => "wrong-valuation",
            Error::PrereqViolated(_) => "precondition-violated",
            Error::BothZero { .. } => "both-zero",
            Error::WindowTooShort { .. } => "window-too-short",
            Error::ScanCapExceeded { .. } => "scan-cap-exceeded",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
