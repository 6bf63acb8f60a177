//! Exact upper bounds for codes of alternating matrices under the rank metric.
//!
//! An alternating matrix over F_q is a skew-symmetric matrix with zero
//! diagonal; its rank is always even.  A set of n x n alternating matrices in
//! which any two distinct members differ by a matrix of rank at least 2d is a
//! code with minimum rank distance 2d, and the central quantity here is the
//! largest possible size of such a code.
//!
//! Everything is computed in exact arithmetic (big integers and big
//! rationals): closed-form spectral bounds, two linear-programming bounds
//! solved by an exact rational simplex, classical counting bounds, and a
//! brute-force oracle that rebuilds the underlying rank-distance graph for
//! small parameters and re-derives its metric and spectral structure from
//! scratch.

pub mod altforms;
pub mod bounds;
pub mod gf;
pub mod oracle;
pub mod ratlp;
pub mod spectra;

use num_bigint::BigUint;

/// Errors reported by the library.
///
/// Every fallible operation narrows its failure to one of these variants;
/// callers that need an exit status can map `SizeGuard`/`BudgetExhausted` and
/// the parameter errors separately.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("field order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("elements belong to different field instances")]
    MixedFields,
    #[error("matrix index {idx} out of range for a space of size {size}")]
    IndexOutOfRange { idx: u128, size: u128 },
    #[error("matrix space of dimension {dim} over F_{q} does not fit in a 128-bit index")]
    SpaceTooLarge { q: u64, dim: u64 },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("minimum distance needs at least two codewords")]
    CodeTooSmall,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("multiplicity {index} is not a nonnegative integer")]
    NonIntegralMultiplicity { index: usize },
    #[error("linear program is malformed: {0}")]
    MalformedProgram(String),
    #[error("linear program has status {0}, expected an optimum")]
    NoOptimum(&'static str),
    #[error("size guard: {what} = {actual} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: BigUint,
        limit: BigUint,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
