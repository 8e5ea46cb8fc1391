//! Crate-wide error type for construction, sampling, and serialization
//! failures. Protocol verification failures are *not* errors; see
//! [`crate::protocol::Reject`].

use std::fmt;

/// Errors raised while building or (de)serializing laboratory objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share a length do not.
    LengthMismatch { expected: usize, got: usize },
    /// The modulus is not a prime in `[2, 251]`.
    InvalidModulus(u16),
    /// A symbol does not fit the modulus.
    SymbolOutOfRange { symbol: u8, q: u8 },
    /// A permutation mapping is not a bijection on `[0, n)`.
    NotBijection,
    /// The requested weight sphere contains no vectors.
    EmptySphere,
    /// A brute-force guard tripped: the search space exceeds the cap.
    InstanceTooLarge { log2_size: u32, log2_cap: u32 },
    /// Rejection sampling exhausted its retry budget.
    RetryCapExceeded { cap: u64 },
    /// The per-signature call counter would wrap.
    IndexOverflow,
    /// Scheme or model parameters are inconsistent.
    InvalidParameters(String),
    /// A byte string does not decode to the expected structure.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::InvalidModulus(q) => write!(f, "modulus {q} is not a prime in [2, 251]"),
            Error::SymbolOutOfRange { symbol, q } => {
                write!(f, "symbol {symbol} out of range for F_{q}")
            }
            Error::NotBijection => write!(f, "mapping is not a bijection"),
            Error::EmptySphere => write!(f, "empty sphere"),
            Error::InstanceTooLarge { log2_size, log2_cap } => {
                write!(
                    f,
                    "instance too large for exhaustive search: 2^{log2_size} > 2^{log2_cap}"
                )
            }
            Error::RetryCapExceeded { cap } => {
                write!(f, "rejection sampling exceeded {cap} retries")
            }
            Error::IndexOverflow => write!(f, "salted call index overflow"),
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
