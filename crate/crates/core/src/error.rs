//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested modulus is outside the supported domain.
    #[error("p must be an odd prime > 3 (got {0})")]
    InvalidModulus(u64),

    /// Zero has no multiplicative inverse in F_p.
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    /// A generic precondition violation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix with zero determinant cannot represent a PGL(2,p) element.
    #[error("matrix has zero determinant mod {0}")]
    SingularMatrix(u64),

    /// No power of the element up to the p+1 bound was scalar.  Cannot
    /// happen for a well-formed element; signals corrupted state.
    #[error("no power up to {bound} is scalar")]
    OrderOverflow { bound: u64 },

    /// No trace parameter yields a determinant-one element of order l.
    #[error("no determinant-one element of order {l} exists in PGL(2,{p})")]
    NoOrderElement { p: u64, l: u64 },

    /// The backward-substitution search ran out of candidates.
    #[error("generator search exhausted for p={p}, l={l}, theta={theta}")]
    SearchExhausted { p: u64, l: u64, theta: u64 },

    /// A freshly constructed pair failed post-verification.
    #[error("constructed pair failed post-verification: {0}")]
    OrderMismatch(String),

    /// v - e + f must be even for the genus to be an integer.
    #[error("v - e + f = {chi} is odd; genus undefined")]
    ParityError { chi: i64 },

    /// Genus formulas assume a connected diagram.
    #[error("diagram is disconnected; genus is undefined")]
    Disconnected,

    /// A genus formula evaluated to a non-integer, so the inputs cannot
    /// describe a consistent diagram.
    #[error("genus formula produced non-integer {numer}/{denom}")]
    NonIntegralGenus { numer: i128, denom: i128 },

    /// Exhaustive enumeration of PGL(2,q) was refused without an override.
    #[error("q={q} exceeds the enumeration budget {budget}; pass force to override")]
    SizeLimit { q: u64, budget: u64 },

    /// No element of the requested order exists.
    #[error("no element of order {order} found in PGL(2,{q})")]
    NotFound { q: u64, order: u64 },

    /// g_k failed to split into deg(g_k) distinct roots mod p.
    #[error("g_{k} has {found} roots mod {p}, expected {expected}")]
    SplitDefect {
        k: u64,
        p: u64,
        expected: usize,
        found: usize,
    },
}
