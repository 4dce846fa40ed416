use alloc::string::String;
use core::fmt;

/// Errors surfaced by constructors and operations with validated inputs.
///
/// Internal invariant violations (mismatched arities between values that
/// were created inside one computation, broken term order, ...) are bugs
/// and panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Characteristic is not a prime number.
    NotPrime(u32),
    /// Exponent vector length does not match the ring arity.
    ArityMismatch { expected: usize, got: usize },
    /// Two values belong to different rings.
    RingMismatch,
    /// A polynomial or matrix entry that must be homogeneous is not.
    Inhomogeneous(String),
    /// The defining ideal of a quotient ring contains a unit.
    UnitIdeal,
    /// A matrix does not induce a well-defined map of presented modules.
    IllDefinedMap(String),
    /// Operation requires a nonzero module.
    ZeroModule,
    /// Operation requires a Cohen-Macaulay ring (or module).
    NotCohenMacaulay,
    /// A required hypothesis flag is missing or not verified.
    HypothesisMissing(String),
    /// Malformed input dimensions (degree lists vs. matrix shape etc.).
    ShapeMismatch(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NotPrime(p) => write!(f, "{p} is not prime"),
            CoreError::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected} variables, got {got}")
            }
            CoreError::RingMismatch => write!(f, "values belong to different rings"),
            CoreError::Inhomogeneous(what) => write!(f, "inhomogeneous input: {what}"),
            CoreError::UnitIdeal => write!(f, "defining ideal is the unit ideal"),
            CoreError::IllDefinedMap(why) => write!(f, "map is not well defined: {why}"),
            CoreError::ZeroModule => write!(f, "operation requires a nonzero module"),
            CoreError::NotCohenMacaulay => write!(f, "ring is not Cohen-Macaulay"),
            CoreError::HypothesisMissing(h) => write!(f, "hypothesis not verified: {h}"),
            CoreError::ShapeMismatch(why) => write!(f, "shape mismatch: {why}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoreError {}
