//! Error type shared by every fallible operation in the crate.

use core::fmt;

/// Everything that can go wrong when building states or evaluating
/// quantities on them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix handed to a Hermitian-only routine deviates from its own
    /// adjoint by more than the tolerance.
    NotHermitian {
        /// Largest entrywise |A - A^dagger| found.
        deviation: f64,
    },
    /// The iterative eigensolver failed to drive the off-diagonal mass
    /// below tolerance within its sweep budget.
    NoConvergence {
        /// Number of full sweeps performed before giving up.
        sweeps: usize,
    },
    /// A scalar function applied to an eigenvalue produced a non-finite
    /// result (log of a non-positive number, for instance).
    DomainError {
        /// The offending eigenvalue.
        eigenvalue: f64,
    },
    /// A matrix that must be a density operator has the wrong trace or a
    /// significantly negative eigenvalue.
    NotState {
        trace_deviation: f64,
        min_eigenvalue: f64,
    },
    /// A probability vector has entries outside [0, 1] or does not sum
    /// to one within tolerance.
    InvalidDistribution { sum: f64, min_entry: f64 },
    /// A model parameter is outside its allowed range.
    InvalidParams { field: &'static str, value: f64 },
    /// The closed-form spectrum needs a strictly positive tunneling
    /// amplitude; at zero the symmetric/antisymmetric split degenerates.
    DegenerateTunneling,
    /// A state fed to a thermal-pattern-only routine does not have the
    /// symmetric thermal structure (real entries, the expected equalities
    /// between matrix elements).
    PatternMismatch {
        /// Largest entrywise deviation from the expected pattern.
        deviation: f64,
    },
    /// The closed-form discord needs vanishing local Bloch vectors; this
    /// state has a local vector of the reported norm.
    BellDiagonalityViolated { bloch_norm: f64 },
    /// Teleportation fidelity formulas only apply when the correlation
    /// matrix has negative determinant.
    ValidityDomain { det_r: f64 },
    /// A ratio whose denominator vanishes (for example thermodynamic
    /// efficiency when the interaction energy is zero).
    Undefined { denominator: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:e})")
            }
            Error::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge after {sweeps} sweeps")
            }
            Error::DomainError { eigenvalue } => {
                write!(f, "scalar function undefined at eigenvalue {eigenvalue:e}")
            }
            Error::NotState {
                trace_deviation,
                min_eigenvalue,
            } => {
                write!(
                    f,
                    "not a density operator (trace deviation {trace_deviation:e}, \
                     minimum eigenvalue {min_eigenvalue:e})"
                )
            }
            Error::InvalidDistribution { sum, min_entry } => {
                write!(
                    f,
                    "invalid probability vector (sum {sum}, minimum entry {min_entry:e})"
                )
            }
            Error::InvalidParams { field, value } => {
                write!(f, "invalid parameter {field} = {value}")
            }
            Error::DegenerateTunneling => {
                write!(f, "tunneling amplitude must be strictly positive")
            }
            Error::PatternMismatch { deviation } => {
                write!(
                    f,
                    "state lacks the symmetric thermal pattern (deviation {deviation:e})"
                )
            }
            Error::BellDiagonalityViolated { bloch_norm } => {
                write!(f, "local Bloch vectors must vanish (norm {bloch_norm:e})")
            }
            Error::ValidityDomain { det_r } => {
                write!(
                    f,
                    "correlation-matrix determinant must be negative (got {det_r:e})"
                )
            }
            Error::Undefined { denominator } => {
                write!(f, "ratio undefined: denominator {denominator:e}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
