//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HrcError {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    /// Mirror coefficients exceed the lossless bound r^2 + t^2 <= 1.
    #[error("non-physical mirror: r^2 + t^2 = {sum}")]
    NonPhysicalMirror { sum: f64 },
    /// 2x2 inversion requested below the conditioning threshold.
    #[error("singular matrix: |det| = {det_abs}")]
    SingularMatrix { det_abs: f64 },
    /// The split-resonance condition has no solution (arcsin out of range).
    #[error("no split resonance: arcsin argument {arg} outside [-1, 1]")]
    NoSplitResonance { arg: f64 },
    /// The cavity resonance factor vanishes at the requested frequency.
    #[error("singular resonance factor: |D| = {d_abs}")]
    SingularResonance { d_abs: f64 },
    /// A fit could not be carried out on the provided data.
    #[error("fit failed: {0}")]
    FitFailure(&'static str),
}
