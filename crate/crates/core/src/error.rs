use thiserror::Error;

/// Errors raised by the algebra and the cobordism engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient surfaces differ: genus {left} vs genus {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("contraction requires a homogeneous class of exterior degree 1")]
    NotDegreeOne,

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("matrix is not symplectic: (M^T Q M)[{row}][{col}] = {found}, expected {expected}")]
    NotSymplectic {
        row: usize,
        col: usize,
        found: i128,
        expected: i128,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("genus {0} exceeds the supported maximum of {max}", max = crate::surface::MAX_GENUS)]
    GenusTooLarge(usize),

    #[error("Morse-Bott violation: eta_bar equals d")]
    MorseBott,

    #[error("chamber {chamber} requires {requirement}")]
    ChamberInconsistent {
        chamber: char,
        requirement: &'static str,
    },

    #[error("genus underflow: 2-handle attached at genus 0 (move {move_index})")]
    GenusUnderflow { move_index: usize },

    #[error("word does not close: genus trail ends at {end}, starts at {start}")]
    NotClosed { start: usize, end: usize },

    #[error("operator domain and codomain differ")]
    NotEndomorphism,

    #[error("cannot compose operators: inner codomain does not match outer domain")]
    ComposeMismatch,

    #[error(
        "space Sym^{k} of a genus {genus} surface has dimension {dim}, above the limit {limit}"
    )]
    SpaceTooLarge {
        genus: usize,
        k: i64,
        dim: u128,
        limit: u128,
    },

    #[error("graded trace {0} is not an integer")]
    NonIntegralTrace(String),

    #[error("invalid range: d_min {d_min} > d_max {d_max}")]
    InvalidRange { d_min: i64, d_max: i64 },

    #[error("k_max {k_max} must be at least 2g = {two_g}")]
    KMaxTooSmall { k_max: usize, two_g: usize },
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NonIntegralTrace(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
