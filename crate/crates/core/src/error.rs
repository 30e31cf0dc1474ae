use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position out of bounds: {position} not in 1..={len}")]
    PositionOutOfBounds { position: usize, len: usize },

    #[error("invalid character {0:?} in bitstring")]
    InvalidChar(char),

    #[error("invalid bit value {0}")]
    InvalidBit(u8),

    #[error("unbalanced word")]
    Unbalanced,

    #[error("empty decomposition")]
    EmptyDecomposition,

    #[error("not a near-Dyck word")]
    NotNearDyck,

    #[error("not in tau domain")]
    NotInTauDomain,

    #[error("not in tau image")]
    NotInTauImage,

    #[error("not a middle-levels word: length {len}, weight {weight}, n = {n}")]
    NotMiddleLevels { n: usize, len: usize, weight: usize },

    #[error("n must be at least 1")]
    ZeroOrder,

    #[error("no rotation of the canonical rooting has the required form")]
    NoMatchingRotation,

    #[error("desk-scale only: n = {n} exceeds cap {cap}")]
    DeskScale { n: usize, cap: usize },

    #[error("vertex {0} is not on any generated path")]
    NotOnPath(String),
}

pub type Result<T> = std::result::Result<T, Error>;
