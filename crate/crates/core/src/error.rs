use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("circulant graphs need at least 3 vertices, got {0}")]
    TooSmall(usize),

    #[error("invalid jump {jump} for n = {n}: {reason}")]
    InvalidJump {
        n: usize,
        jump: usize,
        reason: &'static str,
    },

    #[error("dense Laplacian of order {0} exceeds the limit of {limit}", limit = crate::circulant::DENSE_LIMIT)]
    TooLarge(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("grounded Laplacian factorization failed")]
    Singular,

    #[error("power J must be at least 1")]
    BadPower,

    #[error("closed form requires n >= {min}, got {n}")]
    UnsupportedN { n: usize, min: usize },

    #[error("offset {offset} out of range for n = {n}")]
    InvalidOffset { n: usize, offset: usize },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("walk exceeded the step cap of {0}")]
    StepCap(u64),

    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
