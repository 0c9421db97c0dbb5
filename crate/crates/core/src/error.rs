use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported scale: {what} has order {order}, above the cap of {cap}")]
    UnsupportedScale { what: String, order: u64, cap: u64 },

    #[error("no character-table model for type {0}; use the meataxe method instead")]
    NoTableModel(String),

    #[error("e = {e} is unreachable in characteristic {ell}: orders in k^x are prime to {ell}")]
    Unreachable { e: u64, ell: u64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("meataxe iteration budget exhausted (seed {seed}); retry with a new seed")]
    ChopBudget { seed: u64 },

    #[error("counting paths disagree for {0}")]
    PathDisagreement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
