use locre_core::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("input is not valid UTF-8 at byte {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("input character U+{code:X} at byte {offset} is outside the Basic Multilingual Plane")]
    NonBmp { offset: usize, code: u32 },
    #[error("{0}")]
    Bench(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
