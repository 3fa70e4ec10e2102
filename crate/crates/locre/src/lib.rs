//! Text frontend for `locre-core`: UTF-8 decoding, a thread-safe compiled
//! regex, the paragraph benchmark pattern generator and the `locre` CLI.

pub mod cli;
pub mod decode;
pub mod error;
pub mod gen;
pub mod regex;

pub use decode::{decode, Subject};
pub use error::Error;
pub use gen::{gen_pattern, pattern_len, BenchSpec, Style, DEFAULT_WORDS};
pub use locre_core::MatchSpan;
pub use regex::Regex;

/// A public-domain-style prose excerpt of about 10 kB used by the benchmarks.
pub const EXCERPT: &str = include_str!("../data/excerpt.txt");
