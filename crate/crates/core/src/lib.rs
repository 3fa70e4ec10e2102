//! Regex matching with location derivatives.
//!
//! Supports intersection (`&`), complement (`~`), bounded loops and
//! lookarounds in both directions, and reports POSIX leftmost-longest
//! matches without backtracking. Subjects are UTF-16 code units restricted
//! to the Basic Multilingual Plane.
//!
//! ```
//! use locre_core::{MatchSpan, Regex};
//!
//! let re = Regex::new("King~([\\s\\S]*\\d\\d[\\s\\S]*)Paris").unwrap();
//! let mut cache = re.create_cache();
//! let s: Vec<u16> = "The King in Paris".encode_utf16().collect();
//! assert_eq!(re.find(&mut cache, &s), Some(MatchSpan::new(4, 17)));
//! ```

#![no_std]

extern crate alloc;

pub mod ast;
pub mod charset;
pub mod engine;
pub mod oracle;
pub mod parse;
mod print;
pub mod regex;
pub mod search;
pub mod startset;

pub use ast::{Arena, LookDir, LoopBoundsError, Node, NodeId, NullKind, PredId};
pub use charset::{CharSet, MintermTable};
pub use engine::{Location, MatchSpan};
pub use oracle::{OracleConfig, OracleError};
pub use parse::{desugar_anchor, parse, Anchor, ParseError, ParseErrorKind};
pub use regex::{Cache, Regex};
pub use search::TopLevelBranch;
pub use startset::{skip_to, Scanner, SkipInfo};
