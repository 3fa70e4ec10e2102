//! Compiled patterns.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::ast::{Arena, NodeId};
use crate::engine::{Location, MatchSpan};
use crate::parse::{parse, ParseError};

/// A parsed pattern. Immutable; matching goes through a [`Cache`].
#[derive(Clone)]
pub struct Regex {
    pattern: String,
    arena: Arena,
    root: NodeId,
    prefixed: NodeId,
    skip: bool,
}

/// Per-thread matching state: a private copy of the node arena that
/// grows with the derivatives explored so far.
#[derive(Clone)]
pub struct Cache {
    arena: Arena,
}

impl Cache {
    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn arena_mut(&mut self) -> &mut Arena {
        &mut self.arena
    }
}

impl Regex {
    pub fn new(pattern: &str) -> Result<Regex, ParseError> {
        let mut arena = Arena::new();
        let root = parse(&mut arena, pattern)?;
        Ok(Regex::build(pattern.to_string(), arena, root))
    }

    /// Wrap a node built directly through the arena constructors.
    pub fn from_node(mut arena: Arena, root: NodeId) -> Regex {
        let pattern = arena.to_pattern(root);
        let _ = &mut arena;
        Regex::build(pattern, arena, root)
    }

    fn build(pattern: String, mut arena: Arena, root: NodeId) -> Regex {
        let prefixed = arena.mk_concat(NodeId::TOP_STAR, root);
        // compute shared tables once so every cache clone starts with them
        arena.minterms();
        arena.skip_info(root);
        Regex { pattern, arena, root, prefixed, skip: true }
    }

    /// Enable or disable startset skipping.
    pub fn with_skip(mut self, skip: bool) -> Regex {
        self.skip = skip;
        self
    }

    pub fn skip_enabled(&self) -> bool {
        self.skip
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn create_cache(&self) -> Cache {
        Cache { arena: self.arena.clone() }
    }

    pub fn is_match(&self, cache: &mut Cache, subject: &[u16]) -> bool {
        cache.arena.is_match(Location::new(subject, 0), self.prefixed)
    }

    /// The leftmost-longest match.
    pub fn find(&self, cache: &mut Cache, subject: &[u16]) -> Option<MatchSpan> {
        self.find_at(cache, subject, 0)
    }

    /// The leftmost-longest match starting at or after `from`.
    pub fn find_at(&self, cache: &mut Cache, subject: &[u16], from: usize) -> Option<MatchSpan> {
        cache.arena.find_posix(self.root, subject, from, self.skip)
    }

    pub fn find_all(&self, cache: &mut Cache, subject: &[u16]) -> Vec<MatchSpan> {
        cache.arena.find_all_spans(self.root, subject, self.skip)
    }

    pub fn count(&self, cache: &mut Cache, subject: &[u16]) -> usize {
        self.find_all(cache, subject).len()
    }

    /// The leftmost-longest match computed by a backward then a forward pass.
    pub fn find_reference(&self, cache: &mut Cache, subject: &[u16]) -> Option<MatchSpan> {
        cache.arena.ll_match_reference(subject, self.root)
    }
}

impl core::fmt::Debug for Regex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_tuple("Regex").field(&self.pattern).finish()
    }
}
