//! Brute-force reference semantics of the derivation relation.
//!
//! The oracle never takes a derivative. It evaluates `⟨s,i⟩ ⟶_R ⟨s,j⟩`
//! by structural recursion on `R`: concatenation tries every split point,
//! loops iterate reachable-position sets, complement negates, lookaheads
//! search for any match from `i` and lookbehinds search for any match
//! ending at `i`. Only meant for short subjects.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::ast::{Arena, LookDir, Node, NodeId};
use crate::engine::MatchSpan;

/// Subjects longer than this are rejected outright.
pub const MAX_ORACLE_LEN: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_len: usize,
    pub alphabet: Vec<u16>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_len: 5, alphabet: alloc::vec![b'a' as u16, b'b' as u16, b'\n' as u16] }
    }
}

impl OracleConfig {
    pub fn new(max_len: usize, alphabet: Vec<u16>) -> Result<OracleConfig, OracleError> {
        if max_len > MAX_ORACLE_LEN {
            return Err(OracleError::TooLong { len: max_len, max: MAX_ORACLE_LEN });
        }
        Ok(OracleConfig { max_len, alphabet })
    }

    /// Every string over the alphabet of length at most `max_len`, shortest first.
    pub fn all_strings(&self) -> Vec<Vec<u16>> {
        let mut out: Vec<Vec<u16>> = alloc::vec![Vec::new()];
        let mut layer: Vec<Vec<u16>> = alloc::vec![Vec::new()];
        for _ in 0..self.max_len {
            let mut next = Vec::with_capacity(layer.len() * self.alphabet.len());
            for s in &layer {
                for &c in &self.alphabet {
                    let mut t = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn check(&self, subject: &[u16]) -> Result<(), OracleError> {
        if subject.len() > self.max_len {
            Err(OracleError::TooLong { len: subject.len(), max: self.max_len })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleError {
    TooLong { len: usize, max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLong { len, max } => {
                write!(f, "subject of length {} exceeds the oracle limit of {}", len, max)
            }
        }
    }
}

/// Match sets of one subject, memoized per (node, start).
pub struct Oracle<'a> {
    arena: &'a Arena,
    subject: &'a [u16],
    memo: HashMap<(NodeId, usize), u64>,
}

impl<'a> Oracle<'a> {
    pub fn new(arena: &'a Arena, subject: &'a [u16]) -> Oracle<'a> {
        assert!(subject.len() < 64, "oracle subjects are limited to 63 code units");
        Oracle { arena, subject, memo: HashMap::new() }
    }

    fn all_from(&self, i: usize) -> u64 {
        let n = self.subject.len();
        let upto = if n + 1 >= 64 { u64::MAX } else { (1u64 << (n + 1)) - 1 };
        upto & !((1u64 << i) - 1)
    }

    /// Bitmask of every `j` with `⟨s,i⟩ ⟶_R ⟨s,j⟩`.
    pub fn ends(&mut self, r: NodeId, i: usize) -> u64 {
        if let Some(&m) = self.memo.get(&(r, i)) {
            return m;
        }
        let n = self.subject.len();
        let result = match self.arena.node(r) {
            Node::Pred(p) => {
                if i < n && self.arena.pred(*p).contains(self.subject[i]) {
                    1 << (i + 1)
                } else {
                    0
                }
            }
            Node::Epsilon => 1 << i,
            Node::Union(cs) => cs.clone().iter().fold(0, |acc, &c| acc | self.ends(c, i)),
            Node::Inter(cs) => cs.clone().iter().fold(self.all_from(i), |acc, &c| acc & self.ends(c, i)),
            Node::Complement(b) => {
                let b = *b;
                self.all_from(i) & !self.ends(b, i)
            }
            Node::Concat(h, t) => {
                let (h, t) = (*h, *t);
                let mids = self.ends(h, i);
                let mut acc = 0;
                for z in i..=n {
                    if mids >> z & 1 == 1 {
                        acc |= self.ends(t, z);
                    }
                }
                acc
            }
            Node::Loop { body, min, max } => {
                let (body, min, max) = (*body, *min as usize, *max);
                // iterations past min + (n - i) only add stuttering steps
                let cap = min + (n - i) + 1;
                let limit = max.map_or(cap, |m| (m as usize).min(cap));
                let mut cur: u64 = 1 << i;
                let mut acc = 0;
                for k in 0..=limit {
                    if k >= min {
                        acc |= cur;
                    }
                    if k == limit {
                        break;
                    }
                    let mut next = 0;
                    for z in i..=n {
                        if cur >> z & 1 == 1 {
                            next |= self.ends(body, z);
                        }
                    }
                    cur = next;
                    if cur == 0 {
                        break;
                    }
                }
                acc
            }
            Node::Look { dir, negated, body } => {
                let (dir, negated, body) = (*dir, *negated, *body);
                let found = match dir {
                    LookDir::Ahead => self.ends(body, i) != 0,
                    LookDir::Behind => (0..=i).any(|z| self.ends(body, z) >> i & 1 == 1),
                };
                if found != negated {
                    1 << i
                } else {
                    0
                }
            }
        };
        self.memo.insert((r, i), result);
        result
    }

    pub fn matches(&mut self, r: NodeId, i: usize, j: usize) -> bool {
        j >= i && self.ends(r, i) >> j & 1 == 1
    }

    /// Every span `(i,j)` of the subject matched by `R`, sorted.
    pub fn all_matches(&mut self, r: NodeId) -> Vec<MatchSpan> {
        let n = self.subject.len();
        let mut out = Vec::new();
        for i in 0..=n {
            let e = self.ends(r, i);
            for j in i..=n {
                if e >> j & 1 == 1 {
                    out.push(MatchSpan::new(i, j));
                }
            }
        }
        out
    }

    /// Least start, then greatest end for that start.
    pub fn posix(&mut self, r: NodeId) -> Option<MatchSpan> {
        let n = self.subject.len();
        (0..=n).find_map(|i| {
            let e = self.ends(r, i);
            if e == 0 {
                None
            } else {
                Some(MatchSpan::new(i, 63 - e.leading_zeros() as usize))
            }
        })
    }
}

pub fn oracle_matches(arena: &Arena, subject: &[u16], i: usize, r: NodeId, j: usize) -> bool {
    Oracle::new(arena, subject).matches(r, i, j)
}

pub fn oracle_all_matches(
    arena: &Arena,
    cfg: &OracleConfig,
    subject: &[u16],
    r: NodeId,
) -> Result<Vec<MatchSpan>, OracleError> {
    cfg.check(subject)?;
    Ok(Oracle::new(arena, subject).all_matches(r))
}

pub fn oracle_posix(
    arena: &Arena,
    cfg: &OracleConfig,
    subject: &[u16],
    r: NodeId,
) -> Result<Option<MatchSpan>, OracleError> {
    cfg.check(subject)?;
    Ok(Oracle::new(arena, subject).posix(r))
}
