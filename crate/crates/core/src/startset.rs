//! Startsets and skipping.
//!
//! A state is *skippable* when deriving it by any character outside its
//! startset returns the state itself. The matcher then jumps straight to
//! the next character in the startset instead of deriving position by
//! position. Startsets may overestimate the set of state-changing
//! characters, never underestimate it.

use alloc::vec::Vec;

use crate::ast::{Arena, Node, NodeId, NullKind};
use crate::charset::CharSet;

/// Skippability of a state together with its startset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkipInfo {
    pub skippable: bool,
    pub startset: CharSet,
}

impl Arena {
    /// Overapproximation of the characters that change the derivative of `r`.
    pub fn startset(&mut self, r: NodeId) -> CharSet {
        self.skip_info(r).startset
    }

    pub fn is_skippable(&mut self, r: NodeId) -> bool {
        match self.caches.skip.get(&r) {
            Some(info) => info.skippable,
            None => self.skip_info(r).skippable,
        }
    }

    pub fn skip_info(&mut self, r: NodeId) -> SkipInfo {
        if let Some(info) = self.caches.skip.get(&r) {
            return info.clone();
        }
        let info = match self.node(r).clone() {
            Node::Pred(p) => SkipInfo { skippable: false, startset: self.pred(p).clone() },
            Node::Epsilon | Node::Look { .. } => SkipInfo { skippable: false, startset: CharSet::full() },
            Node::Loop { body, min: 0, max: None } if self.pred_of(body).is_some() => {
                let psi = self.pred_of(body).unwrap().not();
                SkipInfo { skippable: true, startset: psi }
            }
            Node::Loop { .. } => SkipInfo { skippable: false, startset: CharSet::full() },
            Node::Concat(h, t) => {
                let head = self.skip_info(h);
                if head.skippable {
                    let mut set = head.startset;
                    if self.null_kind(h) != NullKind::Never {
                        set = set.or(&self.viable_chars(t));
                    }
                    SkipInfo { skippable: true, startset: set }
                } else if let Some(p) = self.pred_of(h) {
                    SkipInfo { skippable: false, startset: p.clone() }
                } else {
                    SkipInfo { skippable: false, startset: CharSet::full() }
                }
            }
            Node::Union(cs) | Node::Inter(cs) => self.combine(&cs),
            Node::Complement(b) => self.combine(&[b]),
        };
        self.caches.skip.insert(r, info.clone());
        info
    }

    fn combine(&mut self, children: &[NodeId]) -> SkipInfo {
        for &c in children {
            if !self.caches.skip.contains_key(&c) {
                self.skip_info(c);
            }
        }
        let mut skippable = true;
        let mut ranges = Vec::new();
        for c in children {
            let info = &self.caches.skip[c];
            skippable &= info.skippable;
            ranges.extend_from_slice(info.startset.ranges());
        }
        SkipInfo { skippable, startset: CharSet::from_ranges(ranges) }
    }

    /// Characters whose derivative of `r` may differ from `⊥`.
    pub fn viable_chars(&mut self, r: NodeId) -> CharSet {
        if let Some(s) = self.caches.viable.get(&r) {
            return s.clone();
        }
        let set = match self.node(r).clone() {
            Node::Pred(p) => self.pred(p).clone(),
            Node::Epsilon | Node::Look { .. } => CharSet::empty(),
            Node::Concat(h, t) => {
                let head = self.viable_chars(h);
                if self.null_kind(h) == NullKind::Never {
                    head
                } else {
                    head.or(&self.viable_chars(t))
                }
            }
            Node::Union(cs) => {
                let mut s = CharSet::empty();
                for c in cs.iter() {
                    s = s.or(&self.viable_chars(*c));
                }
                s
            }
            Node::Inter(cs) => {
                let mut s = CharSet::full();
                for c in cs.iter() {
                    s = s.and(&self.viable_chars(*c));
                }
                s
            }
            Node::Loop { body, .. } => self.viable_chars(body),
            Node::Complement(_) => CharSet::full(),
        };
        self.caches.viable.insert(r, set.clone());
        set
    }
}

/// Smallest `q ≥ pos` with `subject[q] ∈ p`, or `subject.len()`.
pub fn skip_to(subject: &[u16], pos: usize, p: &CharSet) -> usize {
    Scanner::new(p).find(subject, pos)
}

const LO: u64 = 0x0001_0001_0001_0001;
const HI: u64 = 0x8000_8000_8000_8000;

#[inline(always)]
fn has_zero_lane(v: u64) -> bool {
    v.wrapping_sub(LO) & !v & HI != 0
}

#[inline(always)]
fn pack(c: &[u16]) -> u64 {
    u64::from(c[0]) | u64::from(c[1]) << 16 | u64::from(c[2]) << 32 | u64::from(c[3]) << 48
}

/// A compiled search for the next member of a character set.
#[derive(Clone, Debug)]
pub enum Scanner {
    /// Up to three literal code units, searched four lanes per word.
    Needles(Vec<u16>),
    /// Bitmap for code units below 256 plus the remaining members.
    Table { low: [u64; 4], high: CharSet },
}

impl Scanner {
    pub fn new(p: &CharSet) -> Scanner {
        if p.len() <= 3 {
            return Scanner::Needles(p.chars().collect());
        }
        let mut low = [0u64; 4];
        for &(a, b) in p.ranges() {
            for c in a..=b.min(255) {
                low[(c >> 6) as usize] |= 1 << (c & 63);
            }
        }
        let high = p.and(&CharSet::range(256, crate::charset::MAX_CHAR));
        Scanner::Table { low, high }
    }

    pub fn find(&self, hay: &[u16], from: usize) -> usize {
        match self {
            Scanner::Needles(ns) => match ns[..] {
                [] => hay.len(),
                [a] => find_swar(hay, from, |c| c == a, &[a]),
                [a, b] => find_swar(hay, from, |c| c == a || c == b, &[a, b]),
                _ => find_swar(hay, from, |c| ns.contains(&c), ns),
            },
            Scanner::Table { low, high } => {
                let no_high = high.is_empty();
                for (i, &c) in hay.iter().enumerate().skip(from) {
                    if c < 256 {
                        if low[(c >> 6) as usize] >> (c & 63) & 1 != 0 {
                            return i;
                        }
                    } else if !no_high && high.contains(c) {
                        return i;
                    }
                }
                hay.len()
            }
        }
    }
}

#[inline(always)]
fn find_swar(hay: &[u16], from: usize, hit: impl Fn(u16) -> bool, needles: &[u16]) -> usize {
    let mut reps = [0u64; 3];
    for (r, &n) in reps.iter_mut().zip(needles) {
        *r = u64::from(n).wrapping_mul(LO);
    }
    let reps = &reps[..needles.len()];
    let mut i = from.min(hay.len());
    while i + 8 <= hay.len() {
        let v0 = pack(&hay[i..i + 4]);
        let v1 = pack(&hay[i + 4..i + 8]);
        if reps.iter().any(|&r| has_zero_lane(v0 ^ r) || has_zero_lane(v1 ^ r)) {
            for (j, &c) in hay[i..i + 8].iter().enumerate() {
                if hit(c) {
                    return i + j;
                }
            }
        }
        i += 8;
    }
    while i < hay.len() {
        if hit(hay[i]) {
            return i;
        }
        i += 1;
    }
    hay.len()
}
