//! Location derivatives.
//!
//! Nullability and derivatives are taken relative to a [`Location`], a
//! border position in a subject string. Lookarounds make the two mutually
//! recursive: a lookahead is nullable at `x` iff its body has a match
//! starting at `x`, and a lookbehind is checked as a lookahead of the
//! reversed body on the reversed view of the subject.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::ast::{Arena, LookDir, Node, NodeId, NullKind};
use crate::charset::{CharSet, MintermTable};
use crate::startset::{Scanner, SkipInfo};

/// A border position `⟨s,i⟩` with `0 ≤ i ≤ |s|`.
///
/// When `reversed` is set, positions index the reversed view of the
/// subject: position `i` of the view is position `|s| - i` of the
/// original, and the character at `i` is `s[|s| - 1 - i]`. The subject is
/// never copied.
#[derive(Clone, Copy)]
pub struct Location<'s> {
    subject: &'s [u16],
    pos: usize,
    reversed: bool,
}

impl<'s> Location<'s> {
    pub fn new(subject: &'s [u16], pos: usize) -> Location<'s> {
        assert!(pos <= subject.len(), "location {} out of range 0..={}", pos, subject.len());
        Location { subject, pos, reversed: false }
    }

    /// A location in the reversed view of `subject`.
    pub fn new_reversed(subject: &'s [u16], pos: usize) -> Location<'s> {
        assert!(pos <= subject.len(), "location {} out of range 0..={}", pos, subject.len());
        Location { subject, pos, reversed: true }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn subject(&self) -> &'s [u16] {
        self.subject
    }

    pub fn len(&self) -> usize {
        self.subject.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subject.is_empty()
    }

    pub fn is_final(&self) -> bool {
        self.pos == self.subject.len()
    }

    pub fn is_initial(&self) -> bool {
        self.pos == 0
    }

    /// The character `s_i` at this location, `None` when final.
    #[inline]
    pub fn current(&self) -> Option<u16> {
        if self.pos >= self.subject.len() {
            None
        } else if self.reversed {
            Some(self.subject[self.subject.len() - 1 - self.pos])
        } else {
            Some(self.subject[self.pos])
        }
    }

    /// The character `s_{i-1}`, `None` when initial.
    pub fn previous(&self) -> Option<u16> {
        if self.pos == 0 {
            None
        } else {
            Location { pos: self.pos - 1, ..*self }.current()
        }
    }

    pub fn advance(self) -> Location<'s> {
        debug_assert!(!self.is_final());
        Location { pos: self.pos + 1, ..self }
    }

    pub fn with_pos(self, pos: usize) -> Location<'s> {
        assert!(pos <= self.subject.len());
        Location { pos, ..self }
    }

    /// `rev(⟨s,i⟩) = ⟨rev s, |s|-i⟩`.
    pub fn reverse(self) -> Location<'s> {
        Location { subject: self.subject, pos: self.subject.len() - self.pos, reversed: !self.reversed }
    }

    /// Position in the original (non-reversed) subject.
    pub fn original_pos(&self) -> usize {
        if self.reversed {
            self.subject.len() - self.pos
        } else {
            self.pos
        }
    }
}

impl PartialEq for Location<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.subject, other.subject) && self.pos == other.pos && self.reversed == other.reversed
    }
}

impl Eq for Location<'_> {}

impl fmt::Debug for Location<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "⟨rev,{}⟩", self.pos)
        } else {
            write!(f, "⟨{}⟩", self.pos)
        }
    }
}

/// A match from `start` to `end`, in code units of the original subject.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MatchSpan {
    pub start: usize,
    pub end: usize,
}

impl MatchSpan {
    pub fn new(start: usize, end: usize) -> MatchSpan {
        debug_assert!(start <= end);
        MatchSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Per-arena memo tables used by matching.
#[derive(Clone, Default)]
pub(crate) struct Caches {
    pub(crate) minterms: Option<Arc<MintermTable>>,
    // only for lookaround-free nodes: their derivative depends on the character alone
    pub(crate) transitions: HashMap<(NodeId, u16), NodeId>,
    pub(crate) skip: HashMap<NodeId, SkipInfo>,
    pub(crate) viable: HashMap<NodeId, CharSet>,
    pub(crate) scanners: HashMap<Vec<NodeId>, Option<Arc<Scanner>>>,
}

impl Caches {
    pub(crate) fn on_new_pred(&mut self, set: &CharSet) {
        if let Some(m) = &self.minterms {
            if !m.refines(set) {
                self.minterms = None;
                self.transitions.clear();
            }
        }
    }
}

impl Arena {
    /// The minterm table over every predicate interned so far.
    pub fn minterms(&mut self) -> Arc<MintermTable> {
        if self.caches.minterms.is_none() {
            let table = MintermTable::new(self.preds().iter());
            self.caches.minterms = Some(Arc::new(table));
            self.caches.transitions.clear();
        }
        self.caches.minterms.clone().unwrap()
    }

    fn minterm_of(&mut self, c: u16) -> u16 {
        if self.caches.minterms.is_none() {
            self.minterms();
        }
        self.caches.minterms.as_ref().unwrap().classify(c)
    }

    /// `Null_x(R)`.
    pub fn nullable(&mut self, x: Location<'_>, r: NodeId) -> bool {
        match self.null_kind(r) {
            NullKind::Always => return true,
            NullKind::Never => return false,
            NullKind::Contextual => {}
        }
        match *self.node(r) {
            Node::Pred(_) => false,
            Node::Epsilon => true,
            Node::Concat(h, t) => self.nullable(x, h) && self.nullable(x, t),
            Node::Union(_) => {
                let n = self.union_len(r);
                (0..n).any(|i| {
                    let c = self.child(r, i);
                    self.nullable(x, c)
                })
            }
            Node::Inter(_) => {
                let n = self.union_len(r);
                (0..n).all(|i| {
                    let c = self.child(r, i);
                    self.nullable(x, c)
                })
            }
            Node::Loop { body, min, .. } => min == 0 || self.nullable(x, body),
            Node::Complement(b) => !self.nullable(x, b),
            Node::Look { dir, negated, body } => {
                let found = match dir {
                    LookDir::Ahead => self.is_match(x, body),
                    LookDir::Behind => {
                        let rb = self.reverse(body);
                        self.is_match(x.reverse(), rb)
                    }
                };
                found != negated
            }
        }
    }

    fn union_len(&self, r: NodeId) -> usize {
        match self.node(r) {
            Node::Union(cs) | Node::Inter(cs) => cs.len(),
            _ => 0,
        }
    }

    fn child(&self, r: NodeId, i: usize) -> NodeId {
        match self.node(r) {
            Node::Union(cs) | Node::Inter(cs) => cs[i],
            _ => unreachable!(),
        }
    }

    /// `der_x(R)`. `x` must be nonfinal.
    pub fn derive(&mut self, x: Location<'_>, r: NodeId) -> NodeId {
        let c = x.current().expect("derivative taken at a final location");
        if r == NodeId::BOT || r == NodeId::TOP_STAR {
            return r;
        }
        if self.has_lookaround(r) {
            return self.derive_uncached(x, c, r);
        }
        let m = self.minterm_of(c);
        if let Some(&d) = self.caches.transitions.get(&(r, m)) {
            return d;
        }
        let d = self.derive_uncached(x, c, r);
        // the table may have been rebuilt while deriving
        if self.caches.minterms.is_some() {
            let m = self.minterm_of(c);
            self.caches.transitions.insert((r, m), d);
        }
        d
    }

    fn derive_uncached(&mut self, x: Location<'_>, c: u16, r: NodeId) -> NodeId {
        match *self.node(r) {
            Node::Pred(p) => {
                if self.pred(p).contains(c) {
                    NodeId::EPS
                } else {
                    NodeId::BOT
                }
            }
            Node::Epsilon | Node::Look { .. } => NodeId::BOT,
            Node::Union(_) => {
                let n = self.union_len(r);
                let ds: Vec<NodeId> = (0..n)
                    .map(|i| {
                        let ch = self.child(r, i);
                        self.derive(x, ch)
                    })
                    .collect();
                self.mk_union(ds)
            }
            Node::Inter(_) => {
                let n = self.union_len(r);
                let mut ds = Vec::with_capacity(n);
                for i in 0..n {
                    let ch = self.child(r, i);
                    let d = self.derive(x, ch);
                    if d == NodeId::BOT {
                        return NodeId::BOT;
                    }
                    ds.push(d);
                }
                self.mk_inter(ds)
            }
            Node::Complement(b) => {
                let d = self.derive(x, b);
                self.mk_complement(d)
            }
            Node::Concat(h, t) => {
                if matches!(self.node(h), Node::Look { .. }) {
                    return if self.nullable(x, h) { self.derive(x, t) } else { NodeId::BOT };
                }
                let dh = self.derive(x, h);
                let left = self.mk_concat(dh, t);
                if self.nullable(x, h) {
                    let dt = self.derive(x, t);
                    self.mk_union([left, dt])
                } else {
                    left
                }
            }
            Node::Loop { body, min, max } => {
                let rest = self.mk_loop_unchecked(body, min.saturating_sub(1), max.map(|n| n.saturating_sub(1)));
                if min == 0 || self.null_kind(body) == NullKind::Always || !self.nullable(x, body) {
                    let db = self.derive(x, body);
                    self.mk_concat(db, rest)
                } else {
                    let unrolled = self.mk_concat(body, rest);
                    self.derive(x, unrolled)
                }
            }
        }
    }

    /// `IsMatch(x,R)`: some match of `R` starts at `x`.
    pub fn is_match(&mut self, mut x: Location<'_>, mut r: NodeId) -> bool {
        loop {
            if self.nullable(x, r) {
                return true;
            }
            if x.is_final() {
                return false;
            }
            r = self.derive(x, r);
            if r == NodeId::BOT {
                return false;
            }
            x = x.advance();
        }
    }

    /// `MatchEnd(x,R)`: the latest `y` with `x ⟶_R y`, or `None` (the FAIL sentinel).
    pub fn find_match_end<'s>(&mut self, mut x: Location<'s>, mut r: NodeId) -> Option<Location<'s>> {
        let mut last = None;
        loop {
            if self.nullable(x, r) {
                last = Some(x);
            }
            if x.is_final() {
                return last;
            }
            r = self.derive(x, r);
            if r == NodeId::BOT {
                return last;
            }
            x = x.advance();
        }
    }

    /// `AllMatches(x,R)`: positions (in the view of `x`) of every `y` with `x ⟶_R y`, ascending.
    pub fn find_all_match_ends(&mut self, mut x: Location<'_>, mut r: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        loop {
            if self.nullable(x, r) {
                out.push(x.pos());
            }
            if x.is_final() {
                return out;
            }
            r = self.derive(x, r);
            if r == NodeId::BOT {
                return out;
            }
            x = x.advance();
        }
    }

    /// Leftmost-longest match by the two-pass definition: the start is the
    /// latest match end of `⊤*·rev(R)` on the reversed subject, the end is
    /// `MatchEnd` of `R` from that start.
    pub fn ll_match_reference(&mut self, subject: &[u16], r: NodeId) -> Option<MatchSpan> {
        let rr = self.reverse(r);
        let back = self.mk_concat(NodeId::TOP_STAR, rr);
        let start = self.find_match_end(Location::new_reversed(subject, 0), back)?.reverse();
        let end = self
            .find_match_end(start, r)
            .expect("a match start always has a match end");
        Some(MatchSpan::new(start.pos(), end.pos()))
    }
}
