//! Hash-consed regex terms.
//!
//! Every node lives in an [`Arena`] and is identified by a [`NodeId`]. The
//! `mk_*` constructors are the only way to create nodes; they apply the
//! location-independent rewrite rules before interning, so two structurally
//! equal canonical terms always share one id and node equality is id
//! equality.
//!
//! Union and intersection are sets (flattened, deduplicated, sorted by id).
//! Concatenation is a right-nested list whose empty case is `Epsilon`.
//! `⊥` is the empty predicate, `⊤*` is `Loop(⊤, 0, ∞)` and `⊤+` is
//! `Loop(⊤, 1, ∞)`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::charset::CharSet;
use crate::engine::Caches;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const BOT: NodeId = NodeId(0);
    pub const EPS: NodeId = NodeId(1);
    pub const TOP: NodeId = NodeId(2);
    pub const TOP_STAR: NodeId = NodeId(3);
    pub const TOP_PLUS: NodeId = NodeId(4);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PredId(u32);

impl PredId {
    pub const BOT: PredId = PredId(0);
    pub const TOP: PredId = PredId(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LookDir {
    Ahead,
    Behind,
}

impl LookDir {
    pub fn flip(self) -> LookDir {
        match self {
            LookDir::Ahead => LookDir::Behind,
            LookDir::Behind => LookDir::Ahead,
        }
    }
}

/// Location-independent approximation of nullability.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NullKind {
    Always,
    Never,
    Contextual,
}

impl NullKind {
    fn and(self, other: NullKind) -> NullKind {
        use NullKind::*;
        match (self, other) {
            (Never, _) | (_, Never) => Never,
            (Always, Always) => Always,
            _ => Contextual,
        }
    }

    fn or(self, other: NullKind) -> NullKind {
        use NullKind::*;
        match (self, other) {
            (Always, _) | (_, Always) => Always,
            (Never, Never) => Never,
            _ => Contextual,
        }
    }

    fn not(self) -> NullKind {
        match self {
            NullKind::Always => NullKind::Never,
            NullKind::Never => NullKind::Always,
            NullKind::Contextual => NullKind::Contextual,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Pred(PredId),
    Epsilon,
    /// `head · tail`; the head is never itself a concatenation.
    Concat(NodeId, NodeId),
    Union(Box<[NodeId]>),
    Inter(Box<[NodeId]>),
    /// `body{min,max}`, `max = None` meaning unbounded.
    Loop { body: NodeId, min: u32, max: Option<u32> },
    Complement(NodeId),
    Look { dir: LookDir, negated: bool, body: NodeId },
}

#[derive(Clone, Debug)]
struct Entry {
    node: Node,
    null: NullKind,
    size: u32,
    has_look: bool,
}

/// Rejected loop bounds: `min > max`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LoopBoundsError {
    pub min: u32,
    pub max: Option<u32>,
}

impl fmt::Display for LoopBoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            Some(n) => write!(f, "invalid loop bounds {{{},{}}}: lower bound exceeds upper bound", self.min, n),
            None => write!(f, "invalid loop bounds {{{},}}", self.min),
        }
    }
}

/// Interning table for regex nodes and character predicates.
#[derive(Clone)]
pub struct Arena {
    nodes: Vec<Entry>,
    index: HashMap<Node, NodeId>,
    preds: Vec<CharSet>,
    pred_index: HashMap<CharSet, PredId>,
    reversed: HashMap<NodeId, NodeId>,
    pub(crate) caches: Caches,
}

impl Default for Arena {
    fn default() -> Self {
        Arena::new()
    }
}

impl Arena {
    pub fn new() -> Arena {
        let mut a = Arena {
            nodes: Vec::new(),
            index: HashMap::new(),
            preds: Vec::new(),
            pred_index: HashMap::new(),
            reversed: HashMap::new(),
            caches: Caches::default(),
        };
        let bot = a.intern_pred(CharSet::empty());
        let top = a.intern_pred(CharSet::full());
        debug_assert_eq!((bot, top), (PredId::BOT, PredId::TOP));
        let ids = [
            a.intern(Node::Pred(PredId::BOT)),
            a.intern(Node::Epsilon),
            a.intern(Node::Pred(PredId::TOP)),
            a.intern(Node::Loop { body: NodeId::TOP, min: 0, max: None }),
            a.intern(Node::Loop { body: NodeId::TOP, min: 1, max: None }),
        ];
        debug_assert_eq!(
            ids,
            [NodeId::BOT, NodeId::EPS, NodeId::TOP, NodeId::TOP_STAR, NodeId::TOP_PLUS]
        );
        a
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()].node
    }

    pub fn null_kind(&self, id: NodeId) -> NullKind {
        self.nodes[id.index()].null
    }

    pub fn size(&self, id: NodeId) -> u32 {
        self.nodes[id.index()].size
    }

    pub fn has_lookaround(&self, id: NodeId) -> bool {
        self.nodes[id.index()].has_look
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn pred(&self, id: PredId) -> &CharSet {
        &self.preds[id.index()]
    }

    pub fn preds(&self) -> &[CharSet] {
        &self.preds
    }

    /// The predicate of a `Pred` node.
    pub fn pred_of(&self, id: NodeId) -> Option<&CharSet> {
        match self.node(id) {
            Node::Pred(p) => Some(self.pred(*p)),
            _ => None,
        }
    }

    /// Elements of a concatenation list (a single element for non-concat nodes,
    /// none for `Epsilon`).
    pub fn concat_elems(&self, mut id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        loop {
            match self.node(id) {
                Node::Concat(h, t) => {
                    out.push(*h);
                    id = *t;
                }
                Node::Epsilon => return out,
                _ => {
                    out.push(id);
                    return out;
                }
            }
        }
    }

    /// `ψ*` for a predicate ψ.
    pub fn pred_star(&self, id: NodeId) -> Option<&CharSet> {
        match self.node(id) {
            Node::Loop { body, min: 0, max: None } => self.pred_of(*body),
            _ => None,
        }
    }

    pub fn intern_pred(&mut self, set: CharSet) -> PredId {
        if let Some(&p) = self.pred_index.get(&set) {
            return p;
        }
        let p = PredId(self.preds.len() as u32);
        self.caches.on_new_pred(&set);
        self.preds.push(set.clone());
        self.pred_index.insert(set, p);
        p
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let (null, size, has_look) = match &node {
            Node::Pred(_) => (NullKind::Never, 1, false),
            Node::Epsilon => (NullKind::Always, 1, false),
            Node::Concat(h, t) => (
                self.null_kind(*h).and(self.null_kind(*t)),
                1 + self.size(*h) + self.size(*t),
                self.has_lookaround(*h) || self.has_lookaround(*t),
            ),
            Node::Union(cs) => (
                cs.iter().fold(NullKind::Never, |k, &c| k.or(self.null_kind(c))),
                1 + cs.iter().map(|&c| self.size(c)).sum::<u32>(),
                cs.iter().any(|&c| self.has_lookaround(c)),
            ),
            Node::Inter(cs) => (
                cs.iter().fold(NullKind::Always, |k, &c| k.and(self.null_kind(c))),
                1 + cs.iter().map(|&c| self.size(c)).sum::<u32>(),
                cs.iter().any(|&c| self.has_lookaround(c)),
            ),
            Node::Loop { body, min, .. } => (
                if *min == 0 { NullKind::Always } else { self.null_kind(*body) },
                1 + self.size(*body),
                self.has_lookaround(*body),
            ),
            Node::Complement(b) => (self.null_kind(*b).not(), 1 + self.size(*b), self.has_lookaround(*b)),
            Node::Look { body, .. } => (NullKind::Contextual, 1 + self.size(*body), true),
        };
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Entry { node: node.clone(), null, size, has_look });
        self.index.insert(node, id);
        id
    }

    pub fn mk_epsilon(&mut self) -> NodeId {
        NodeId::EPS
    }

    pub fn mk_pred(&mut self, set: CharSet) -> NodeId {
        let p = self.intern_pred(set);
        self.intern(Node::Pred(p))
    }

    pub fn mk_char(&mut self, c: u16) -> NodeId {
        self.mk_pred(CharSet::single(c))
    }

    /// Concatenation of the characters of `s` (which must be BMP-only).
    pub fn mk_literal(&mut self, s: &str) -> NodeId {
        let elems: Vec<NodeId> = s.encode_utf16().map(|c| self.mk_char(c)).collect();
        self.mk_concat_list(&elems)
    }

    pub fn mk_concat(&mut self, head: NodeId, tail: NodeId) -> NodeId {
        if head == NodeId::BOT || tail == NodeId::BOT {
            return NodeId::BOT;
        }
        if head == NodeId::EPS {
            return tail;
        }
        if tail == NodeId::EPS {
            return head;
        }
        if let Node::Concat(a, b) = *self.node(head) {
            let rest = self.mk_concat(b, tail);
            return self.mk_concat(a, rest);
        }
        // ψ*·ψ* = ψ*
        if self.pred_star(head).is_some() {
            let next = match self.node(tail) {
                Node::Concat(h, _) => *h,
                _ => tail,
            };
            if next == head {
                return tail;
            }
        }
        self.intern(Node::Concat(head, tail))
    }

    pub fn mk_concat_list(&mut self, elems: &[NodeId]) -> NodeId {
        elems.iter().rev().fold(NodeId::EPS, |acc, &e| self.mk_concat(e, acc))
    }

    pub fn mk_union<I: IntoIterator<Item = NodeId>>(&mut self, items: I) -> NodeId {
        let items = items.into_iter();
        let mut xs: Vec<NodeId> = Vec::with_capacity(items.size_hint().0 * 2);
        for it in items {
            match self.node(it) {
                Node::Union(cs) => xs.extend(cs.iter().copied()),
                _ => xs.push(it),
            }
        }
        xs.retain(|&x| x != NodeId::BOT);
        if xs.contains(&NodeId::TOP_STAR) {
            return NodeId::TOP_STAR;
        }
        xs.sort_unstable();
        xs.dedup();
        self.merge_loops(&mut xs);
        if xs.len() > 1
            && xs.contains(&NodeId::EPS)
            && xs.iter().any(|&x| x != NodeId::EPS && self.null_kind(x) == NullKind::Always)
        {
            xs.retain(|&x| x != NodeId::EPS);
        }
        if xs.len() > 1 {
            // ψ* absorbs alternatives that only consume characters of ψ
            let stars: Vec<NodeId> = xs.iter().copied().filter(|&x| self.pred_star(x).is_some()).collect();
            for x in stars {
                if !xs.contains(&x) {
                    continue;
                }
                let psi = self.pred_star(x).unwrap().clone();
                xs.retain(|&o| o == x || !self.consumes_within(o, &psi));
            }
        }
        match xs.len() {
            0 => NodeId::BOT,
            1 => xs[0],
            _ => self.intern(Node::Union(xs.into_boxed_slice())),
        }
    }

    // R{l,m} | R{k,n} → R{l,max(m,n)} when l ≤ k ≤ m; a non-loop R counts as R{1,1}
    fn merge_loops(&mut self, xs: &mut Vec<NodeId>) {
        let view = |a: &Arena, x: NodeId| match *a.node(x) {
            Node::Loop { body, min, max } => (body, min, max),
            _ => (x, 1, Some(1)),
        };
        'outer: loop {
            for i in 0..xs.len() {
                for j in (i + 1)..xs.len() {
                    let (b1, l1, h1) = view(self, xs[i]);
                    let (b2, l2, h2) = view(self, xs[j]);
                    if b1 != b2 {
                        continue;
                    }
                    let ((l, m), (k, n)) = if l1 <= l2 { ((l1, h1), (l2, h2)) } else { ((l2, h2), (l1, h1)) };
                    if m.is_some_and(|m| k > m) {
                        continue;
                    }
                    let hi = match (m, n) {
                        (Some(m), Some(n)) => Some(m.max(n)),
                        _ => None,
                    };
                    let merged = self.mk_loop_unchecked(b1, l, hi);
                    xs.remove(j);
                    xs[i] = merged;
                    xs.sort_unstable();
                    xs.dedup();
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// True when every match of `id` only consumes characters of `psi`.
    fn consumes_within(&self, id: NodeId, psi: &CharSet) -> bool {
        match self.node(id) {
            Node::Pred(p) => self.pred(*p).is_subset(psi),
            Node::Epsilon | Node::Look { .. } => true,
            Node::Concat(h, t) => self.consumes_within(*h, psi) && self.consumes_within(*t, psi),
            Node::Union(cs) => cs.iter().all(|&c| self.consumes_within(c, psi)),
            Node::Inter(cs) => cs.iter().any(|&c| self.consumes_within(c, psi)),
            Node::Loop { body, .. } => self.consumes_within(*body, psi),
            Node::Complement(_) => false,
        }
    }

    pub fn mk_inter<I: IntoIterator<Item = NodeId>>(&mut self, items: I) -> NodeId {
        let items = items.into_iter();
        let mut xs: Vec<NodeId> = Vec::with_capacity(items.size_hint().0 * 2);
        for it in items {
            match self.node(it) {
                Node::Inter(cs) => xs.extend(cs.iter().copied()),
                _ => xs.push(it),
            }
        }
        if xs.contains(&NodeId::BOT) {
            return NodeId::BOT;
        }
        xs.retain(|&x| x != NodeId::TOP_STAR);
        xs.sort_unstable();
        xs.dedup();
        if xs.contains(&NodeId::EPS) {
            if xs.iter().any(|&x| self.null_kind(x) == NullKind::Never) {
                return NodeId::BOT;
            }
            xs.retain(|&x| x == NodeId::EPS || self.null_kind(x) != NullKind::Always);
        }
        if xs.len() > 1
            && xs.contains(&NodeId::TOP_PLUS)
            && xs.iter().any(|&x| x != NodeId::TOP_PLUS && self.null_kind(x) == NullKind::Never)
        {
            xs.retain(|&x| x != NodeId::TOP_PLUS);
        }
        match xs.len() {
            0 => NodeId::TOP_STAR,
            1 => xs[0],
            _ => self.intern(Node::Inter(xs.into_boxed_slice())),
        }
    }

    pub fn mk_complement(&mut self, body: NodeId) -> NodeId {
        match body {
            NodeId::TOP_STAR => return NodeId::BOT,
            NodeId::BOT => return NodeId::TOP_STAR,
            NodeId::EPS => return NodeId::TOP_PLUS,
            NodeId::TOP_PLUS => return NodeId::EPS,
            _ => {}
        }
        if let Node::Complement(inner) = *self.node(body) {
            return inner;
        }
        self.intern(Node::Complement(body))
    }

    pub fn mk_loop(&mut self, body: NodeId, min: u32, max: Option<u32>) -> Result<NodeId, LoopBoundsError> {
        if max.is_some_and(|n| min > n) {
            return Err(LoopBoundsError { min, max });
        }
        Ok(self.mk_loop_unchecked(body, min, max))
    }

    pub(crate) fn mk_loop_unchecked(&mut self, body: NodeId, min: u32, max: Option<u32>) -> NodeId {
        debug_assert!(max.is_none_or(|n| min <= n));
        if max == Some(0) {
            return NodeId::EPS;
        }
        if min == 1 && max == Some(1) {
            return body;
        }
        match body {
            NodeId::BOT => return if min == 0 { NodeId::EPS } else { NodeId::BOT },
            NodeId::EPS => return NodeId::EPS,
            _ => {}
        }
        match *self.node(body) {
            Node::Look { .. } => return if min == 0 { NodeId::EPS } else { body },
            // (R*){m,n} = R* for n ≥ 1
            Node::Loop { min: 0, max: None, .. } => return body,
            _ => {}
        }
        self.intern(Node::Loop { body, min, max })
    }

    pub fn mk_star(&mut self, body: NodeId) -> NodeId {
        self.mk_loop_unchecked(body, 0, None)
    }

    pub fn mk_look(&mut self, dir: LookDir, negated: bool, body: NodeId) -> NodeId {
        if body == NodeId::BOT {
            return if negated { NodeId::EPS } else { NodeId::BOT };
        }
        if self.null_kind(body) == NullKind::Always {
            return if negated { NodeId::BOT } else { NodeId::EPS };
        }
        self.intern(Node::Look { dir, negated, body })
    }

    /// The reversal `rev(R)`; `rev(rev(R)) = R`.
    pub fn reverse(&mut self, id: NodeId) -> NodeId {
        if let Some(&r) = self.reversed.get(&id) {
            return r;
        }
        let r = match self.node(id).clone() {
            Node::Pred(_) | Node::Epsilon => id,
            Node::Concat(..) => {
                let elems = self.concat_elems(id);
                let revs: Vec<NodeId> = elems.iter().rev().map(|&e| self.reverse(e)).collect();
                self.mk_concat_list(&revs)
            }
            Node::Union(cs) => {
                let revs: Vec<NodeId> = cs.iter().map(|&c| self.reverse(c)).collect();
                self.mk_union(revs)
            }
            Node::Inter(cs) => {
                let revs: Vec<NodeId> = cs.iter().map(|&c| self.reverse(c)).collect();
                self.mk_inter(revs)
            }
            Node::Loop { body, min, max } => {
                let b = self.reverse(body);
                self.mk_loop_unchecked(b, min, max)
            }
            Node::Complement(b) => {
                let b = self.reverse(b);
                self.mk_complement(b)
            }
            Node::Look { dir, negated, body } => {
                let b = self.reverse(body);
                self.mk_look(dir.flip(), negated, b)
            }
        };
        self.reversed.insert(id, r);
        self.reversed.insert(r, id);
        r
    }

    /// All predicates occurring in the term (including lookaround bodies).
    pub fn collect_preds(&self, root: NodeId) -> Vec<PredId> {
        let mut seen = hashbrown::HashSet::new();
        let mut preds = Vec::new();
        let mut stack = alloc::vec![root];
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            match self.node(id) {
                Node::Pred(p) => {
                    if !preds.contains(p) {
                        preds.push(*p);
                    }
                }
                Node::Epsilon => {}
                Node::Concat(h, t) => {
                    stack.push(*h);
                    stack.push(*t);
                }
                Node::Union(cs) | Node::Inter(cs) => stack.extend(cs.iter().copied()),
                Node::Loop { body, .. } | Node::Complement(body) | Node::Look { body, .. } => stack.push(*body),
            }
        }
        preds
    }
}
