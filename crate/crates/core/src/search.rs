//! Leftmost-longest search.
//!
//! A new top-level branch of the pattern is started at every position. Each
//! branch is derived independently and remembers the last position where
//! it was nullable. Branches are ordered by start; the leftmost branch that
//! dies (or survives to the end of input) with a recorded nullable position
//! decides the match.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::ast::{Arena, NodeId, NullKind};
use crate::charset::CharSet;
use crate::engine::{Location, MatchSpan};
use crate::startset::Scanner;

/// A live match attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TopLevelBranch {
    pub state: NodeId,
    pub start: usize,
    pub last_nullable: Option<usize>,
}

impl TopLevelBranch {
    fn span(&self) -> Option<MatchSpan> {
        self.last_nullable.map(|end| MatchSpan::new(self.start, end))
    }
}

impl Arena {
    /// The POSIX match of `root` with the least start `≥ from`.
    ///
    /// Lookarounds see the whole subject, including the part before `from`.
    pub fn find_posix(&mut self, root: NodeId, subject: &[u16], from: usize, skip: bool) -> Option<MatchSpan> {
        let n = subject.len();
        if from > n || root == NodeId::BOT {
            return None;
        }
        // spawning can be skipped over characters that kill the root immediately
        let spawn_set = if self.null_kind(root) == NullKind::Never { Some(self.viable_chars(root)) } else { None };
        let mut branches: Vec<TopLevelBranch> = Vec::new();
        let mut spawning = true;
        let mut key: Vec<NodeId> = Vec::new();
        let mut p = from;
        loop {
            // a spawning search can only skip when the root has a viable set
            if skip && p < n && (!spawning || spawn_set.is_some()) {
                let spawn = spawn_set.as_ref().filter(|_| spawning).map(|set| (root, set));
                if let Some(q) = self.skip_target(&branches, spawn, subject, p, &mut key) {
                    p = q;
                }
            }
            let x = Location::new(subject, p);
            if spawning && !branches.iter().any(|b| b.state == root) {
                branches.push(TopLevelBranch { state: root, start: p, last_nullable: None });
            }
            for b in branches.iter_mut() {
                if b.state != NodeId::BOT && self.nullable(x, b.state) {
                    b.last_nullable = Some(p);
                }
            }
            // a branch with a match beats every branch started after it
            if let Some(k) = branches.iter().position(|b| b.last_nullable.is_some()) {
                branches.truncate(k + 1);
                spawning = false;
            }
            if p == n {
                return branches.iter().find_map(|b| b.span());
            }
            for b in branches.iter_mut() {
                if b.state != NodeId::BOT {
                    b.state = self.derive(x, b.state);
                }
            }
            prune(&mut branches);
            match branches.first() {
                Some(b) if b.state == NodeId::BOT => return b.span(),
                Some(_) => {}
                None if !spawning => return None,
                None => {}
            }
            p += 1;
        }
    }

    // Next position where anything can change, if every live branch is skippable.
    // `spawn` is the root and its viable set while new branches are still started.
    fn skip_target(
        &mut self,
        branches: &[TopLevelBranch],
        spawn: Option<(NodeId, &CharSet)>,
        subject: &[u16],
        p: usize,
        key: &mut Vec<NodeId>,
    ) -> Option<usize> {
        key.clear();
        for b in branches {
            if b.state == NodeId::BOT {
                continue;
            }
            if self.null_kind(b.state) == NullKind::Contextual || !self.is_skippable(b.state) {
                return None;
            }
            key.push(b.state);
        }
        key.sort_unstable();
        key.dedup();
        if let Some((root, _)) = spawn {
            // BOT never occurs among live states, so it tags the spawn set
            key.push(NodeId::BOT);
            key.push(root);
        }
        let scanner = match self.caches.scanners.get(key.as_slice()) {
            Some(s) => s.clone(),
            None => {
                let mut set = spawn.map(|(_, set)| set.clone()).unwrap_or_default();
                for &s in key.iter().take_while(|&&s| s != NodeId::BOT) {
                    set = set.or(&self.startset(s));
                }
                let sc = if set.is_full() { None } else { Some(Arc::new(Scanner::new(&set))) };
                self.caches.scanners.insert(key.clone(), sc.clone());
                sc
            }
        };
        scanner.map(|s| s.find(subject, p))
    }

    /// Every match, left to right: after reporting `(i,j)` the search
    /// resumes at `max(j, i+1)`.
    pub fn find_all_spans(&mut self, root: NodeId, subject: &[u16], skip: bool) -> Vec<MatchSpan> {
        let mut out = Vec::new();
        let mut cursor = 0;
        while cursor <= subject.len() {
            match self.find_posix(root, subject, cursor, skip) {
                Some(m) => {
                    out.push(m);
                    cursor = m.end.max(m.start + 1);
                }
                None => break,
            }
        }
        out
    }
}

// Drop dead branches without a match and later duplicates of a live state.
fn prune(branches: &mut Vec<TopLevelBranch>) {
    let mut kept = 0;
    for k in 0..branches.len() {
        let b = branches[k];
        let keep = if b.state == NodeId::BOT {
            b.last_nullable.is_some()
        } else {
            // identical states have identical futures; the earlier start wins
            // unless only the later one holds a match
            b.last_nullable.is_some() || !branches[..kept].iter().any(|e| e.state == b.state)
        };
        if keep {
            branches[kept] = b;
            kept += 1;
        }
    }
    branches.truncate(kept);
}
