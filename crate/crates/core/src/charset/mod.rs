//! Character predicates over the Basic Multilingual Plane.
//!
//! A [`CharSet`] is a canonical, sorted list of disjoint and non-adjacent
//! inclusive ranges of 16-bit code points. Two sets with the same
//! denotation always have the same representation, so structural equality
//! is semantic equality and sets can be used directly as hash keys.

mod minterm;
mod tables;

use alloc::vec::Vec;
use core::fmt;

pub use minterm::MintermTable;

/// Largest code point of the alphabet.
pub const MAX_CHAR: u16 = 0xFFFF;

/// A set of BMP code points, kept in canonical interval form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CharSet {
    ranges: Vec<(u16, u16)>,
}

impl CharSet {
    /// The empty predicate, ⊥.
    pub fn empty() -> CharSet {
        CharSet { ranges: Vec::new() }
    }

    /// The full predicate, ⊤.
    pub fn full() -> CharSet {
        CharSet { ranges: alloc::vec![(0, MAX_CHAR)] }
    }

    pub fn single(c: u16) -> CharSet {
        CharSet { ranges: alloc::vec![(c, c)] }
    }

    pub fn range(lo: u16, hi: u16) -> CharSet {
        if lo > hi {
            return CharSet::empty();
        }
        CharSet { ranges: alloc::vec![(lo, hi)] }
    }

    /// Builds a set from arbitrary (possibly overlapping, unsorted) ranges.
    pub fn from_ranges<I: IntoIterator<Item = (u16, u16)>>(ranges: I) -> CharSet {
        let mut rs: Vec<(u16, u16)> = ranges.into_iter().filter(|&(a, b)| a <= b).collect();
        rs.sort_unstable();
        let mut out: Vec<(u16, u16)> = Vec::with_capacity(rs.len());
        for (a, b) in rs {
            match out.last_mut() {
                Some(last) if u32::from(a) <= u32::from(last.1) + 1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        CharSet { ranges: out }
    }

    pub fn from_chars<I: IntoIterator<Item = u16>>(chars: I) -> CharSet {
        CharSet::from_ranges(chars.into_iter().map(|c| (c, c)))
    }

    /// `\d`: Unicode decimal digits.
    pub fn digit() -> CharSet {
        CharSet::from_static(tables::DIGIT)
    }

    /// `\w`: Unicode word characters.
    pub fn word() -> CharSet {
        CharSet::from_static(tables::WORD)
    }

    /// `\s`: Unicode whitespace.
    pub fn space() -> CharSet {
        CharSet::from_static(tables::SPACE)
    }

    /// `.`: everything except `\n`.
    pub fn dot() -> CharSet {
        CharSet::single(b'\n' as u16).not()
    }

    fn from_static(t: &[(u16, u16)]) -> CharSet {
        CharSet::from_ranges(t.iter().copied())
    }

    pub fn ranges(&self) -> &[(u16, u16)] {
        &self.ranges
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    /// Satisfiability: the denotation is non-empty.
    pub fn is_sat(&self) -> bool {
        !self.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.ranges.len() == 1 && self.ranges[0] == (0, MAX_CHAR)
    }

    /// Number of code points in the denotation.
    pub fn len(&self) -> u32 {
        self.ranges.iter().map(|&(a, b)| u32::from(b) - u32::from(a) + 1).sum()
    }

    pub fn contains(&self, c: u16) -> bool {
        // binary search on range starts
        let idx = self.ranges.partition_point(|&(a, _)| a <= c);
        idx > 0 && self.ranges[idx - 1].1 >= c
    }

    /// Returns the only member when the set is a singleton.
    pub fn as_single(&self) -> Option<u16> {
        match self.ranges[..] {
            [(a, b)] if a == b => Some(a),
            _ => None,
        }
    }

    pub fn min_char(&self) -> Option<u16> {
        self.ranges.first().map(|r| r.0)
    }

    pub fn chars(&self) -> impl Iterator<Item = u16> + '_ {
        self.ranges.iter().flat_map(|&(a, b)| a..=b)
    }

    pub fn or(&self, other: &CharSet) -> CharSet {
        if self.is_empty() || other.is_full() {
            return other.clone();
        }
        if other.is_empty() || self.is_full() {
            return self.clone();
        }
        // merge two sorted, disjoint range lists
        let (xs, ys) = (&self.ranges, &other.ranges);
        let mut out: Vec<(u16, u16)> = Vec::with_capacity(xs.len() + ys.len());
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            let next = if j == ys.len() || (i < xs.len() && xs[i].0 <= ys[j].0) {
                i += 1;
                xs[i - 1]
            } else {
                j += 1;
                ys[j - 1]
            };
            match out.last_mut() {
                Some(last) if u32::from(next.0) <= u32::from(last.1) + 1 => last.1 = last.1.max(next.1),
                _ => out.push(next),
            }
        }
        CharSet { ranges: out }
    }

    pub fn and(&self, other: &CharSet) -> CharSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ranges.len() && j < other.ranges.len() {
            let (a1, b1) = self.ranges[i];
            let (a2, b2) = other.ranges[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo <= hi {
                out.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        CharSet { ranges: out }
    }

    pub fn not(&self) -> CharSet {
        let mut out = Vec::with_capacity(self.ranges.len() + 1);
        let mut next: u32 = 0;
        for &(a, b) in &self.ranges {
            if u32::from(a) > next {
                out.push((next as u16, a - 1));
            }
            next = u32::from(b) + 1;
        }
        if next <= u32::from(MAX_CHAR) {
            out.push((next as u16, MAX_CHAR));
        }
        CharSet { ranges: out }
    }

    /// `self ∧ ¬other`, the class subtraction `[base-[sub]]`.
    pub fn minus(&self, other: &CharSet) -> CharSet {
        self.and(&other.not())
    }

    pub fn is_subset(&self, other: &CharSet) -> bool {
        self.minus(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &CharSet) -> bool {
        self.and(other).is_empty()
    }
}

impl fmt::Debug for CharSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharSet[")?;
        for (i, &(a, b)) in self.ranges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if a == b {
                write!(f, "{:04X}", a)?;
            } else {
                write!(f, "{:04X}-{:04X}", a, b)?;
            }
        }
        write!(f, "]")
    }
}
