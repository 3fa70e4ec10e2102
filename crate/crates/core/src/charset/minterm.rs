use alloc::vec::Vec;

use super::CharSet;

/// Alphabet compression: the coarsest partition of the BMP that refines
/// every predicate of a pattern.
#[derive(Clone, Debug)]
pub struct MintermTable {
    minterms: Vec<CharSet>,
    ascii: [u16; 128],
    // sorted segment starts with the minterm index covering each segment
    bounds: Vec<u16>,
    classes: Vec<u16>,
}

impl MintermTable {
    /// Builds the minimal partition refining `preds` (⊤ is implied).
    pub fn new<'a, I: IntoIterator<Item = &'a CharSet>>(preds: I) -> MintermTable {
        let mut blocks: Vec<CharSet> = alloc::vec![CharSet::full()];
        for p in preds {
            if p.is_empty() || p.is_full() {
                continue;
            }
            let mut next = Vec::with_capacity(blocks.len() + 1);
            for b in blocks {
                let inside = b.and(p);
                if inside.is_empty() {
                    next.push(b);
                    continue;
                }
                let outside = b.minus(p);
                if outside.is_empty() {
                    next.push(b);
                } else {
                    next.push(inside);
                    next.push(outside);
                }
            }
            blocks = next;
        }
        blocks.sort_by_key(|b| b.min_char());

        let mut segs: Vec<(u16, u16)> = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            for &(a, _) in b.ranges() {
                segs.push((a, i as u16));
            }
        }
        segs.sort_unstable();
        let bounds = segs.iter().map(|s| s.0).collect::<Vec<_>>();
        let classes = segs.iter().map(|s| s.1).collect::<Vec<_>>();

        let mut table = MintermTable { minterms: blocks, ascii: [0; 128], bounds, classes };
        for c in 0..128u16 {
            table.ascii[c as usize] = table.classify_slow(c);
        }
        table
    }

    pub fn len(&self) -> usize {
        self.minterms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minterms.is_empty()
    }

    pub fn minterms(&self) -> &[CharSet] {
        &self.minterms
    }

    pub fn get(&self, idx: usize) -> &CharSet {
        &self.minterms[idx]
    }

    /// Index of the minterm containing `c`.
    #[inline]
    pub fn classify(&self, c: u16) -> u16 {
        if c < 128 {
            self.ascii[c as usize]
        } else {
            self.classify_slow(c)
        }
    }

    fn classify_slow(&self, c: u16) -> u16 {
        let i = self.bounds.partition_point(|&b| b <= c);
        self.classes[i - 1]
    }

    /// True when `p` is a union of whole minterms of this table.
    pub fn refines(&self, p: &CharSet) -> bool {
        self.minterms.iter().all(|m| m.is_subset(p) || m.is_disjoint(p))
    }
}
