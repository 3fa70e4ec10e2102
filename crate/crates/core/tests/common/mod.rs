#![allow(dead_code)]

use locre_core::{Arena, CharSet, LookDir, NodeId};
use proptest::prelude::*;

/// Regex syntax tree built without any rewriting.
#[derive(Clone, Debug)]
pub enum Tree {
    Pred(CharSet),
    Eps,
    Concat(Box<Tree>, Box<Tree>),
    Union(Box<Tree>, Box<Tree>),
    Inter(Box<Tree>, Box<Tree>),
    Compl(Box<Tree>),
    Loop(Box<Tree>, u32, Option<u32>),
    Look(LookDir, bool, Box<Tree>),
}

pub const ALPHABET: [u16; 3] = [b'a' as u16, b'b' as u16, b'\n' as u16];

fn leaf() -> impl Strategy<Value = Tree> {
    prop_oneof![
        4 => Just(Tree::Pred(CharSet::single(b'a' as u16))),
        3 => Just(Tree::Pred(CharSet::single(b'b' as u16))),
        2 => Just(Tree::Pred(CharSet::single(b'\n' as u16))),
        2 => Just(Tree::Pred(CharSet::full())),
        1 => Just(Tree::Pred(CharSet::from_chars([b'a' as u16, b'b' as u16]))),
        1 => Just(Tree::Pred(CharSet::empty())),
        1 => Just(Tree::Eps),
    ]
}

fn bounds() -> impl Strategy<Value = (u32, Option<u32>)> {
    (0u32..=3, prop::option::weighted(0.6, 0u32..=3)).prop_map(|(m, n)| match n {
        Some(n) if n < m => (n, Some(m)),
        Some(0) => (0, Some(1)),
        other => (m, other),
    })
}

/// Trees of depth at most `depth` over {a, b, \n, ⊤} with every operator.
pub fn tree(depth: u32) -> impl Strategy<Value = Tree> {
    leaf().prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Concat(a.into(), b.into())),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Union(a.into(), b.into())),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Inter(a.into(), b.into())),
            2 => inner.clone().prop_map(|a| Tree::Compl(a.into())),
            2 => (inner.clone(), bounds()).prop_map(|(a, (m, n))| Tree::Loop(a.into(), m, n)),
            2 => (inner, any::<bool>(), any::<bool>()).prop_map(|(a, ahead, neg)| {
                let dir = if ahead { LookDir::Ahead } else { LookDir::Behind };
                Tree::Look(dir, neg, a.into())
            }),
        ]
    })
}

pub fn subject(max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(prop::sample::select(ALPHABET.to_vec()), 0..=max_len)
}

pub fn build(a: &mut Arena, t: &Tree) -> NodeId {
    match t {
        Tree::Pred(p) => a.mk_pred(p.clone()),
        Tree::Eps => NodeId::EPS,
        Tree::Concat(x, y) => {
            let (x, y) = (build(a, x), build(a, y));
            a.mk_concat(x, y)
        }
        Tree::Union(x, y) => {
            let (x, y) = (build(a, x), build(a, y));
            a.mk_union([x, y])
        }
        Tree::Inter(x, y) => {
            let (x, y) = (build(a, x), build(a, y));
            a.mk_inter([x, y])
        }
        Tree::Compl(x) => {
            let x = build(a, x);
            a.mk_complement(x)
        }
        Tree::Loop(x, m, n) => {
            let x = build(a, x);
            a.mk_loop(x, *m, *n).unwrap()
        }
        Tree::Look(d, neg, x) => {
            let x = build(a, x);
            a.mk_look(*d, *neg, x)
        }
    }
}

fn all_from(n: usize, i: usize) -> u64 {
    ((1u64 << (n + 1)) - 1) & !((1u64 << i) - 1)
}

/// Match ends of `t` from `i` by direct structural recursion on the raw tree.
pub fn eval(t: &Tree, s: &[u16], i: usize) -> u64 {
    let n = s.len();
    let step = |mask: u64, f: &dyn Fn(usize) -> u64| (i..=n).filter(|z| mask >> z & 1 == 1).fold(0, |acc, z| acc | f(z));
    match t {
        Tree::Pred(p) => {
            if i < n && p.contains(s[i]) {
                1 << (i + 1)
            } else {
                0
            }
        }
        Tree::Eps => 1 << i,
        Tree::Concat(x, y) => step(eval(x, s, i), &|z| eval(y, s, z)),
        Tree::Union(x, y) => eval(x, s, i) | eval(y, s, i),
        Tree::Inter(x, y) => eval(x, s, i) & eval(y, s, i),
        Tree::Compl(x) => all_from(n, i) & !eval(x, s, i),
        Tree::Loop(x, m, max) => {
            let (m, limit) = (*m as usize, max.map_or(usize::MAX, |v| v as usize));
            let mut cur: u64 = 1 << i;
            let mut seen_at_or_past_min = 0u64;
            let mut k = 0usize;
            // iterate until the reachable set at or beyond the minimum stabilizes
            loop {
                if k >= m {
                    let before = seen_at_or_past_min;
                    seen_at_or_past_min |= cur;
                    if k > m + n + 1 && before == seen_at_or_past_min {
                        break;
                    }
                }
                if k == limit || cur == 0 {
                    break;
                }
                cur = step(cur, &|z| eval(x, s, z));
                k += 1;
            }
            seen_at_or_past_min
        }
        Tree::Look(LookDir::Ahead, neg, x) => {
            if (eval(x, s, i) != 0) != *neg {
                1 << i
            } else {
                0
            }
        }
        Tree::Look(LookDir::Behind, neg, x) => {
            if (0..=i).any(|z| eval(x, s, z) >> i & 1 == 1) != *neg {
                1 << i
            } else {
                0
            }
        }
    }
}

pub fn mask_of(positions: &[usize]) -> u64 {
    positions.iter().fold(0, |m, &p| m | 1 << p)
}

pub fn all_strings(alphabet: &[u16], max_len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<u16>> = layer
            .iter()
            .flat_map(|s: &Vec<u16>| {
                alphabet.iter().map(move |&c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn u(s: &str) -> Vec<u16> {
    s.encode_utf16().collect()
}
