//! Smart-constructor rewrites, hash-consing and printing.

mod common;

use common::*;
use locre_core::oracle::{oracle_all_matches, OracleConfig};
use locre_core::{parse, Arena, CharSet, Node, NodeId};
use proptest::prelude::*;

/// Both sides must have the same match set on every string of length ≤ 5 over {a, b, \n}.
fn same_language(a: &Arena, lhs: &Tree, rhs: NodeId) {
    let cfg = OracleConfig::default();
    for s in cfg.all_strings() {
        let got = oracle_all_matches(a, &cfg, &s, rhs).unwrap();
        let want: Vec<(usize, usize)> = (0..=s.len())
            .flat_map(|i| {
                let e = eval(lhs, &s, i);
                (i..=s.len()).filter(move |j| e >> j & 1 == 1).map(move |j| (i, j))
            })
            .collect();
        let got: Vec<(usize, usize)> = got.iter().map(|m| (m.start, m.end)).collect();
        assert_eq!(got, want, "{:?} on {:?}", lhs, s);
    }
}

fn p(c: u8) -> Tree {
    Tree::Pred(CharSet::single(c as u16))
}

fn b<T>(t: T) -> Box<T> {
    Box::new(t)
}

#[test]
fn figure1_rules_are_sound_and_applied() {
    let top = Tree::Pred(CharSet::full());
    let bot = Tree::Pred(CharSet::empty());
    let top_star = Tree::Loop(b(top.clone()), 0, None);
    let top_plus = Tree::Loop(b(top.clone()), 1, None);
    let r = Tree::Concat(b(p(b'a')), b(Tree::Loop(b(p(b'b')), 0, None)));
    let cases: Vec<(Tree, NodeId)> = {
        let mut a = Arena::new();
        let rid = build(&mut a, &r);
        vec![
            (Tree::Compl(b(top_star.clone())), NodeId::BOT),
            (Tree::Compl(b(bot.clone())), NodeId::TOP_STAR),
            (Tree::Compl(b(Tree::Compl(b(r.clone())))), rid),
            (Tree::Compl(b(Tree::Eps)), NodeId::TOP_PLUS),
            (Tree::Compl(b(top_plus.clone())), NodeId::EPS),
            (Tree::Concat(b(bot.clone()), b(r.clone())), NodeId::BOT),
            (Tree::Concat(b(r.clone()), b(bot.clone())), NodeId::BOT),
            (Tree::Concat(b(Tree::Eps), b(r.clone())), rid),
            (Tree::Concat(b(r.clone()), b(Tree::Eps)), rid),
            (Tree::Loop(b(bot.clone()), 0, None), NodeId::EPS),
            (Tree::Union(b(top_star.clone()), b(r.clone())), NodeId::TOP_STAR),
            (Tree::Inter(b(top_star.clone()), b(r.clone())), rid),
            (Tree::Union(b(bot.clone()), b(r.clone())), rid),
            (Tree::Inter(b(bot.clone()), b(r.clone())), NodeId::BOT),
            (Tree::Loop(b(r.clone()), 1, Some(1)), rid),
            (Tree::Loop(b(r.clone()), 0, Some(0)), NodeId::EPS),
        ]
    };
    let mut a = Arena::new();
    for (lhs, rhs) in cases {
        let built = build(&mut a, &lhs);
        assert_eq!(built, rhs, "{:?}", lhs);
        same_language(&a, &lhs, built);
    }
}

#[test]
fn subsumption_rules() {
    let mut a = Arena::new();
    let dot = CharSet::dot();
    // ψ{0,∞} | ψ{1,1} → ψ{0,∞}
    let lhs = Tree::Union(b(Tree::Loop(b(Tree::Pred(dot.clone())), 0, None)), b(Tree::Pred(dot.clone())));
    let built = build(&mut a, &lhs);
    assert_eq!(a.pred_star(built), Some(&dot));
    same_language(&a, &lhs, built);
    // R{l,m} | R{k,n} → R{l,max(m,n)} when l ≤ k ≤ m
    let ab = Tree::Concat(b(p(b'a')), b(p(b'b')));
    let lhs = Tree::Union(b(Tree::Loop(b(ab.clone()), 0, Some(2))), b(Tree::Loop(b(ab.clone()), 1, Some(3))));
    let built = build(&mut a, &lhs);
    assert!(matches!(a.node(built), Node::Loop { min: 0, max: Some(3), .. }));
    same_language(&a, &lhs, built);
    // k > m: no merge
    let lhs = Tree::Union(b(Tree::Loop(b(ab.clone()), 0, Some(1))), b(Tree::Loop(b(ab.clone()), 3, Some(3))));
    let built = build(&mut a, &lhs);
    assert!(matches!(a.node(built), Node::Union(_)));
    // (.*ab.*|.*) → .*
    let built = parse(&mut a, ".*ab.*|.*").unwrap();
    assert_eq!(built, parse(&mut a, ".*").unwrap());
    // a complement is never absorbed
    let built = parse(&mut a, ".*|~a").unwrap();
    assert!(matches!(a.node(built), Node::Union(_)));
}

#[test]
fn null_kind_examples() {
    let mut a = Arena::new();
    let star = parse(&mut a, "a*").unwrap();
    assert_eq!(a.null_kind(star), locre_core::NullKind::Always);
    let plus = parse(&mut a, "~()").unwrap();
    assert_eq!(plus, NodeId::TOP_PLUS);
    assert_eq!(a.null_kind(plus), locre_core::NullKind::Never);
    let wb = parse(&mut a, "\\b").unwrap();
    assert_eq!(a.null_kind(wb), locre_core::NullKind::Contextual);
}

proptest! {
    #[test]
    fn union_and_inter_are_sets(t1 in tree(2), t2 in tree(2), t3 in tree(2)) {
        let mut a = Arena::new();
        let (x, y, z) = (build(&mut a, &t1), build(&mut a, &t2), build(&mut a, &t3));
        prop_assert_eq!(a.mk_union([x, y, z]), a.mk_union([z, x, y]));
        prop_assert_eq!(a.mk_union([x, x]), x);
        let yz = a.mk_union([y, z]);
        let xy = a.mk_union([x, y]);
        prop_assert_eq!(a.mk_union([x, yz]), a.mk_union([xy, z]));
        prop_assert_eq!(a.mk_inter([x, y, z]), a.mk_inter([y, z, x]));
        prop_assert_eq!(a.mk_inter([x, x]), x);
    }

    #[test]
    fn hash_consing(t in tree(3)) {
        let mut a = Arena::new();
        let x = build(&mut a, &t);
        let count = a.node_count();
        prop_assert_eq!(build(&mut a, &t), x);
        prop_assert_eq!(a.node_count(), count);
    }

    #[test]
    fn printer_round_trips(t in tree(3)) {
        let mut a = Arena::new();
        let x = build(&mut a, &t);
        let text = a.to_pattern(x);
        let back = parse(&mut a, &text);
        prop_assert_eq!(back, Ok(x), "{}", text);
    }
}

#[test]
fn parse_print_parse_corpus() {
    let atoms = ["a", "b", "\\n", ".", "[a-c]", "\\d", "\\w", "()", "[\\s\\S]", "\\b", "^", "$", "\\Z", "é", "\\&"];
    let ops: [fn(&str, &str) -> String; 8] = [
        |x, y| format!("{x}{y}"),
        |x, y| format!("{x}|{y}"),
        |x, y| format!("{x}&{y}"),
        |x, _| format!("~({x})"),
        |x, y| format!("({x}){{1,3}}{y}"),
        |x, y| format!("(?={x}){y}"),
        |x, y| format!("(?<!{x}){y}*"),
        |x, y| format!("({x}|{y})+"),
    ];
    let mut n = 0;
    for (i, x) in atoms.iter().enumerate() {
        for (k, op) in ops.iter().enumerate().flat_map(|(k, op)| [(k, op), (k + 5, op)]) {
            let y = atoms[(i * 7 + k * 3) % atoms.len()];
            let pat = op(x, y);
            let pat = if n % 3 == 0 { ops[(k + 1) % 8](&pat, x) } else { pat };
            let mut a = Arena::new();
            let r = parse(&mut a, &pat).unwrap_or_else(|e| panic!("{}: {}", pat, e));
            let text = a.to_pattern(r);
            assert_eq!(parse(&mut a, &text), Ok(r), "{} printed as {}", pat, text);
            n += 1;
        }
    }
    assert!(n >= 200);
}
