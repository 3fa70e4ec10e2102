//! Concrete syntax for regex nodes.
//!
//! The output parses back to the same node id. `⊤` prints as `[\s\S]`,
//! `⊥` as `[^\s\S]` and `ε` as `()`.

use alloc::string::String;
use core::fmt::Write;

use crate::ast::{Arena, LookDir, Node, NodeId};
use crate::charset::CharSet;

// precedence levels, loosest first
const UNION: u8 = 0;
const INTER: u8 = 1;
const CONCAT: u8 = 2;
const ITEM: u8 = 3;
const ATOM: u8 = 4;

impl Arena {
    pub fn to_pattern(&self, r: NodeId) -> String {
        let mut out = String::new();
        self.write_node(&mut out, r, UNION);
        out
    }

    fn level(&self, r: NodeId) -> u8 {
        match self.node(r) {
            Node::Pred(_) | Node::Epsilon | Node::Look { .. } => ATOM,
            Node::Loop { .. } | Node::Complement(_) => ITEM,
            Node::Concat(..) => CONCAT,
            Node::Inter(_) => INTER,
            Node::Union(_) => UNION,
        }
    }

    fn write_node(&self, out: &mut String, r: NodeId, min_level: u8) {
        if self.level(r) < min_level {
            out.push_str("(?:");
            self.write_node(out, r, UNION);
            out.push(')');
            return;
        }
        match self.node(r) {
            Node::Pred(p) => write_class(out, self.pred(*p)),
            Node::Epsilon => out.push_str("()"),
            Node::Concat(..) => {
                for e in self.concat_elems(r) {
                    self.write_node(out, e, ITEM);
                }
            }
            Node::Union(cs) => {
                for (i, &c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    self.write_node(out, c, INTER);
                }
            }
            Node::Inter(cs) => {
                for (i, &c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push('&');
                    }
                    self.write_node(out, c, CONCAT);
                }
            }
            Node::Loop { body, min, max } => {
                self.write_node(out, *body, ATOM);
                match (*min, *max) {
                    (0, None) => out.push('*'),
                    (1, None) => out.push('+'),
                    (0, Some(1)) => out.push('?'),
                    (m, None) => {
                        let _ = write!(out, "{{{},}}", m);
                    }
                    (m, Some(n)) if m == n => {
                        let _ = write!(out, "{{{}}}", m);
                    }
                    (m, Some(n)) => {
                        let _ = write!(out, "{{{},{}}}", m, n);
                    }
                }
            }
            Node::Complement(b) => {
                out.push('~');
                self.write_node(out, *b, ITEM);
            }
            Node::Look { dir, negated, body } => {
                out.push_str(match (dir, negated) {
                    (LookDir::Ahead, false) => "(?=",
                    (LookDir::Ahead, true) => "(?!",
                    (LookDir::Behind, false) => "(?<=",
                    (LookDir::Behind, true) => "(?<!",
                });
                self.write_node(out, *body, UNION);
                out.push(')');
            }
        }
    }
}

fn named(set: &CharSet) -> Option<&'static str> {
    let table: [(CharSet, &str); 9] = [
        (CharSet::full(), "[\\s\\S]"),
        (CharSet::empty(), "[^\\s\\S]"),
        (CharSet::dot(), "."),
        (CharSet::digit(), "\\d"),
        (CharSet::word(), "\\w"),
        (CharSet::space(), "\\s"),
        (CharSet::digit().not(), "\\D"),
        (CharSet::word().not(), "\\W"),
        (CharSet::space().not(), "\\S"),
    ];
    table.into_iter().find(|(s, _)| s == set).map(|(_, n)| n)
}

fn write_class(out: &mut String, set: &CharSet) {
    if let Some(n) = named(set) {
        out.push_str(n);
        return;
    }
    if let Some(c) = set.as_single() {
        write_char(out, c, false);
        return;
    }
    let neg = set.not();
    let (prefix, body) = if neg.ranges().len() < set.ranges().len() { ("[^", &neg) } else { ("[", set) };
    out.push_str(prefix);
    for &(a, b) in body.ranges() {
        write_char(out, a, true);
        if b > a {
            if b > a + 1 {
                out.push('-');
            }
            write_char(out, b, true);
        }
    }
    out.push(']');
}

fn write_char(out: &mut String, c: u16, in_class: bool) {
    match c {
        0x0A => out.push_str("\\n"),
        0x0D => out.push_str("\\r"),
        0x09 => out.push_str("\\t"),
        0x0C => out.push_str("\\f"),
        0x00 => out.push_str("\\0"),
        0x20..=0x7E => {
            let ch = c as u8 as char;
            let special = if in_class {
                matches!(ch, '\\' | ']' | '[' | '^' | '-')
            } else {
                matches!(
                    ch,
                    '\\' | '.' | '*' | '+' | '?' | '(' | ')' | '[' | ']' | '{' | '}' | '|' | '&' | '~' | '^' | '$'
                )
            };
            if special {
                out.push('\\');
            }
            out.push(ch);
        }
        _ => match char::from_u32(u32::from(c)) {
            Some(ch) if !ch.is_control() && !ch.is_whitespace() && c < 0xE000 => out.push(ch),
            _ => {
                let _ = write!(out, "\\u{:04X}", c);
            }
        },
    }
}
