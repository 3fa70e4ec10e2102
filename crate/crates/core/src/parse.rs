//! Pattern parser.
//!
//! Precedence, loosest first: `|`, `&`, concatenation, then items. An item
//! is either `~item` or an atom followed by at most one quantifier, so
//! `~a*` is the complement of `a*`. Groups never capture. Anchors are
//! desugared into lookarounds.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::ast::{Arena, LookDir, NodeId};
use crate::charset::CharSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    Unsupported,
    NonBmpLiteral,
    BadLoopBounds,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Unsupported => "unsupported-construct",
            ParseErrorKind::NonBmpLiteral => "non-BMP-literal",
            ParseErrorKind::BadLoopBounds => "bad-loop-bounds",
        }
    }
}

/// A diagnostic with the byte offset in the pattern where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.offset, self.kind.as_str(), self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// `\A`
    Start,
    /// `\z`
    End,
    /// `\Z`
    EndBeforeNewline,
    /// `^`
    LineStart,
    /// `$`
    LineEnd,
    /// `\b`
    WordBoundary,
    /// `\B`
    NotWordBoundary,
}

impl Anchor {
    pub const ALL: [Anchor; 7] = [
        Anchor::Start,
        Anchor::End,
        Anchor::EndBeforeNewline,
        Anchor::LineStart,
        Anchor::LineEnd,
        Anchor::WordBoundary,
        Anchor::NotWordBoundary,
    ];

    pub fn syntax(self) -> &'static str {
        match self {
            Anchor::Start => "\\A",
            Anchor::End => "\\z",
            Anchor::EndBeforeNewline => "\\Z",
            Anchor::LineStart => "^",
            Anchor::LineEnd => "$",
            Anchor::WordBoundary => "\\b",
            Anchor::NotWordBoundary => "\\B",
        }
    }
}

/// The lookaround definition of an anchor.
pub fn desugar_anchor(arena: &mut Arena, anchor: Anchor) -> NodeId {
    let nl = arena.mk_char(b'\n' as u16);
    let w = arena.mk_pred(CharSet::word());
    let start = arena.mk_look(LookDir::Behind, true, NodeId::TOP);
    let end = arena.mk_look(LookDir::Ahead, true, NodeId::TOP);
    match anchor {
        Anchor::Start => start,
        Anchor::End => end,
        Anchor::LineStart => {
            let after_nl = arena.mk_look(LookDir::Behind, false, nl);
            arena.mk_union([start, after_nl])
        }
        Anchor::LineEnd => {
            let before_nl = arena.mk_look(LookDir::Ahead, false, nl);
            arena.mk_union([end, before_nl])
        }
        Anchor::EndBeforeNewline => {
            let nl_end = arena.mk_concat(nl, end);
            let la = arena.mk_look(LookDir::Ahead, false, nl_end);
            arena.mk_union([end, la])
        }
        Anchor::WordBoundary | Anchor::NotWordBoundary => {
            let wb = arena.mk_look(LookDir::Behind, false, w);
            let nwb = arena.mk_look(LookDir::Behind, true, w);
            let wa = arena.mk_look(LookDir::Ahead, false, w);
            let nwa = arena.mk_look(LookDir::Ahead, true, w);
            let (x, y) = if anchor == Anchor::WordBoundary {
                (arena.mk_concat(wb, nwa), arena.mk_concat(nwb, wa))
            } else {
                (arena.mk_concat(wb, wa), arena.mk_concat(nwb, nwa))
            };
            arena.mk_union([x, y])
        }
    }
}

/// Parse `pattern` into a canonical node of `arena`.
pub fn parse(arena: &mut Arena, pattern: &str) -> Result<NodeId, ParseError> {
    let mut p = Parser { src: pattern, pos: 0, arena, depth: 0 };
    let r = p.union()?;
    match p.peek() {
        None => Ok(r),
        Some(')') => Err(p.err(ParseErrorKind::Syntax, "unmatched ')'")),
        Some(c) => Err(p.err(ParseErrorKind::Syntax, alloc::format!("unexpected '{}'", c))),
    }
}

const MAX_DEPTH: usize = 500;
const MAX_BOUND: u32 = 100_000;

struct Parser<'p, 'a> {
    src: &'p str,
    pos: usize,
    arena: &'a mut Arena,
    depth: usize,
}

enum ClassItem {
    Char(u16),
    Set(CharSet),
}

impl Parser<'_, '_> {
    fn err(&self, kind: ParseErrorKind, msg: impl ToString) -> ParseError {
        self.err_at(self.pos, kind, msg)
    }

    fn err_at(&self, offset: usize, kind: ParseErrorKind, msg: impl ToString) -> ParseError {
        ParseError { offset, kind, message: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(k)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<NodeId, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err(ParseErrorKind::Syntax, "pattern nested too deeply"));
        }
        let mut alts = alloc::vec![self.inter()?];
        while self.eat("|") {
            alts.push(self.inter()?);
        }
        self.depth -= 1;
        Ok(self.arena.mk_union(alts))
    }

    fn inter(&mut self) -> Result<NodeId, ParseError> {
        let mut parts = alloc::vec![self.concat()?];
        while self.eat("&") {
            parts.push(self.concat()?);
        }
        Ok(self.arena.mk_inter(parts))
    }

    fn concat(&mut self) -> Result<NodeId, ParseError> {
        let mut elems = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '&' | ')') {
                break;
            }
            elems.push(self.item()?);
        }
        Ok(self.arena.mk_concat_list(&elems))
    }

    fn item(&mut self) -> Result<NodeId, ParseError> {
        if self.eat("~") {
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.err(ParseErrorKind::Syntax, "pattern nested too deeply"));
            }
            let body = match self.peek() {
                None | Some('|' | '&' | ')') => {
                    return Err(self.err(ParseErrorKind::Syntax, "'~' without operand"));
                }
                _ => self.item()?,
            };
            self.depth -= 1;
            return Ok(self.arena.mk_complement(body));
        }
        let atom = self.atom()?;
        let Some((min, max, qstart)) = self.quantifier()? else {
            return Ok(atom);
        };
        match self.peek() {
            Some('?') => {
                return Err(self.err(
                    ParseErrorKind::Unsupported,
                    "lazy quantifiers are not supported; match up to a delimiter instead, e.g. a[^b\\n]*b for a.*?b",
                ));
            }
            Some('*' | '+') => return Err(self.err(ParseErrorKind::Syntax, "nested quantifier")),
            Some('{') if self.quantifier_ahead() => {
                return Err(self.err(ParseErrorKind::Syntax, "nested quantifier"));
            }
            _ => {}
        }
        self.arena
            .mk_loop(atom, min, max)
            .map_err(|e| self.err_at(qstart, ParseErrorKind::BadLoopBounds, e))
    }

    // `{m}`, `{m,}` or `{m,n}` at the cursor
    fn quantifier_ahead(&self) -> bool {
        let r = self.rest().as_bytes();
        if r.first() != Some(&b'{') {
            return false;
        }
        let mut i = 1;
        let digits = |i: &mut usize| {
            let s = *i;
            while r.get(*i).is_some_and(u8::is_ascii_digit) {
                *i += 1;
            }
            *i > s
        };
        if !digits(&mut i) {
            return false;
        }
        if r.get(i) == Some(&b',') {
            i += 1;
            digits(&mut i);
        }
        r.get(i) == Some(&b'}')
    }

    fn quantifier(&mut self) -> Result<Option<(u32, Option<u32>, usize)>, ParseError> {
        let start = self.pos;
        let q = match self.peek() {
            Some('*') => (0, None),
            Some('+') => (1, None),
            Some('?') => (0, Some(1)),
            Some('{') if self.quantifier_ahead() => {
                self.bump();
                let min = self.number(start)?;
                let max = if self.eat(",") {
                    if self.peek() == Some('}') {
                        None
                    } else {
                        Some(self.number(start)?)
                    }
                } else {
                    Some(min)
                };
                self.eat("}");
                return Ok(Some((min, max, start)));
            }
            _ => return Ok(None),
        };
        self.bump();
        Ok(Some((q.0, q.1, start)))
    }

    fn number(&mut self, qstart: usize) -> Result<u32, ParseError> {
        let s = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.src[s..self.pos].parse::<u32>() {
            Ok(n) if n <= MAX_BOUND => Ok(n),
            _ => Err(self.err_at(
                qstart,
                ParseErrorKind::BadLoopBounds,
                alloc::format!("loop bound exceeds {}", MAX_BOUND),
            )),
        }
    }

    fn atom(&mut self) -> Result<NodeId, ParseError> {
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.err(ParseErrorKind::Syntax, "unexpected end of pattern"));
        };
        match c {
            '(' => self.group(),
            '[' => {
                let set = self.class()?;
                Ok(self.arena.mk_pred(set))
            }
            '.' => {
                self.bump();
                Ok(self.arena.mk_pred(CharSet::dot()))
            }
            '^' => {
                self.bump();
                Ok(desugar_anchor(self.arena, Anchor::LineStart))
            }
            '$' => {
                self.bump();
                Ok(desugar_anchor(self.arena, Anchor::LineEnd))
            }
            '*' | '+' | '?' => Err(self.err(ParseErrorKind::Syntax, "quantifier without operand")),
            '{' if self.quantifier_ahead() => Err(self.err(ParseErrorKind::Syntax, "quantifier without operand")),
            '\\' => self.escape(),
            _ => {
                self.bump();
                let u = bmp(c).ok_or_else(|| self.non_bmp(start, c))?;
                Ok(self.arena.mk_char(u))
            }
        }
    }

    fn non_bmp(&self, at: usize, c: char) -> ParseError {
        self.err_at(
            at,
            ParseErrorKind::NonBmpLiteral,
            alloc::format!("U+{:X} is outside the Basic Multilingual Plane", c as u32),
        )
    }

    fn group(&mut self) -> Result<NodeId, ParseError> {
        let open = self.pos;
        self.bump();
        let look = if self.eat("?:") {
            None
        } else if self.eat("?=") {
            Some((LookDir::Ahead, false))
        } else if self.eat("?!") {
            Some((LookDir::Ahead, true))
        } else if self.eat("?<=") {
            Some((LookDir::Behind, false))
        } else if self.eat("?<!") {
            Some((LookDir::Behind, true))
        } else if self.rest().starts_with('?') {
            let what = if self.rest().starts_with("?<") || self.rest().starts_with("?P<") || self.rest().starts_with("?'") {
                "named groups are not supported"
            } else if self.rest().starts_with("?(") {
                "conditionals are not supported"
            } else if self.rest().starts_with("?>") {
                "atomic groups are not supported"
            } else {
                "inline flags and other group extensions are not supported"
            };
            return Err(self.err_at(open, ParseErrorKind::Unsupported, what));
        } else {
            None
        };
        let body = self.union()?;
        if !self.eat(")") {
            return Err(self.err_at(open, ParseErrorKind::Syntax, "unclosed group"));
        }
        Ok(match look {
            Some((dir, neg)) => self.arena.mk_look(dir, neg, body),
            None => body,
        })
    }

    fn escape(&mut self) -> Result<NodeId, ParseError> {
        let start = self.pos;
        self.bump();
        let Some(c) = self.peek() else {
            return Err(self.err_at(start, ParseErrorKind::Syntax, "trailing backslash"));
        };
        let anchor = match c {
            'A' => Some(Anchor::Start),
            'z' => Some(Anchor::End),
            'Z' => Some(Anchor::EndBeforeNewline),
            'b' => Some(Anchor::WordBoundary),
            'B' => Some(Anchor::NotWordBoundary),
            _ => None,
        };
        if let Some(a) = anchor {
            self.bump();
            return Ok(desugar_anchor(self.arena, a));
        }
        match c {
            'G' => Err(self.err_at(start, ParseErrorKind::Unsupported, "\\G is not supported")),
            '1'..='9' | 'k' => Err(self.err_at(start, ParseErrorKind::Unsupported, "backreferences are not supported")),
            _ => {
                self.pos = start;
                let item = self.class_escape(false)?;
                Ok(match item {
                    ClassItem::Char(u) => self.arena.mk_char(u),
                    ClassItem::Set(s) => self.arena.mk_pred(s),
                })
            }
        }
    }

    // An escape sequence valid both inside and outside classes; the cursor is on the backslash.
    fn class_escape(&mut self, in_class: bool) -> Result<ClassItem, ParseError> {
        let start = self.pos;
        self.bump();
        let Some(c) = self.bump() else {
            return Err(self.err_at(start, ParseErrorKind::Syntax, "trailing backslash"));
        };
        let ch = |c: char| Ok(ClassItem::Char(c as u16));
        match c {
            'n' => ch('\n'),
            'r' => ch('\r'),
            't' => ch('\t'),
            'f' => ch('\x0C'),
            'v' => ch('\x0B'),
            'e' => ch('\x1B'),
            '0' => ch('\0'),
            'b' if in_class => ch('\x08'),
            'd' => Ok(ClassItem::Set(CharSet::digit())),
            'D' => Ok(ClassItem::Set(CharSet::digit().not())),
            'w' => Ok(ClassItem::Set(CharSet::word())),
            'W' => Ok(ClassItem::Set(CharSet::word().not())),
            's' => Ok(ClassItem::Set(CharSet::space())),
            'S' => Ok(ClassItem::Set(CharSet::space().not())),
            'x' => self.hex(start, 2).map(ClassItem::Char),
            'u' => self.hex(start, 4).map(ClassItem::Char),
            'p' | 'P' => Err(self.err_at(start, ParseErrorKind::Unsupported, "Unicode property classes are not supported")),
            c if c.is_ascii_alphanumeric() => {
                Err(self.err_at(start, ParseErrorKind::Syntax, alloc::format!("unknown escape \\{}", c)))
            }
            c => bmp(c).map(ClassItem::Char).ok_or_else(|| self.non_bmp(start, c)),
        }
    }

    fn hex(&mut self, start: usize, digits: usize) -> Result<u16, ParseError> {
        let r = self.rest();
        if r.len() >= digits && r.as_bytes()[..digits].iter().all(u8::is_ascii_hexdigit) {
            let v = u16::from_str_radix(&r[..digits], 16).unwrap();
            self.pos += digits;
            Ok(v)
        } else {
            Err(self.err_at(start, ParseErrorKind::Syntax, alloc::format!("expected {} hex digits", digits)))
        }
    }

    fn class(&mut self) -> Result<CharSet, ParseError> {
        let open = self.pos;
        self.bump();
        let negated = self.eat("^");
        let mut set = CharSet::empty();
        let mut first = true;
        loop {
            let Some(c) = self.peek() else {
                return Err(self.err_at(open, ParseErrorKind::Syntax, "unclosed character class"));
            };
            if c == ']' && !first {
                self.bump();
                break;
            }
            if c == '-' && self.peek_at(1) == Some('[') && !first {
                self.bump();
                let sub = self.class()?;
                if !self.eat("]") {
                    return Err(self.err(ParseErrorKind::Syntax, "class subtraction must end the class"));
                }
                let base = if negated { set.not() } else { set };
                return Ok(base.minus(&sub));
            }
            first = false;
            let lo_at = self.pos;
            let lo = self.class_atom()?;
            if self.peek() == Some('-') && !matches!(self.peek_at(1), Some(']') | Some('[') | None) {
                self.bump();
                let hi = self.class_atom()?;
                match (lo, hi) {
                    (ClassItem::Char(a), ClassItem::Char(b)) if a <= b => set = set.or(&CharSet::range(a, b)),
                    (ClassItem::Char(_), ClassItem::Char(_)) => {
                        return Err(self.err_at(lo_at, ParseErrorKind::Syntax, "range out of order"));
                    }
                    _ => return Err(self.err_at(lo_at, ParseErrorKind::Syntax, "class shorthand in range")),
                }
            } else {
                set = set.or(&match lo {
                    ClassItem::Char(a) => CharSet::single(a),
                    ClassItem::Set(s) => s,
                });
            }
        }
        Ok(if negated { set.not() } else { set })
    }

    fn class_atom(&mut self) -> Result<ClassItem, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('\\') => self.class_escape(true),
            Some(c) => {
                self.bump();
                bmp(c).map(ClassItem::Char).ok_or_else(|| self.non_bmp(start, c))
            }
            None => Err(self.err(ParseErrorKind::Syntax, "unclosed character class")),
        }
    }
}

fn bmp(c: char) -> Option<u16> {
    u16::try_from(c as u32).ok()
}
