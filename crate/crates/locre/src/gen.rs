//! Paragraph-extraction benchmark patterns.
//!
//! Three ways to find a paragraph containing every one of `n` words: a
//! negative-lookahead pattern and a line-loop pattern that both enumerate
//! all `n!` word orders, and a conjunction pattern that intersects one
//! `[\s\S]*w[\s\S]*` term per word with a paragraph shape.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const DEFAULT_WORDS: [&str; 12] = [
    "King", "Paris", "English", "would", "rise", "struck", "council", "march", "war", "May", "Orleans", "work",
];

/// Patterns longer than this are never materialized.
pub const MAX_GENERATED_LEN: u128 = 64 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Style {
    Lookahead,
    Loop,
    Conjunction,
}

impl Style {
    pub const ALL: [Style; 3] = [Style::Lookahead, Style::Loop, Style::Conjunction];

    pub fn name(self) -> &'static str {
        match self {
            Style::Lookahead => "lookahead",
            Style::Loop => "loop",
            Style::Conjunction => "conjunction",
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Style, Error> {
        Style::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Bench(format!("unknown style '{}' (expected lookahead, loop or conjunction)", s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub style: Style,
    pub n: usize,
    pub words: Vec<String>,
}

impl BenchSpec {
    pub fn new(style: Style, n: usize) -> Result<BenchSpec, Error> {
        BenchSpec::with_words(style, n, DEFAULT_WORDS.iter().map(|w| w.to_string()).collect())
    }

    pub fn with_words(style: Style, n: usize, words: Vec<String>) -> Result<BenchSpec, Error> {
        if n == 0 || n > 12 || n > words.len() {
            return Err(Error::Bench(format!(
                "word count {} out of range 1..={}",
                n,
                words.len().min(12)
            )));
        }
        Ok(BenchSpec { style, n, words })
    }

    fn escaped_words(&self) -> Vec<String> {
        self.words[..self.n].iter().map(|w| escape(w)).collect()
    }
}

const LA_STEP: &str = r"((?!\n\n)[\s\S])*?";
const LINE_STEP: &str = r"(.+\n)+?";

/// Escape the pattern metacharacters of `word`.
pub fn escape(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    for c in word.chars() {
        if "\\.*+?()[]{}|&~^$".contains(c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Length in characters of the generated pattern, computed without building it.
pub fn pattern_len(spec: &BenchSpec) -> u128 {
    let words = spec.escaped_words();
    let n = words.len() as u128;
    let total: u128 = words.iter().map(|w| w.chars().count() as u128).sum();
    let k = factorial(spec.n);
    match spec.style {
        Style::Conjunction => r"\n\n~([\s\S]*\n\n[\s\S]*)\n".len() as u128 + total + n * r"&[\s\S]*[\s\S]*".len() as u128,
        Style::Lookahead => {
            let frame = (r"\n\n".len() + 2 * LA_STEP.len() + "()".len() + r"\n\n".len()) as u128;
            let alt = total + (n - 1) * LA_STEP.len() as u128;
            frame + k * alt + (k - 1)
        }
        Style::Loop => {
            let frame = (r"\n\n(".len() + 2 * LINE_STEP.len() + "()".len() + r")\n".len()) as u128;
            let alt = total + n * r".*.*\n".len() as u128 + (n - 1) * LINE_STEP.len() as u128;
            frame + k * alt + (k - 1)
        }
    }
}

fn permutations(items: &[String]) -> Vec<Vec<&str>> {
    fn go<'a>(rest: &mut Vec<&'a str>, cur: &mut Vec<&'a str>, out: &mut Vec<Vec<&'a str>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let w = rest.remove(i);
            cur.push(w);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, w);
        }
    }
    let mut out = Vec::new();
    go(&mut items.iter().map(String::as_str).collect(), &mut Vec::new(), &mut out);
    out
}

pub fn gen_pattern(spec: &BenchSpec) -> Result<String, Error> {
    let len = pattern_len(spec);
    if len > MAX_GENERATED_LEN {
        return Err(Error::Bench(format!(
            "{} pattern for {} words would be {} characters long",
            spec.style, spec.n, len
        )));
    }
    let words = spec.escaped_words();
    let pattern = match spec.style {
        Style::Conjunction => {
            let mut p = String::from(r"\n\n~([\s\S]*\n\n[\s\S]*)\n");
            for w in &words {
                p.push_str(&format!(r"&[\s\S]*{}[\s\S]*", w));
            }
            p
        }
        Style::Lookahead => {
            let alts: Vec<String> = permutations(&words).iter().map(|perm| perm.join(LA_STEP)).collect();
            format!(r"\n\n{LA_STEP}({}){LA_STEP}\n\n", alts.join("|"))
        }
        Style::Loop => {
            let alts: Vec<String> = permutations(&words)
                .iter()
                .map(|perm| perm.iter().map(|w| format!(r".*{}.*\n", w)).collect::<Vec<_>>().join(LINE_STEP))
                .collect();
            format!(r"\n\n({LINE_STEP}({}){LINE_STEP})\n", alts.join("|"))
        }
    };
    debug_assert_eq!(pattern.chars().count() as u128, len);
    Ok(pattern)
}
