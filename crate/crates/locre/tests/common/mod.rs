#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_10c5;
pub const ALPHABET: [char; 3] = ['a', 'b', '\n'];

/// A random regex as a syntax tree, rendered to concrete syntax for the parser.
#[derive(Clone, Debug)]
pub enum Gen {
    Lit(char),
    Top,
    Bot,
    Eps,
    Concat(Box<Gen>, Box<Gen>),
    Union(Box<Gen>, Box<Gen>),
    Inter(Box<Gen>, Box<Gen>),
    Compl(Box<Gen>),
    Loop(Box<Gen>, u32, Option<u32>),
    Look { ahead: bool, neg: bool, body: Box<Gen> },
}

impl Gen {
    pub fn pattern(&self) -> String {
        match self {
            Gen::Lit('\n') => "\\n".into(),
            Gen::Lit(c) => c.to_string(),
            Gen::Top => "[\\s\\S]".into(),
            Gen::Bot => "[^\\s\\S]".into(),
            Gen::Eps => "()".into(),
            Gen::Concat(x, y) => format!("(?:{})(?:{})", x.pattern(), y.pattern()),
            Gen::Union(x, y) => format!("(?:{})|(?:{})", x.pattern(), y.pattern()),
            Gen::Inter(x, y) => format!("(?:{})&(?:{})", x.pattern(), y.pattern()),
            Gen::Compl(x) => format!("(?:~(?:{}))", x.pattern()),
            Gen::Loop(x, m, None) => format!("(?:{}){{{},}}", x.pattern(), m),
            Gen::Loop(x, m, Some(n)) => format!("(?:{}){{{},{}}}", x.pattern(), m, n),
            Gen::Look { ahead, neg, body } => {
                let open = match (ahead, neg) {
                    (true, false) => "(?=",
                    (true, true) => "(?!",
                    (false, false) => "(?<=",
                    (false, true) => "(?<!",
                };
                format!("{}{})", open, body.pattern())
            }
        }
    }
}

fn leaf(rng: &mut ChaCha8Rng) -> Gen {
    match rng.random_range(0..12) {
        0..=3 => Gen::Lit('a'),
        4..=6 => Gen::Lit('b'),
        7 | 8 => Gen::Lit('\n'),
        9 | 10 => Gen::Top,
        _ => {
            if rng.random_bool(0.5) {
                Gen::Eps
            } else {
                Gen::Bot
            }
        }
    }
}

/// A regex of depth at most `depth` using every operator.
pub fn regex(rng: &mut ChaCha8Rng, depth: u32) -> Gen {
    if depth == 0 || rng.random_bool(0.25) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(regex(rng, depth - 1));
    match rng.random_range(0..6) {
        0 => Gen::Concat(sub(rng), sub(rng)),
        1 => Gen::Union(sub(rng), sub(rng)),
        2 => Gen::Inter(sub(rng), sub(rng)),
        3 => Gen::Compl(sub(rng)),
        4 => {
            let m = rng.random_range(0..=3);
            let n = if rng.random_bool(0.3) { None } else { Some(rng.random_range(m.max(1)..=3)) };
            Gen::Loop(sub(rng), m, n)
        }
        _ => Gen::Look { ahead: rng.random_bool(0.5), neg: rng.random_bool(0.5), body: sub(rng) },
    }
}

pub fn subject(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())]).collect()
}

pub struct Instance {
    pub regex: Gen,
    pub pattern: String,
    pub subject: Vec<u16>,
}

/// The fixed (regex, string) corpus: depth at most 3, strings of length at most 5.
pub fn corpus(size: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..size)
        .map(|_| {
            let regex = regex(&mut rng, 3);
            let pattern = regex.pattern();
            let subject = subject(&mut rng, 5).encode_utf16().collect();
            Instance { regex, pattern, subject }
        })
        .collect()
}

pub fn u(s: &str) -> Vec<u16> {
    s.encode_utf16().collect()
}

pub fn mask_of(positions: &[usize]) -> u64 {
    positions.iter().fold(0, |m, &p| m | 1 << p)
}
