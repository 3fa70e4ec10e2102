//! The `locre` command.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::Parser;
use locre_core::oracle::{Oracle, MAX_ORACLE_LEN};
use locre_core::{Arena, LookDir, MatchSpan, Node, NodeId, ParseErrorKind};
use serde::Serialize;

use crate::decode::{decode, Subject};
use crate::error::Error;
use crate::gen::{gen_pattern, BenchSpec, Style, DEFAULT_WORDS};
use crate::regex::Regex;

/// Search text with extended regular expressions (`&` intersection, `~`
/// complement, lookarounds) using leftmost-longest semantics.
#[derive(Parser, Debug, Clone, Default)]
#[command(name = "locre", version)]
pub struct Args {
    /// Pattern to search for.
    #[arg(short = 'e', long = "pattern", value_name = "PATTERN")]
    pub pattern: Option<String>,

    /// Input file; standard input when omitted.
    #[arg(value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Report every match.
    #[arg(long, conflicts_with_all = ["count", "test"])]
    pub all: bool,

    /// Print the number of matches.
    #[arg(long, conflicts_with = "test")]
    pub count: bool,

    /// Print nothing; exit 0 if the input matches, 1 otherwise.
    #[arg(long)]
    pub test: bool,

    /// Print matches as a JSON array of {start, end, text}.
    #[arg(long, conflicts_with = "spans")]
    pub json: bool,

    /// Print matches as start:end:text.
    #[arg(long)]
    pub spans: bool,

    /// Report UTF-8 byte offsets instead of character offsets.
    #[arg(long)]
    pub byte_offsets: bool,

    /// Disable startset skipping.
    #[arg(long)]
    pub no_skip: bool,

    /// Cross-check the result against the brute-force oracle (short inputs only).
    #[arg(long, hide = true)]
    pub oracle_check: bool,

    /// Print the parsed pattern as a tree and exit.
    #[arg(long)]
    pub dump_ast: bool,

    /// Print the minterms of the pattern and exit.
    #[arg(long)]
    pub dump_minterms: bool,

    /// Print a paragraph benchmark pattern (style: lookahead, loop or conjunction) and exit.
    #[arg(long, num_args = 2, value_names = ["STYLE", "N"])]
    pub gen: Option<Vec<String>>,

    /// Comma-separated word list for --gen.
    #[arg(long, value_delimiter = ',')]
    pub words: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    First,
    All,
    Count,
    Test,
}

impl Args {
    pub fn mode(&self) -> Mode {
        if self.all {
            Mode::All
        } else if self.count {
            Mode::Count
        } else if self.test {
            Mode::Test
        } else {
            Mode::First
        }
    }
}

#[derive(Serialize)]
struct JsonMatch<'a> {
    start: usize,
    end: usize,
    text: &'a str,
}

/// Run the command; returns the process exit status.
pub fn run(args: &Args, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(args, stdin, out, err) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "locre: {}", e);
            if let Error::Parse(p) = &e {
                if p.kind == ParseErrorKind::Unsupported && p.message.contains("lazy") {
                    let _ = writeln!(
                        err,
                        "locre: note: the lookahead and loop benchmark styles rely on lazy loops and are only \
                         generated for other engines; use the conjunction style here"
                    );
                }
            }
            2
        }
    }
}

fn execute(args: &Args, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    if let Some(g) = &args.gen {
        let style: Style = g[0].parse()?;
        let n: usize = g[1].parse().map_err(|_| Error::Bench(format!("invalid word count '{}'", g[1])))?;
        let words = args.words.clone().unwrap_or_else(|| DEFAULT_WORDS.iter().map(|w| w.to_string()).collect());
        let spec = BenchSpec::with_words(style, n, words)?;
        writeln!(out, "{}", gen_pattern(&spec)?)?;
        return Ok(0);
    }
    let Some(pattern) = &args.pattern else {
        return Err(Error::Bench("no pattern given (use -e PATTERN or --gen STYLE N)".into()));
    };
    let re = Regex::new(pattern)?.with_skip(!args.no_skip);
    if args.dump_ast || args.dump_minterms {
        if args.dump_ast {
            dump_ast(re.core().arena(), re.core().root(), out)?;
        }
        if args.dump_minterms {
            let mut arena = re.core().arena().clone();
            for (i, m) in arena.minterms().minterms().iter().enumerate() {
                writeln!(out, "{}: {:?}", i, m)?;
            }
        }
        return Ok(0);
    }
    let mut bytes = Vec::new();
    match &args.input {
        Some(path) => bytes = std::fs::read(path)?,
        None => {
            stdin.read_to_end(&mut bytes)?;
        }
    }
    let subject = decode(&bytes)?;
    let s = &subject.units;
    let mode = args.mode();
    let matches = match mode {
        Mode::Test => {
            let hit = re.is_match(s);
            if args.oracle_check {
                oracle_check(&re, &subject, &re.find(s).into_iter().collect::<Vec<_>>(), true, err)?;
            }
            return Ok(if hit { 0 } else { 1 });
        }
        Mode::First => re.find(s).into_iter().collect::<Vec<_>>(),
        Mode::All | Mode::Count => re.find_all(s),
    };
    if args.oracle_check {
        oracle_check(&re, &subject, &matches, mode == Mode::First, err)?;
    }
    if mode == Mode::Count {
        writeln!(out, "{}", matches.len())?;
        return Ok(0);
    }
    write_matches(args, &subject, &matches, out)?;
    Ok(if mode == Mode::First && matches.is_empty() { 1 } else { 0 })
}

fn write_matches(args: &Args, subject: &Subject, matches: &[MatchSpan], out: &mut dyn Write) -> Result<(), Error> {
    let pos = |p: usize| if args.byte_offsets { subject.byte_offset(p) } else { p };
    if args.json {
        let texts: Vec<String> = matches.iter().map(|m| subject.text(m.start, m.end)).collect();
        let items: Vec<JsonMatch> = matches
            .iter()
            .zip(&texts)
            .map(|(m, t)| JsonMatch { start: pos(m.start), end: pos(m.end), text: t })
            .collect();
        serde_json::to_writer(&mut *out, &items).map_err(std::io::Error::other)?;
        writeln!(out)?;
        return Ok(());
    }
    for m in matches {
        let text = subject.text(m.start, m.end);
        if args.spans {
            writeln!(out, "{}:{}:{}", pos(m.start), pos(m.end), text)?;
        } else {
            writeln!(out, "{}", text)?;
        }
    }
    Ok(())
}

fn oracle_check(
    re: &Regex,
    subject: &Subject,
    matches: &[MatchSpan],
    first_only: bool,
    err: &mut dyn Write,
) -> Result<(), Error> {
    let s = &subject.units;
    if s.len() > MAX_ORACLE_LEN {
        writeln!(err, "locre: oracle check skipped: input longer than {} characters", MAX_ORACLE_LEN)?;
        return Ok(());
    }
    let arena = re.core().arena().clone();
    let mut o = Oracle::new(&arena, s);
    let root = re.core().root();
    let mut expect = Vec::new();
    let mut cursor = 0;
    while cursor <= s.len() {
        let next = (cursor..=s.len()).find_map(|i| {
            let e = o.ends(root, i);
            (e != 0).then(|| MatchSpan::new(i, 63 - e.leading_zeros() as usize))
        });
        let Some(m) = next else { break };
        expect.push(m);
        if first_only {
            break;
        }
        cursor = m.end.max(m.start + 1);
    }
    if expect != matches {
        return Err(Error::Bench(format!("oracle mismatch: engine {:?}, oracle {:?}", matches, expect)));
    }
    writeln!(err, "locre: oracle check passed")?;
    Ok(())
}

fn dump_ast(arena: &Arena, root: NodeId, out: &mut dyn Write) -> Result<(), Error> {
    writeln!(out, "pattern: {}", arena.to_pattern(root))?;
    dump_node(arena, root, 0, out)
}

fn dump_node(arena: &Arena, r: NodeId, depth: usize, out: &mut dyn Write) -> Result<(), Error> {
    let pad = "  ".repeat(depth);
    let meta = format!("{:?} null={:?} size={}", r, arena.null_kind(r), arena.size(r));
    match arena.node(r) {
        Node::Pred(_) => writeln!(out, "{pad}Pred {} [{meta}]", arena.to_pattern(r))?,
        Node::Epsilon => writeln!(out, "{pad}Epsilon [{meta}]")?,
        Node::Concat(..) => {
            writeln!(out, "{pad}Concat [{meta}]")?;
            for e in arena.concat_elems(r) {
                dump_node(arena, e, depth + 1, out)?;
            }
        }
        Node::Union(cs) | Node::Inter(cs) => {
            let name = if matches!(arena.node(r), Node::Union(_)) { "Union" } else { "Inter" };
            writeln!(out, "{pad}{name} [{meta}]")?;
            for &c in cs.iter() {
                dump_node(arena, c, depth + 1, out)?;
            }
        }
        Node::Loop { body, min, max } => {
            let max = max.map_or("inf".to_string(), |m| m.to_string());
            writeln!(out, "{pad}Loop {{{min},{max}}} [{meta}]")?;
            dump_node(arena, *body, depth + 1, out)?;
        }
        Node::Complement(b) => {
            writeln!(out, "{pad}Complement [{meta}]")?;
            dump_node(arena, *b, depth + 1, out)?;
        }
        Node::Look { dir, negated, body } => {
            let d = if *dir == LookDir::Ahead { "ahead" } else { "behind" };
            let pol = if *negated { "negative" } else { "positive" };
            writeln!(out, "{pad}Look {d} {pol} [{meta}]")?;
            dump_node(arena, *body, depth + 1, out)?;
        }
    }
    Ok(())
}
