//! Times the conjunction paragraph patterns on the bundled excerpt.
//!
//! `cargo run --release -p locre --example bench [max_n]`

use std::time::Instant;

use locre::{gen_pattern, BenchSpec, Regex, Style, EXCERPT};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|v| v.parse().ok()).unwrap_or(12);
    let text: Vec<u16> = EXCERPT.encode_utf16().collect();
    println!("{:>3} {:>8} {:>12} {:>12} {:>12} {:>8}", "n", "len", "build", "cold scan", "warm scan", "matches");
    for n in 1..=max_n {
        let pattern = gen_pattern(&BenchSpec::new(Style::Conjunction, n).unwrap()).unwrap();
        let t = Instant::now();
        let re = Regex::new(&pattern).unwrap();
        let build = t.elapsed();
        let t = Instant::now();
        let m = re.find_all(&text);
        let cold = t.elapsed();
        let t = Instant::now();
        let again = re.find_all(&text);
        let warm = t.elapsed();
        assert_eq!(m, again);
        println!("{:>3} {:>8} {:>12.2?} {:>12.2?} {:>12.2?} {:>8}", n, pattern.len(), build, cold, warm, m.len());
    }
}
