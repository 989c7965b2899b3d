//! Scans stdin (or a file given as the first argument) in 4 KiB chunks
//! against a small keyword dictionary, printing matches as they arrive.
//!
//! ```bash
//! echo "the cat sat on the mat" | cargo run --example stream_scan
//! ```

use std::io::Read;

use succinct_ac::{Backend, Scanner, SuccinctAcIndex};

fn main() -> succinct_ac::Result<()> {
    let words = ["the", "cat", "at", "mat", "on the"];
    let idx = SuccinctAcIndex::build(words, Backend::Flat)?;

    let mut input: Box<dyn Read> = match std::env::args().nth(1) {
        Some(path) => Box::new(std::fs::File::open(path)?),
        None => Box::new(std::io::stdin()),
    };

    let mut scanner = Scanner::new(&idx);
    let mut buf = [0u8; 4096];
    loop {
        let n = input.read(&mut buf)?;
        if n == 0 {
            break;
        }
        scanner.feed(&buf[..n], &mut |o| {
            let word = idx.retrieve_pattern(o.pattern_id).unwrap();
            println!("{}..={}  {}", o.start, o.end, String::from_utf8_lossy(&word));
        });
    }
    let s = scanner.summary();
    eprintln!(
        "{} bytes, {} matches, {} transitions ({:.3} per byte)",
        s.text_len,
        s.occurrences,
        s.counters.transitions(),
        s.counters.transitions() as f64 / s.text_len.max(1) as f64
    );
    Ok(())
}
