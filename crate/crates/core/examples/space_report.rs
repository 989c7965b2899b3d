//! Space accounting for a random DNA dictionary with n = 100 000 pattern
//! symbols, on both transition backends.
//!
//! ```bash
//! cargo run --release --example space_report
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use succinct_ac::bench::random_dictionary;
use succinct_ac::{space_report, Backend, SuccinctAcIndex};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut patterns = random_dictionary(&mut rng, b"ACGT", 10_000, 5, 15);
    // Trim to exactly 100 000 symbols.
    let mut total: usize = patterns.iter().map(Vec::len).sum();
    while total > 100_000 {
        let last = patterns.pop().unwrap();
        total -= last.len();
    }
    let total: usize = patterns.iter().map(Vec::len).sum();
    println!("d = {}, n = {total}\n", patterns.len());

    for backend in [Backend::Flat, Backend::Compressed] {
        let idx = SuccinctAcIndex::build(patterns.clone(), backend).unwrap();
        let report = space_report(&idx);
        println!("{report}");
        println!(
            "budget n (log2 4 + 8) = {} bits, used {:.1}%\n",
            total * 10,
            100.0 * report.total_bits as f64 / (total * 10) as f64
        );
    }
}
