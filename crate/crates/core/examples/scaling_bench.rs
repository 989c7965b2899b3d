//! Scan throughput on a synthetic DNA text, then on the text doubled.
//!
//! ```bash
//! cargo run --release --example scaling_bench -- 100   # size in MB
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use succinct_ac::bench::{bench_scaling, random_dictionary, synthetic_text};
use succinct_ac::{Backend, SuccinctAcIndex};

fn main() {
    let mb: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("size in MB"))
        .unwrap_or(16);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let patterns = random_dictionary(&mut rng, b"ACGT", 2_000, 6, 20);
    let text = synthetic_text(&mut rng, b"ACGT", &patterns, mb * 1_000_000, 500);

    for backend in [Backend::Flat, Backend::Compressed] {
        let idx = SuccinctAcIndex::build(patterns.clone(), backend).unwrap();
        let r = bench_scaling(&idx, &text, 1).unwrap();
        for (label, b) in [("single", r.single), ("doubled", r.doubled)] {
            println!(
                "{backend:<10} {label:<7} {:>10} bytes  {:>8.3}s  {:>7.2} MB/s  {:.3} steps/char  {} occ",
                b.text_len,
                b.best.as_secs_f64(),
                b.mb_per_sec(),
                b.steps_per_char(),
                b.occurrences
            );
        }
        println!("{backend:<10} ratio   {:.3}", r.ratio());
    }
}
