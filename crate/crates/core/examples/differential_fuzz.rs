//! Seeded differential run against the brute-force matcher. Pass the case
//! count and seed as arguments.
//!
//! ```bash
//! cargo run --release --example differential_fuzz -- 5000 42
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use succinct_ac::oracle::{alphabet_of_size, random_case, CaseShape, NaiveMatcher};
use succinct_ac::{find_all, Backend, PatternSet, SuccinctAcIndex};

fn main() {
    let mut args = std::env::args().skip(1);
    let cases: usize = args.next().map_or(1000, |s| s.parse().unwrap());
    let seed: u64 = args.next().map_or(0, |s| s.parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut occurrences = 0;
    for case in 0..cases {
        let sigma = [2, 4, 26, 256][case % 4];
        let rc = random_case(&mut rng, &alphabet_of_size(sigma), CaseShape::default());
        let set = PatternSet::new(rc.patterns).unwrap();
        let mut expected = NaiveMatcher::new(&set).scan(&rc.text);
        expected.sort_unstable();
        for backend in [Backend::Flat, Backend::Compressed] {
            let idx = SuccinctAcIndex::build_from(&set, backend).unwrap();
            let mut got = find_all(&idx, &rc.text);
            got.sort_unstable();
            if got != expected {
                eprintln!("case {case} (sigma {sigma}, {backend}) disagrees");
                eprintln!("patterns: {:?}", set.patterns());
                std::process::exit(1);
            }
        }
        occurrences += expected.len();
    }
    println!("{cases} cases agree ({occurrences} occurrences, seed {seed})");
}
