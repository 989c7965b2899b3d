//! Flat versus per-symbol transition dictionaries on a skewed alphabet,
//! where the zero-order entropy of the transition labels is low.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use succinct_ac::index::Transitions;
use succinct_ac::{find_all, space_report, Backend, PatternSet, SuccinctAcIndex};

fn main() -> succinct_ac::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // 'a' is far more common than the other 15 symbols.
    let symbol = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.8) {
            b'a'
        } else {
            b'b' + rng.gen_range(0..15)
        }
    };
    let mut patterns = std::collections::BTreeSet::new();
    while patterns.len() < 3000 {
        let len = rng.gen_range(4..16);
        patterns.insert((0..len).map(|_| symbol(&mut rng)).collect::<Vec<u8>>());
    }
    let set = PatternSet::new(patterns)?;
    let text: Vec<u8> = (0..200_000).map(|_| symbol(&mut rng)).collect();

    let flat = SuccinctAcIndex::build_from(&set, Backend::Flat)?;
    let compressed = SuccinctAcIndex::build_from(&set, Backend::Compressed)?;
    assert_eq!(find_all(&flat, &text), find_all(&compressed, &text));

    for idx in [&flat, &compressed] {
        let r = space_report(idx);
        let t = r.component("transitions").unwrap();
        println!(
            "{:<10} transitions: payload {:>8} aux {:>6}  ({:.2} bits per transition)",
            r.backend,
            t.payload,
            t.aux,
            t.payload as f64 / (r.states - 1) as f64
        );
    }
    let r = space_report(&compressed);
    if let Transitions::Compressed(t) = compressed.transitions() {
        println!("offsets T[c]: {:?}", &t.offsets()[..6]);
    }
    println!(
        "H0 = {:.3} bits; bound m(H0 + 3) + sigma ceil(log m) = {:.0}; per-symbol payload = {}",
        r.transition_h0,
        r.compressed_bound_bits,
        r.per_char_payload_bits.unwrap()
    );
    Ok(())
}
