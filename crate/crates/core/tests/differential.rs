use proptest::prelude::*;

use succinct_ac::builder::{build_failure_parents, build_report_parents, suffix_lex_order};
use succinct_ac::oracle::{naive_failure, naive_report, NaiveMatcher};
use succinct_ac::{find_all, scan, scan_chunked, Backend, Occurrence, PatternSet, SuccinctAcIndex};

fn small_alphabet_bytes() -> impl Strategy<Value = u8> {
    prop::sample::select(vec![b'a', b'b', b'c'])
}

fn pattern_set() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::btree_set(prop::collection::vec(small_alphabet_bytes(), 1..7), 1..12)
        .prop_map(|s| s.into_iter().collect())
}

fn sorted(mut v: Vec<Occurrence>) -> Vec<Occurrence> {
    v.sort_unstable();
    v
}

proptest! {
    #[test]
    fn matches_brute_force(patterns in pattern_set(), text in prop::collection::vec(
        prop::sample::select(vec![b'a', b'b', b'c', b'x']), 0..300)) {
        let set = PatternSet::new(patterns).unwrap();
        let expected = NaiveMatcher::new(&set).scan(&text);
        for backend in [Backend::Flat, Backend::Compressed] {
            let idx = SuccinctAcIndex::build_from(&set, backend).unwrap();
            let got = find_all(&idx, &text);
            prop_assert_eq!(sorted(got.clone()), expected.clone());
            // Same end position: longer patterns come first.
            for w in got.windows(2) {
                prop_assert!(w[0].end < w[1].end || (w[0].end == w[1].end && w[0].start < w[1].start));
            }
        }
    }

    #[test]
    fn links_match_brute_force(patterns in pattern_set()) {
        let set = PatternSet::new(patterns).unwrap();
        let pt = suffix_lex_order(&set);
        let fail = build_failure_parents(&pt).unwrap();
        prop_assert_eq!(&fail, &naive_failure(&pt));
        prop_assert_eq!(build_report_parents(&pt, &fail).unwrap(), naive_report(&pt, &set));
    }

    #[test]
    fn chunking_is_invisible(patterns in pattern_set(),
                             text in prop::collection::vec(small_alphabet_bytes(), 0..200),
                             cuts in prop::collection::vec(any::<prop::sample::Index>(), 0..10)) {
        let idx = SuccinctAcIndex::build(patterns, Backend::Flat).unwrap();
        let mut whole = Vec::new();
        let s1 = scan(&idx, &text, |o| whole.push(o));
        let mut points: Vec<usize> = cuts.iter().map(|c| c.index(text.len() + 1)).collect();
        points.sort_unstable();
        let mut chunks = Vec::new();
        let mut prev = 0;
        for p in points.into_iter().chain([text.len()]) {
            chunks.push(&text[prev..p]);
            prev = p;
        }
        let mut parts = Vec::new();
        let s2 = scan_chunked(&idx, &chunks, |o| parts.push(o));
        prop_assert_eq!(whole, parts);
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn retrieval_round_trips(patterns in pattern_set()) {
        let set = PatternSet::new(patterns).unwrap();
        let naive = NaiveMatcher::new(&set);
        for backend in [Backend::Flat, Backend::Compressed] {
            let idx = SuccinctAcIndex::build_from(&set, backend).unwrap();
            for id in 0..set.len() {
                let (p, selects) = idx.retrieve_pattern_counted(id).unwrap();
                prop_assert_eq!(&p[..], naive.pattern(id));
                prop_assert!(selects <= p.len() + 1);
                prop_assert_eq!(idx.pattern_length(id).unwrap(), p.len() as u64);
            }
        }
    }
}

#[test]
fn full_byte_alphabet() {
    let patterns: Vec<Vec<u8>> = vec![vec![0, 255], vec![255], vec![b'\n', 0, 255, 7], vec![200; 5]];
    let mut text = vec![0, 255, 255, b'\n', 0, 255, 7];
    text.extend([200; 8]);
    let set = PatternSet::new(patterns).unwrap();
    let expected = NaiveMatcher::new(&set).scan(&text);
    for backend in [Backend::Flat, Backend::Compressed] {
        let idx = SuccinctAcIndex::build_from(&set, backend).unwrap();
        assert_eq!(sorted(find_all(&idx, &text)), expected);
    }
}

#[test]
fn invalid_pattern_sets() {
    assert!(PatternSet::new(Vec::<Vec<u8>>::new()).is_err());
    assert!(PatternSet::new(["a", ""]).is_err());
    assert!(PatternSet::new(["a", "b", "a"]).is_err());
}
