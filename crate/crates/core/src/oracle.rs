//! Brute-force reference implementations and a seeded case generator.
//!
//! Nothing here touches the succinct structures: patterns are held
//! explicitly, ids are obtained by sorting reversed patterns, and links are
//! found by trying every suffix.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::builder::{PatternSet, PrefixTable};
use crate::index::{Occurrence, StateId};

/// Patterns kept verbatim, in suffix-lexicographic id order.
#[derive(Debug, Clone)]
pub struct NaiveMatcher {
    patterns: Vec<Vec<u8>>,
}

impl NaiveMatcher {
    pub fn new(ps: &PatternSet) -> Self {
        let mut patterns = ps.patterns().to_vec();
        patterns.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        NaiveMatcher { patterns }
    }

    /// Pattern with the given id.
    pub fn pattern(&self, id: usize) -> &[u8] {
        &self.patterns[id]
    }

    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.patterns
    }

    /// Every `(start, end, id)` with `text[start..=end] == pattern[id]`,
    /// sorted.
    pub fn scan(&self, text: &[u8]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for start in 0..text.len() {
            for (id, p) in self.patterns.iter().enumerate() {
                if text[start..].starts_with(p) {
                    out.push(Occurrence {
                        start: start as u64,
                        end: (start + p.len() - 1) as u64,
                        pattern_id: id,
                    });
                }
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn naive_scan(ps: &PatternSet, text: &[u8]) -> Vec<Occurrence> {
    NaiveMatcher::new(ps).scan(text)
}

fn prefix_strings(pt: &PrefixTable) -> Vec<Vec<u8>> {
    (0..pt.len()).map(|s| pt.prefix(s)).collect()
}

/// Longest proper suffix of each prefix that is in `accept`, or `fallback`.
fn longest_suffix_in(
    strings: &[Vec<u8>],
    accept: &HashMap<&[u8], StateId>,
) -> Vec<Option<StateId>> {
    let mut out = vec![None];
    for s in &strings[1..] {
        let found = (1..=s.len()).find_map(|cut| accept.get(&s[cut..]).copied());
        out.push(Some(found.unwrap_or(0)));
    }
    out
}

/// Failure parents by trying every proper suffix, longest first.
pub fn naive_failure(pt: &PrefixTable) -> Vec<Option<StateId>> {
    let strings = prefix_strings(pt);
    let all: HashMap<&[u8], StateId> = strings
        .iter()
        .enumerate()
        .map(|(s, p)| (p.as_slice(), s))
        .collect();
    longest_suffix_in(&strings, &all)
}

/// Report parents: longest proper suffix that is a pattern of `ps`, else 0.
pub fn naive_report(pt: &PrefixTable, ps: &PatternSet) -> Vec<Option<StateId>> {
    let strings = prefix_strings(pt);
    let patterns: HashSet<&[u8]> = ps.patterns().iter().map(Vec::as_slice).collect();
    let terminal: HashMap<&[u8], StateId> = strings
        .iter()
        .enumerate()
        .filter(|(_, p)| patterns.contains(p.as_slice()))
        .map(|(s, p)| (p.as_slice(), s))
        .collect();
    let mut out = longest_suffix_in(&strings, &terminal);
    // The empty string is never a pattern.
    for p in out.iter_mut().skip(1) {
        if p.is_none() {
            *p = Some(0);
        }
    }
    out
}

/// Symbols of the generator alphabets used by the differential tests.
pub fn alphabet_of_size(sigma: usize) -> Vec<u8> {
    match sigma {
        2 => b"ab".to_vec(),
        4 => b"ACGT".to_vec(),
        26 => (b'a'..=b'z').collect(),
        256 => (0..=255).collect(),
        n => (0..=255u8).take(n.clamp(1, 256)).collect(),
    }
}

/// A random dictionary plus a text over `alphabet`.
#[derive(Debug, Clone)]
pub struct RandomCase {
    pub patterns: Vec<Vec<u8>>,
    pub text: Vec<u8>,
}

/// Limits for [`random_case`].
#[derive(Debug, Clone, Copy)]
pub struct CaseShape {
    pub max_patterns: usize,
    pub max_total_len: usize,
    pub max_text_len: usize,
}

impl Default for CaseShape {
    fn default() -> Self {
        CaseShape {
            max_patterns: 20,
            max_total_len: 200,
            max_text_len: 1000,
        }
    }
}

/// Draws distinct non-empty patterns and a text that is biased towards
/// containing pattern fragments.
pub fn random_case(rng: &mut impl Rng, alphabet: &[u8], shape: CaseShape) -> RandomCase {
    let target = rng.gen_range(1..=shape.max_patterns);
    let mut patterns: Vec<Vec<u8>> = Vec::new();
    let mut seen = HashSet::new();
    let mut total = 0;
    let mut attempts = 0;
    while patterns.len() < target && attempts < 20 * target {
        attempts += 1;
        let room = shape.max_total_len - total;
        if room == 0 {
            break;
        }
        let max_len = room.min(if rng.gen_bool(0.3) { 3 } else { 12 });
        let len = rng.gen_range(1..=max_len);
        let p: Vec<u8> = if !patterns.is_empty() && rng.gen_bool(0.3) {
            // Share a prefix or suffix with an existing pattern.
            let base = patterns.choose(rng).unwrap().clone();
            let keep = rng.gen_range(1..=base.len());
            let extra: Vec<u8> = (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect();
            if rng.gen_bool(0.5) {
                [&base[..keep], &extra[..]].concat()
            } else {
                [&extra[..], &base[base.len() - keep..]].concat()
            }
        } else {
            (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
        };
        if p.len() <= room && seen.insert(p.clone()) {
            total += p.len();
            patterns.push(p);
        }
    }
    if patterns.is_empty() {
        patterns.push(vec![alphabet[0]]);
    }

    let text_len = rng.gen_range(0..=shape.max_text_len);
    let mut text = Vec::with_capacity(text_len + 16);
    while text.len() < text_len {
        if rng.gen_bool(0.5) {
            let p = patterns.choose(rng).unwrap();
            let a = rng.gen_range(0..p.len());
            let b = rng.gen_range(a + 1..=p.len());
            let piece = if rng.gen_bool(0.5) { &p[..] } else { &p[a..b] };
            text.extend_from_slice(piece);
        } else {
            for _ in 0..rng.gen_range(1..=4) {
                text.push(*alphabet.choose(rng).unwrap());
            }
        }
    }
    text.truncate(text_len);
    RandomCase { patterns, text }
}
