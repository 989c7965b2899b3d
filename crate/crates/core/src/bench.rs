//! Throughput measurement and synthetic texts.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::index::SuccinctAcIndex;
use crate::matcher::{scan, StepCounters};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchResult {
    pub text_len: u64,
    pub reps: usize,
    /// Fastest of the repetitions.
    pub best: Duration,
    pub occurrences: u64,
    pub counters: StepCounters,
}

impl BenchResult {
    pub fn mb_per_sec(&self) -> f64 {
        self.text_len as f64 / 1e6 / self.best.as_secs_f64().max(1e-9)
    }

    /// Automaton transitions per text byte.
    pub fn steps_per_char(&self) -> f64 {
        if self.text_len == 0 {
            0.0
        } else {
            self.counters.transitions() as f64 / self.text_len as f64
        }
    }
}

/// Timing of a text and of the same text repeated twice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleResult {
    pub single: BenchResult,
    pub doubled: BenchResult,
}

impl ScaleResult {
    pub fn ratio(&self) -> f64 {
        self.doubled.best.as_secs_f64() / self.single.best.as_secs_f64().max(1e-9)
    }
}

/// Scans `text` `reps` times, counting occurrences only.
pub fn bench_scan(idx: &SuccinctAcIndex, text: &[u8], reps: usize) -> Result<BenchResult> {
    if reps == 0 {
        return Err(Error::Empty);
    }
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps {
        let t0 = Instant::now();
        let summary = scan(idx, text, |_| {});
        best = best.min(t0.elapsed());
        last = Some(summary);
    }
    let summary = last.unwrap();
    Ok(BenchResult {
        text_len: summary.text_len,
        reps,
        best,
        occurrences: summary.occurrences,
        counters: summary.counters,
    })
}

/// Times `text`, then `text` twice over.
pub fn bench_scaling(idx: &SuccinctAcIndex, text: &[u8], reps: usize) -> Result<ScaleResult> {
    let single = bench_scan(idx, text, reps)?;
    let mut twice = Vec::with_capacity(2 * text.len());
    twice.extend_from_slice(text);
    twice.extend_from_slice(text);
    let doubled = bench_scan(idx, &twice, reps)?;
    Ok(ScaleResult { single, doubled })
}

/// Uniform text over `alphabet`; one in `plant_every` positions (roughly)
/// starts a copy of a random pattern.
pub fn synthetic_text(
    rng: &mut impl Rng,
    alphabet: &[u8],
    patterns: &[Vec<u8>],
    len: usize,
    plant_every: usize,
) -> Vec<u8> {
    let mut text = vec![0u8; len];
    rng.fill_bytes(&mut text);
    let k = alphabet.len();
    for b in text.iter_mut() {
        *b = alphabet[(*b as usize * k) >> 8];
    }
    if !patterns.is_empty() && plant_every > 0 {
        let mut pos = 0;
        while pos < len {
            pos += rng.gen_range(1..=2 * plant_every);
            let p = &patterns[rng.gen_range(0..patterns.len())];
            if pos + p.len() <= len {
                text[pos..pos + p.len()].copy_from_slice(p);
                pos += p.len();
            }
        }
    }
    text
}

/// `count` distinct random patterns with lengths in `min_len..=max_len`.
pub fn random_dictionary(
    rng: &mut impl RngCore,
    alphabet: &[u8],
    count: usize,
    min_len: usize,
    max_len: usize,
) -> Vec<Vec<u8>> {
    let mut seen = std::collections::HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(min_len..=max_len);
        let p: Vec<u8> = (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Distinct random patterns whose lengths add up to exactly `total`.
pub fn dictionary_of_total(
    rng: &mut impl RngCore,
    alphabet: &[u8],
    total: usize,
    min_len: usize,
    max_len: usize,
) -> Vec<Vec<u8>> {
    assert!(min_len >= 1 && min_len <= max_len);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut left = total;
    while left > 0 {
        let len = if left <= max_len {
            left
        } else {
            rng.gen_range(min_len..=max_len.min(left - min_len).max(min_len))
        };
        let p: Vec<u8> = (0..len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        if seen.insert(p.clone()) {
            left -= len;
            out.push(p);
        }
    }
    out
}
