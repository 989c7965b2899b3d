//! Per-character transition dictionaries.
//!
//! Instead of one dictionary over packed `(symbol, state)` keys, every
//! symbol `c` gets its own [`IndexableSet`] `I[c]` of source states over
//! the universe `[0, m)`, plus an offset `T[c]`: the number of prefixes
//! that sort before the one-symbol string `c`. The target of the transition
//! `(c, s)` is `T[c] + rank_{I[c]}(s)`. The dictionaries together cost about
//! `m * H0` bits plus a per-key constant, where `H0` is the entropy of the
//! transition labels.

use crate::error::{out_of_range, Error, Result};
use crate::index::TransitionKey;
use crate::primitives::IndexableSet;
use crate::words::WordReader;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedTransitions {
    states: usize,
    offsets: Vec<u64>,
    per_char: Vec<IndexableSet>,
}

/// Transition counts per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharDistribution {
    counts: Vec<u64>,
}

impl CharDistribution {
    pub fn new(counts: Vec<u64>) -> Self {
        CharDistribution { counts }
    }

    pub fn from_pairs(pairs: &[TransitionKey], sigma: usize, state_bits: u32) -> Self {
        let mut counts = vec![0u64; sigma];
        for p in pairs {
            counts[p.symbol(state_bits) as usize] += 1;
        }
        CharDistribution { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Zeroth-order entropy of the distribution, in bits per transition.
pub fn h0_entropy(dist: &CharDistribution) -> f64 {
    let total = dist.total() as f64;
    if total == 0.0 {
        return 0.0;
    }
    dist.counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let c = c as f64;
            (c / total) * (total / c).log2()
        })
        .sum()
}

impl CompressedTransitions {
    /// Splits the sorted pair list of an automaton with `states` states.
    pub fn build(
        pairs: &[TransitionKey],
        sigma: usize,
        states: usize,
        state_bits: u32,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); sigma];
        for p in pairs {
            let c = p.symbol(state_bits) as usize;
            let bucket = buckets.get_mut(c).ok_or_else(|| {
                Error::Internal(format!("transition symbol {c} outside alphabet of {sigma}"))
            })?;
            bucket.push(p.state(state_bits) as u64);
        }
        let mut offsets = Vec::with_capacity(sigma);
        let mut per_char = Vec::with_capacity(sigma);
        let mut before = 1u64;
        for keys in &buckets {
            offsets.push(before);
            before += keys.len() as u64;
            per_char.push(IndexableSet::build(keys, states as u64)?);
        }
        Ok(CompressedTransitions {
            states,
            offsets,
            per_char,
        })
    }

    pub fn sigma(&self) -> usize {
        self.offsets.len()
    }

    /// `T[c]` for every symbol.
    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn per_char(&self) -> &[IndexableSet] {
        &self.per_char
    }

    /// Target of the transition labelled `symbol` out of `state`.
    pub fn next_state(&self, state: usize, symbol: u16) -> Result<Option<usize>> {
        if state >= self.states {
            return Err(out_of_range(state, self.states));
        }
        Ok(self.next_unchecked(state, symbol))
    }

    #[inline]
    pub(crate) fn next_unchecked(&self, state: usize, symbol: u16) -> Option<usize> {
        let c = symbol as usize;
        let set = self.per_char.get(c)?;
        set.rank_unchecked(state as u64)
            .map(|r| self.offsets[c] as usize + r)
    }

    /// Label and source state of the transition entering `state >= 1`.
    pub(crate) fn source(&self, state: usize) -> Result<(u16, usize)> {
        if state == 0 || state >= self.states {
            return Err(out_of_range(state, self.states));
        }
        let c = self.offsets.partition_point(|&t| t <= state as u64) - 1;
        let rank = state - self.offsets[c] as usize;
        let src = self.per_char[c].select(rank)?;
        Ok((c as u16, src as usize))
    }

    pub fn distribution(&self) -> CharDistribution {
        CharDistribution::new(self.per_char.iter().map(|s| s.len() as u64).collect())
    }

    pub fn per_char_payload_bits(&self) -> u64 {
        self.per_char.iter().map(IndexableSet::payload_bits).sum()
    }

    /// `sigma * ceil(log2 m)`.
    pub fn offset_table_bits(&self) -> u64 {
        self.sigma() as u64 * crate::index::state_bits_for(self.states) as u64
    }

    pub fn payload_bits(&self) -> u64 {
        self.per_char_payload_bits() + self.offset_table_bits()
    }

    pub fn aux_bits(&self) -> u64 {
        let offsets_slack = self.sigma() as u64 * 64 - self.offset_table_bits();
        offsets_slack + self.per_char.iter().map(IndexableSet::aux_bits).sum::<u64>()
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.sigma() as u64);
        out.push(self.states as u64);
        out.extend_from_slice(&self.offsets);
        for set in &self.per_char {
            let mut body = Vec::new();
            set.write_words(&mut body);
            out.push(body.len() as u64);
            out.extend_from_slice(&body);
        }
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let sigma = r.next_usize()?;
        let states = r.next_usize()?;
        if sigma == 0 || sigma > 256 {
            return Err(Error::Corrupt(format!("compressed alphabet size {sigma}")));
        }
        let offsets = r.take(sigma)?.to_vec();
        let mut per_char = Vec::with_capacity(sigma);
        for _ in 0..sigma {
            let len = r.next_usize()?;
            let mut body = WordReader::new(r.take(len)?);
            let set = IndexableSet::read_words(&mut body)?;
            body.finish()?;
            if set.universe() != states as u64 {
                return Err(Error::Corrupt("per-symbol dictionary universe mismatch".into()));
            }
            per_char.push(set);
        }
        let mut expect = 1u64;
        for (t, set) in offsets.iter().zip(&per_char) {
            if *t != expect {
                return Err(Error::Corrupt("offset table inconsistent with dictionaries".into()));
            }
            expect += set.len() as u64;
        }
        if expect != states as u64 {
            return Err(Error::Corrupt("per-symbol dictionaries do not cover m - 1 keys".into()));
        }
        Ok(CompressedTransitions {
            states,
            offsets,
            per_char,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> CompressedTransitions {
        // (A,0),(A,5),(B,0),(B,1),(C,0),(C,3),(C,4) with m = 8, 3 state bits.
        let pairs: Vec<TransitionKey> = [(0, 0), (0, 5), (1, 0), (1, 1), (2, 0), (2, 3), (2, 4)]
            .iter()
            .map(|&(c, s)| TransitionKey::new(c, s, 3))
            .collect();
        CompressedTransitions::build(&pairs, 3, 8, 3).unwrap()
    }

    #[test]
    fn worked_example_tables() {
        let ct = worked_example();
        assert_eq!(ct.offsets(), &[1, 3, 5]);
        let sets: Vec<Vec<u64>> = ct.per_char().iter().map(|s| s.iter().collect()).collect();
        assert_eq!(sets, vec![vec![0, 5], vec![0, 1], vec![0, 3, 4]]);
        assert_eq!(ct.next_state(4, 2).unwrap(), Some(7));
        assert_eq!(ct.next_state(0, 0).unwrap(), Some(1));
        assert_eq!(ct.next_state(7, 1).unwrap(), None);
        assert!(ct.next_state(8, 0).is_err());
        assert_eq!(ct.source(7).unwrap(), (2, 4));
        assert_eq!(ct.source(2).unwrap(), (0, 5));
    }

    #[test]
    fn single_symbol() {
        let pairs = [TransitionKey::new(0, 0, 1)];
        let ct = CompressedTransitions::build(&pairs, 1, 2, 1).unwrap();
        assert_eq!(ct.offsets(), &[1]);
        assert_eq!(ct.per_char()[0].iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(h0_entropy(&ct.distribution()), 0.0);
    }

    #[test]
    fn entropy_values() {
        let h = h0_entropy(&worked_example().distribution());
        let expected = 2.0 * (2.0 / 7.0) * (3.5f64).log2() + (3.0 / 7.0) * (7.0f64 / 3.0).log2();
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 1.5567).abs() < 1e-4);
        let uniform = CharDistribution::new(vec![5; 16]);
        assert!((h0_entropy(&uniform) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_symbol_outside_alphabet() {
        let pairs = [TransitionKey::new(3, 0, 2)];
        assert!(CompressedTransitions::build(&pairs, 2, 4, 2).is_err());
    }

    #[test]
    fn word_roundtrip() {
        let ct = worked_example();
        let mut out = Vec::new();
        ct.write_words(&mut out);
        let back = CompressedTransitions::read_words(&mut WordReader::new(&out)).unwrap();
        assert_eq!(back, ct);
    }
}
