//! The succinct Aho-Corasick index.
//!
//! States are the prefixes of the patterns numbered by suffix-lexicographic
//! rank (strings compared right to left), so the empty prefix is state 0.
//! Under that numbering:
//!
//! - the transition into state `s = pc` is stored as the packed key
//!   `(c << state_bits) + state(p)`, and the keys sorted ascending are in
//!   state order, so `next(p, c) = rank(key) + 1`;
//! - failure links and report links form trees whose DFS preorder is the
//!   state numbering, so both are parent queries on balanced parentheses;
//! - pattern ids are the ranks of terminal states in a dictionary over
//!   `[0, m)`, and pattern lengths sit in an Elias-Fano array.
//!
//! The patterns themselves are not stored; [`SuccinctAcIndex::retrieve_pattern`]
//! rebuilds one by walking transition keys backwards.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{AlphabetMap, UNKNOWN};
use crate::compressed::{CharDistribution, CompressedTransitions};
use crate::error::{out_of_range, Error, Result};
use crate::primitives::{EliasFanoArray, IndexableSet};
use crate::tree::BpTree;
use crate::words::WordReader;

pub type StateId = usize;

/// Smallest `b` with `2^b >= m`.
pub fn state_bits_for(m: usize) -> u32 {
    let mut b = 0;
    while (1u128 << b) < m as u128 {
        b += 1;
    }
    b
}

/// A transition packed as `(symbol << state_bits) + source_state`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionKey(pub u64);

impl TransitionKey {
    #[inline]
    pub fn new(symbol: u16, state: StateId, state_bits: u32) -> Self {
        TransitionKey(((symbol as u64) << state_bits) | state as u64)
    }

    #[inline]
    pub fn symbol(self, state_bits: u32) -> u16 {
        (self.0 >> state_bits) as u16
    }

    #[inline]
    pub fn state(self, state_bits: u32) -> StateId {
        (self.0 & ((1u64 << state_bits) - 1)) as StateId
    }
}

/// One match: `text[start..=end]` equals pattern `pattern_id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: u64,
    pub end: u64,
    pub pattern_id: usize,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.start, self.end, self.pattern_id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// One dictionary over packed `(symbol, state)` keys.
    #[default]
    Flat,
    /// One dictionary per symbol plus an offset table.
    Compressed,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Flat => "flat",
            Backend::Compressed => "compressed",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "flat" => Ok(Backend::Flat),
            "compressed" => Ok(Backend::Compressed),
            other => Err(format!("unknown transition backend `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTransitions {
    state_bits: u32,
    keys: IndexableSet,
}

impl FlatTransitions {
    pub fn build(pairs: &[TransitionKey], sigma: usize, state_bits: u32) -> Result<Self> {
        let raw: Vec<u64> = pairs.iter().map(|k| k.0).collect();
        let universe = (sigma as u64) << state_bits;
        Ok(FlatTransitions {
            state_bits,
            keys: IndexableSet::build(&raw, universe)?,
        })
    }

    pub fn keys(&self) -> &IndexableSet {
        &self.keys
    }

    #[inline]
    fn next_unchecked(&self, state: StateId, symbol: u16) -> Option<StateId> {
        let key = TransitionKey::new(symbol, state, self.state_bits);
        if key.0 >= self.keys.universe() {
            return None;
        }
        self.keys.rank_unchecked(key.0).map(|r| r + 1)
    }

    fn source(&self, state: StateId) -> Result<(u16, StateId)> {
        let key = TransitionKey(self.keys.select(state.wrapping_sub(1))?);
        Ok((key.symbol(self.state_bits), key.state(self.state_bits)))
    }
}

/// The two interchangeable representations of `next` transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transitions {
    Flat(FlatTransitions),
    Compressed(CompressedTransitions),
}

impl Transitions {
    pub fn backend(&self) -> Backend {
        match self {
            Transitions::Flat(_) => Backend::Flat,
            Transitions::Compressed(_) => Backend::Compressed,
        }
    }

    #[inline]
    fn next_unchecked(&self, state: StateId, symbol: u16) -> Option<StateId> {
        match self {
            Transitions::Flat(t) => t.next_unchecked(state, symbol),
            Transitions::Compressed(t) => t.next_unchecked(state, symbol),
        }
    }

    /// Label and source of the transition entering `state`; one select.
    fn source(&self, state: StateId) -> Result<(u16, StateId)> {
        match self {
            Transitions::Flat(t) => t.source(state),
            Transitions::Compressed(t) => t.source(state),
        }
    }

    pub fn payload_bits(&self) -> u64 {
        match self {
            Transitions::Flat(t) => t.keys.payload_bits(),
            Transitions::Compressed(t) => t.payload_bits(),
        }
    }

    pub fn aux_bits(&self) -> u64 {
        match self {
            Transitions::Flat(t) => t.keys.aux_bits(),
            Transitions::Compressed(t) => t.aux_bits(),
        }
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        match self {
            Transitions::Flat(t) => {
                out.push(t.state_bits as u64);
                t.keys.write_words(out);
            }
            Transitions::Compressed(t) => t.write_words(out),
        }
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>, backend: Backend) -> Result<Self> {
        Ok(match backend {
            Backend::Flat => {
                let state_bits = r.next()?;
                if state_bits > 48 {
                    return Err(Error::Corrupt(format!("state bits {state_bits}")));
                }
                Transitions::Flat(FlatTransitions {
                    state_bits: state_bits as u32,
                    keys: IndexableSet::read_words(r)?,
                })
            }
            Backend::Compressed => Transitions::Compressed(CompressedTransitions::read_words(r)?),
        })
    }
}

/// The complete index. Immutable once built and safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccinctAcIndex {
    pub(crate) states: usize,
    pub(crate) patterns: usize,
    pub(crate) total_len: u64,
    pub(crate) state_bits: u32,
    pub(crate) alphabet: AlphabetMap,
    pub(crate) transitions: Transitions,
    pub(crate) failure_tree: BpTree,
    pub(crate) report_tree: BpTree,
    pub(crate) terminals: IndexableSet,
    pub(crate) lengths: EliasFanoArray,
}

/// Header values of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexMeta {
    pub states: usize,
    pub patterns: usize,
    pub total_len: u64,
    pub sigma: usize,
    pub state_bits: u32,
}

impl SuccinctAcIndex {
    /// Assembles an index from its components, checking that they agree.
    pub(crate) fn from_parts(
        meta: IndexMeta,
        alphabet: AlphabetMap,
        transitions: Transitions,
        failure_tree: BpTree,
        report_tree: BpTree,
        terminals: IndexableSet,
        lengths: EliasFanoArray,
    ) -> Result<Self> {
        let m = meta.states;
        let bad = |what: &str| Err(Error::Corrupt(format!("inconsistent index: {what}")));
        if m < 2 || meta.patterns == 0 {
            return bad("needs at least one pattern");
        }
        if meta.state_bits != state_bits_for(m) {
            return bad("state bits");
        }
        if alphabet.sigma() != meta.sigma {
            return bad("alphabet size");
        }
        if failure_tree.len() != m || report_tree.len() != m {
            return bad("tree sizes");
        }
        if terminals.len() != meta.patterns || terminals.universe() != m as u64 {
            return bad("terminal dictionary");
        }
        if terminals.rank(0)?.is_some() {
            return bad("root is terminal");
        }
        if lengths.len() != meta.patterns || lengths.universe() != meta.total_len {
            return bad("length store");
        }
        if m as u64 > meta.total_len + 1 {
            return bad("more states than prefixes");
        }
        match &transitions {
            Transitions::Flat(t) => {
                if t.state_bits != meta.state_bits
                    || t.keys.len() != m - 1
                    || t.keys.universe() != (meta.sigma as u64) << meta.state_bits
                {
                    return bad("transition dictionary");
                }
            }
            Transitions::Compressed(t) => {
                if t.sigma() != meta.sigma || t.distribution().total() != m as u64 - 1 {
                    return bad("per-symbol transition dictionaries");
                }
            }
        }
        Ok(SuccinctAcIndex {
            states: m,
            patterns: meta.patterns,
            total_len: meta.total_len,
            state_bits: meta.state_bits,
            alphabet,
            transitions,
            failure_tree,
            report_tree,
            terminals,
            lengths,
        })
    }

    pub fn meta(&self) -> IndexMeta {
        IndexMeta {
            states: self.states,
            patterns: self.patterns,
            total_len: self.total_len,
            sigma: self.alphabet.sigma(),
            state_bits: self.state_bits,
        }
    }

    /// `m`, the number of states (distinct prefixes, including the empty one).
    pub fn num_states(&self) -> usize {
        self.states
    }

    /// `d`, the number of patterns.
    pub fn num_patterns(&self) -> usize {
        self.patterns
    }

    /// `n`, the total pattern length.
    pub fn total_len(&self) -> u64 {
        self.total_len
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    pub fn state_bits(&self) -> u32 {
        self.state_bits
    }

    pub fn backend(&self) -> Backend {
        self.transitions.backend()
    }

    pub fn alphabet(&self) -> &AlphabetMap {
        &self.alphabet
    }

    pub fn transitions(&self) -> &Transitions {
        &self.transitions
    }

    pub fn failure_tree(&self) -> &BpTree {
        &self.failure_tree
    }

    pub fn report_tree(&self) -> &BpTree {
        &self.report_tree
    }

    pub fn terminals(&self) -> &IndexableSet {
        &self.terminals
    }

    pub fn lengths(&self) -> &EliasFanoArray {
        &self.lengths
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s >= self.states {
            Err(out_of_range(s, self.states))
        } else {
            Ok(())
        }
    }

    /// Target of the `next` transition labelled with dense `symbol`, if any.
    /// [`UNKNOWN`] never has a transition.
    pub fn next_state(&self, s: StateId, symbol: u16) -> Result<Option<StateId>> {
        self.check_state(s)?;
        Ok(self.next_unchecked(s, symbol))
    }

    /// [`next_state`](Self::next_state) on a raw byte.
    pub fn next_state_byte(&self, s: StateId, byte: u8) -> Result<Option<StateId>> {
        self.next_state(s, self.alphabet.encode(byte))
    }

    #[inline]
    pub(crate) fn next_unchecked(&self, s: StateId, symbol: u16) -> Option<StateId> {
        if symbol == UNKNOWN {
            return None;
        }
        self.transitions.next_unchecked(s, symbol)
    }

    /// State of the longest proper suffix of `s` that is itself a prefix.
    pub fn fail_state(&self, s: StateId) -> Result<StateId> {
        self.check_state(s)?;
        if s == 0 {
            return Err(Error::RootTransition("failure"));
        }
        Ok(self.failure_tree.parent_unchecked(s))
    }

    #[inline]
    pub(crate) fn fail_unchecked(&self, s: StateId) -> StateId {
        self.failure_tree.parent_unchecked(s)
    }

    /// State of the longest proper suffix of `s` that is a pattern, or 0.
    pub fn report_state(&self, s: StateId) -> Result<StateId> {
        self.check_state(s)?;
        if s == 0 {
            return Err(Error::RootTransition("report"));
        }
        Ok(self.report_tree.parent_unchecked(s))
    }

    #[inline]
    pub(crate) fn report_unchecked(&self, s: StateId) -> StateId {
        self.report_tree.parent_unchecked(s)
    }

    /// Pattern id of a terminal state.
    pub fn terminal_id(&self, s: StateId) -> Result<Option<usize>> {
        self.check_state(s)?;
        Ok(self.terminal_unchecked(s))
    }

    #[inline]
    pub(crate) fn terminal_unchecked(&self, s: StateId) -> Option<usize> {
        self.terminals.rank_unchecked(s as u64)
    }

    pub fn pattern_length(&self, id: usize) -> Result<u64> {
        self.lengths.access(id)
    }

    #[inline]
    pub(crate) fn pattern_length_unchecked(&self, id: usize) -> u64 {
        self.lengths.access_unchecked(id)
    }

    /// The pattern with id `id`, rebuilt from the transition keys.
    pub fn retrieve_pattern(&self, id: usize) -> Result<Vec<u8>> {
        self.retrieve_pattern_counted(id).map(|(p, _)| p)
    }

    /// Like [`retrieve_pattern`](Self::retrieve_pattern), also returning the
    /// number of select queries issued (`|pattern| + 1`).
    pub fn retrieve_pattern_counted(&self, id: usize) -> Result<(Vec<u8>, usize)> {
        if id >= self.patterns {
            return Err(out_of_range(id, self.patterns));
        }
        let len = self.lengths.access(id)? as usize;
        let mut state = self.terminals.select(id)? as StateId;
        let mut selects = 1;
        let mut rev = Vec::with_capacity(len);
        while state != 0 {
            if rev.len() == len {
                return Err(Error::Corrupt(format!("pattern {id} is longer than its stored length")));
            }
            let (symbol, parent) = self.transitions.source(state)?;
            selects += 1;
            rev.push(
                self.alphabet
                    .decode(symbol)
                    .ok_or_else(|| Error::Corrupt(format!("symbol {symbol} not in alphabet")))?,
            );
            state = parent;
        }
        if rev.len() != len {
            return Err(Error::Corrupt(format!("pattern {id} is shorter than its stored length")));
        }
        rev.reverse();
        Ok((rev, selects))
    }

    /// Transition counts per symbol.
    pub fn char_distribution(&self) -> CharDistribution {
        match &self.transitions {
            Transitions::Compressed(t) => t.distribution(),
            Transitions::Flat(t) => {
                let mut counts = vec![0u64; self.sigma()];
                for key in t.keys.iter() {
                    counts[TransitionKey(key).symbol(self.state_bits) as usize] += 1;
                }
                CharDistribution::new(counts)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(backend: Backend) -> SuccinctAcIndex {
        SuccinctAcIndex::build(["ABC", "B", "BC", "CA"], backend).unwrap()
    }

    #[test]
    fn retrieval_in_id_order() {
        for backend in [Backend::Flat, Backend::Compressed] {
            let idx = example(backend);
            let all: Vec<Vec<u8>> = (0..4).map(|i| idx.retrieve_pattern(i).unwrap()).collect();
            assert_eq!(all, [&b"CA"[..], b"B", b"BC", b"ABC"]);
            assert_eq!(idx.retrieve_pattern_counted(3).unwrap().1, 4);
            assert!(idx.retrieve_pattern(4).is_err());
        }
    }

    #[test]
    fn links_and_root_errors() {
        let idx = example(Backend::Flat);
        assert!(matches!(idx.fail_state(0), Err(Error::RootTransition(_))));
        assert_eq!(idx.fail_state(7).unwrap(), 6);
        assert_eq!(idx.report_state(4).unwrap(), 3);
        assert_eq!(idx.terminal_id(6).unwrap(), Some(2));
        assert_eq!(idx.terminal_id(5).unwrap(), None);
        assert_eq!(idx.next_state_byte(5, b'A').unwrap(), Some(2));
        assert_eq!(idx.next_state_byte(0, b'Z').unwrap(), None);
        assert!(idx.next_state(8, 0).is_err());
    }

    #[test]
    fn key_packing() {
        let k = TransitionKey::new(2, 4, 3);
        assert_eq!(k.0, 20);
        assert_eq!((k.symbol(3), k.state(3)), (2, 4));
        assert_eq!(state_bits_for(8), 3);
        assert_eq!(state_bits_for(9), 4);
    }
}
