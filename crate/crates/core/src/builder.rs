//! Index construction.
//!
//! The prefixes of the patterns are collected in a trie and numbered by
//! suffix-lexicographic rank. Comparing two prefixes right to left means
//! comparing their last symbols, then their parents' strings, so the order
//! is computed by prefix doubling over trie ancestors. Failure links come
//! from the usual breadth-first pass and report links are the nearest
//! terminal ancestor in the failure tree.

use std::collections::HashMap;

use crate::alphabet::AlphabetMap;
use crate::compressed::CompressedTransitions;
use crate::error::{Error, Result};
use crate::index::{
    state_bits_for, Backend, FlatTransitions, IndexMeta, StateId, SuccinctAcIndex,
    TransitionKey, Transitions,
};
use crate::primitives::{EliasFanoArray, IndexableSet};
use crate::tree::BpTree;

/// A validated dictionary: at least one pattern, none empty, no duplicates.
#[derive(Debug, Clone)]
pub struct PatternSet {
    patterns: Vec<Vec<u8>>,
    total_len: u64,
    alphabet: AlphabetMap,
}

impl PatternSet {
    pub fn new<I, P>(patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<u8>>,
    {
        let patterns: Vec<Vec<u8>> = patterns.into_iter().map(Into::into).collect();
        if patterns.is_empty() {
            return Err(Error::NoPatterns);
        }
        let mut seen: HashMap<&[u8], usize> = HashMap::with_capacity(patterns.len());
        for (index, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::EmptyPattern { index });
            }
            if let Some(&first) = seen.get(p.as_slice()) {
                return Err(Error::DuplicatePattern { index, first });
            }
            seen.insert(p, index);
        }
        let total_len = patterns.iter().map(|p| p.len() as u64).sum();
        let alphabet = AlphabetMap::from_patterns(&patterns);
        Ok(PatternSet {
            patterns,
            total_len,
            alphabet,
        })
    }

    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn total_len(&self) -> u64 {
        self.total_len
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    pub fn alphabet(&self) -> &AlphabetMap {
        &self.alphabet
    }
}

/// One distinct prefix, stored at the position equal to its state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixEntry {
    pub len: usize,
    /// State of the prefix one symbol shorter (0 for the root itself).
    pub parent: StateId,
    /// Dense code of the last symbol (0 for the root).
    pub symbol: u16,
    pub terminal: bool,
}

/// All distinct prefixes in suffix-lexicographic order; entry 0 is the
/// empty string.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    entries: Vec<PrefixEntry>,
    alphabet: AlphabetMap,
}

impl PrefixTable {
    /// `m`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PrefixEntry] {
        &self.entries
    }

    pub fn entry(&self, s: StateId) -> &PrefixEntry {
        &self.entries[s]
    }

    pub fn alphabet(&self) -> &AlphabetMap {
        &self.alphabet
    }

    pub fn state_bits(&self) -> u32 {
        state_bits_for(self.len())
    }

    /// The prefix string of state `s`.
    pub fn prefix(&self, s: StateId) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries[s].len);
        let mut cur = s;
        while cur != 0 {
            let e = &self.entries[cur];
            out.push(self.alphabet.decode(e.symbol).expect("symbol in alphabet"));
            cur = e.parent;
        }
        out.reverse();
        out
    }

    /// Terminal states in increasing order.
    pub fn terminal_states(&self) -> Vec<StateId> {
        (0..self.len()).filter(|&s| self.entries[s].terminal).collect()
    }
}

struct Trie {
    parent: Vec<usize>,
    symbol: Vec<u16>,
    depth: Vec<usize>,
    terminal: Vec<bool>,
}

impl Trie {
    fn build(ps: &PatternSet) -> Self {
        let mut trie = Trie {
            parent: vec![0],
            symbol: vec![0],
            depth: vec![0],
            terminal: vec![false],
        };
        let mut children: HashMap<(usize, u16), usize> = HashMap::new();
        for p in ps.patterns() {
            let mut node = 0;
            for &b in p {
                let c = ps.alphabet().encode(b);
                node = *children.entry((node, c)).or_insert_with(|| {
                    trie.parent.push(node);
                    trie.symbol.push(c);
                    trie.depth.push(trie.depth[node] + 1);
                    trie.terminal.push(false);
                    trie.parent.len() - 1
                });
            }
            trie.terminal[node] = true;
        }
        trie
    }

    fn len(&self) -> usize {
        self.parent.len()
    }
}

/// Ranks trie nodes by their strings read right to left.
///
/// `rank_k(v)` orders nodes by the first `k` symbols of their reversed
/// string padded with a terminator below every symbol; combining it with
/// the rank of the `k`-th ancestor gives `rank_2k`.
fn suffix_lex_ranks(trie: &Trie) -> Vec<usize> {
    let m = trie.len();
    let mut rank: Vec<usize> = (0..m)
        .map(|v| if v == 0 { 0 } else { trie.symbol[v] as usize + 1 })
        .collect();
    let mut ancestor = trie.parent.clone();
    let mut order: Vec<usize> = (0..m).collect();
    loop {
        let key = |v: usize| (rank[v], rank[ancestor[v]]);
        order.sort_unstable_by_key(|&v| key(v));
        let mut next = vec![0usize; m];
        let mut distinct = 0;
        for w in 0..m {
            if w > 0 && key(order[w]) != key(order[w - 1]) {
                distinct += 1;
            }
            next[order[w]] = distinct;
        }
        rank = next;
        if distinct + 1 == m {
            return rank;
        }
        ancestor = ancestor.iter().map(|&a| ancestor[a]).collect();
    }
}

/// Orders every distinct prefix of the patterns suffix-lexicographically.
pub fn suffix_lex_order(ps: &PatternSet) -> PrefixTable {
    let trie = Trie::build(ps);
    let rank = suffix_lex_ranks(&trie);
    let mut entries = vec![
        PrefixEntry {
            len: 0,
            parent: 0,
            symbol: 0,
            terminal: false,
        };
        trie.len()
    ];
    for v in 0..trie.len() {
        entries[rank[v]] = PrefixEntry {
            len: trie.depth[v],
            parent: rank[trie.parent[v]],
            symbol: trie.symbol[v],
            terminal: trie.terminal[v],
        };
    }
    PrefixTable {
        entries,
        alphabet: ps.alphabet().clone(),
    }
}

/// One key per non-empty prefix, in state order. The keys come out sorted
/// because of the numbering; this is checked rather than enforced.
pub fn build_transition_pairs(pt: &PrefixTable) -> Result<Vec<TransitionKey>> {
    let bits = pt.state_bits();
    let keys: Vec<TransitionKey> = pt.entries[1..]
        .iter()
        .map(|e| TransitionKey::new(e.symbol, e.parent, bits))
        .collect();
    if let Some(i) = keys.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::Internal(format!(
            "transition keys out of order at state {}",
            i + 2
        )));
    }
    Ok(keys)
}

/// Failure parent of every state; `None` only for the root.
pub fn build_failure_parents(pt: &PrefixTable) -> Result<Vec<Option<StateId>>> {
    let keys = build_transition_pairs(pt)?;
    let bits = pt.state_bits();
    let goto = |s: StateId, c: u16| {
        keys.binary_search(&TransitionKey::new(c, s, bits))
            .ok()
            .map(|r| r + 1)
    };

    let m = pt.len();
    let mut by_depth: Vec<StateId> = (1..m).collect();
    by_depth.sort_by_key(|&s| pt.entries[s].len);

    let mut fail = vec![0usize; m];
    for &s in &by_depth {
        let PrefixEntry { parent, symbol, .. } = pt.entries[s];
        if parent == 0 {
            continue;
        }
        let mut f = fail[parent];
        fail[s] = loop {
            if let Some(t) = goto(f, symbol) {
                break t;
            }
            if f == 0 {
                break 0;
            }
            f = fail[f];
        };
    }
    let parents = parents_from(&fail);
    check_preceding(&parents, "failure")?;
    Ok(parents)
}

/// Report parent of every state: the longest proper suffix that is a
/// pattern, or 0.
pub fn build_report_parents(
    pt: &PrefixTable,
    failure: &[Option<StateId>],
) -> Result<Vec<Option<StateId>>> {
    let m = pt.len();
    if failure.len() != m {
        return Err(Error::Internal("failure array size mismatch".into()));
    }
    let mut report = vec![0usize; m];
    for s in 1..m {
        let f = failure[s].ok_or_else(|| Error::Internal(format!("state {s} has no failure")))?;
        report[s] = if f == 0 {
            0
        } else if pt.entries[f].terminal {
            f
        } else {
            report[f]
        };
    }
    let parents = parents_from(&report);
    check_preceding(&parents, "report")?;
    Ok(parents)
}

fn parents_from(links: &[StateId]) -> Vec<Option<StateId>> {
    std::iter::once(None)
        .chain(links[1..].iter().map(|&p| Some(p)))
        .collect()
}

fn check_preceding(parents: &[Option<StateId>], what: &str) -> Result<()> {
    for (i, p) in parents.iter().enumerate().skip(1) {
        match p {
            Some(p) if *p < i => {}
            _ => {
                return Err(Error::Internal(format!(
                    "{what} parent of state {i} does not precede it"
                )))
            }
        }
    }
    Ok(())
}

/// Builds the full index with the chosen transition backend.
pub fn build_index(ps: &PatternSet, backend: Backend) -> Result<SuccinctAcIndex> {
    let pt = suffix_lex_order(ps);
    let m = pt.len();
    let sigma = ps.sigma();
    let bits = pt.state_bits();

    let pairs = build_transition_pairs(&pt)?;
    let transitions = match backend {
        Backend::Flat => Transitions::Flat(FlatTransitions::build(&pairs, sigma, bits)?),
        Backend::Compressed => {
            Transitions::Compressed(CompressedTransitions::build(&pairs, sigma, m, bits)?)
        }
    };

    let failure = build_failure_parents(&pt)?;
    let report = build_report_parents(&pt, &failure)?;
    let failure_tree = BpTree::from_parents(&failure)
        .map_err(|e| Error::Internal(format!("failure tree: {e}")))?;
    let report_tree = BpTree::from_parents(&report)
        .map_err(|e| Error::Internal(format!("report tree: {e}")))?;

    let terminal_states = pt.terminal_states();
    let keys: Vec<u64> = terminal_states.iter().map(|&s| s as u64).collect();
    let terminals = IndexableSet::build(&keys, m as u64)?;
    let lens: Vec<u64> = terminal_states
        .iter()
        .map(|&s| pt.entries[s].len as u64)
        .collect();
    let lengths = EliasFanoArray::build(&lens)?;

    SuccinctAcIndex::from_parts(
        IndexMeta {
            states: m,
            patterns: ps.len(),
            total_len: ps.total_len(),
            sigma,
            state_bits: bits,
        },
        ps.alphabet().clone(),
        transitions,
        failure_tree,
        report_tree,
        terminals,
        lengths,
    )
}

impl SuccinctAcIndex {
    /// Validates `patterns` and builds an index over them.
    pub fn build<I, P>(patterns: I, backend: Backend) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Vec<u8>>,
    {
        build_index(&PatternSet::new(patterns)?, backend)
    }

    /// Builds an index over an already validated set.
    pub fn build_from(patterns: &PatternSet, backend: Backend) -> Result<Self> {
        build_index(patterns, backend)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> PatternSet {
        PatternSet::new(["ABC", "B", "BC", "CA"]).unwrap()
    }

    #[test]
    fn worked_example_order() {
        let pt = suffix_lex_order(&worked_example());
        let strings: Vec<String> = (0..pt.len())
            .map(|s| String::from_utf8(pt.prefix(s)).unwrap())
            .collect();
        assert_eq!(strings, ["", "A", "CA", "B", "AB", "C", "BC", "ABC"]);
        assert_eq!(pt.terminal_states(), vec![2, 3, 6, 7]);
    }

    #[test]
    fn worked_example_pairs_and_links() {
        let pt = suffix_lex_order(&worked_example());
        let bits = pt.state_bits();
        let pairs: Vec<(u8, usize)> = build_transition_pairs(&pt)
            .unwrap()
            .iter()
            .map(|k| (b"ABC"[k.symbol(bits) as usize], k.state(bits)))
            .collect();
        assert_eq!(
            pairs,
            [(b'A', 0), (b'A', 5), (b'B', 0), (b'B', 1), (b'C', 0), (b'C', 3), (b'C', 4)]
        );
        let failure = build_failure_parents(&pt).unwrap();
        assert_eq!(
            failure,
            [None, Some(0), Some(1), Some(0), Some(3), Some(0), Some(5), Some(6)]
        );
        let report = build_report_parents(&pt, &failure).unwrap();
        assert_eq!(
            report,
            [None, Some(0), Some(0), Some(0), Some(3), Some(0), Some(0), Some(6)]
        );
    }

    #[test]
    fn single_pattern() {
        let ps = PatternSet::new(["X"]).unwrap();
        let pt = suffix_lex_order(&ps);
        assert_eq!(pt.len(), 2);
        assert_eq!(pt.prefix(1), b"X");
        let pairs = build_transition_pairs(&pt).unwrap();
        assert_eq!(pairs, vec![TransitionKey::new(0, 0, 1)]);
        assert_eq!(build_failure_parents(&pt).unwrap(), [None, Some(0)]);

        let idx = build_index(&PatternSet::new(["A"]).unwrap(), Backend::Flat).unwrap();
        assert_eq!(idx.num_states(), 2);
        assert_eq!(idx.terminals().iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn suffix_free_set_has_flat_report_tree() {
        let ps = PatternSet::new(["abc", "abd", "xyz"]).unwrap();
        let pt = suffix_lex_order(&ps);
        let failure = build_failure_parents(&pt).unwrap();
        let report = build_report_parents(&pt, &failure).unwrap();
        assert!(report[1..].iter().all(|&p| p == Some(0)));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            PatternSet::new(Vec::<Vec<u8>>::new()),
            Err(Error::NoPatterns)
        ));
        assert!(matches!(
            PatternSet::new(["a", "", "b"]),
            Err(Error::EmptyPattern { index: 1 })
        ));
        assert!(matches!(
            PatternSet::new(["a", "b", "a"]),
            Err(Error::DuplicatePattern { index: 2, first: 0 })
        ));
    }

    #[test]
    fn worked_example_index() {
        let idx = build_index(&worked_example(), Backend::Flat).unwrap();
        assert_eq!(idx.num_states(), 8);
        assert_eq!(idx.num_patterns(), 4);
        assert_eq!(idx.terminals().iter().collect::<Vec<_>>(), vec![2, 3, 6, 7]);
        let lens: Vec<u64> = (0..4).map(|i| idx.pattern_length(i).unwrap()).collect();
        assert_eq!(lens, vec![2, 1, 2, 3]);
    }
}
