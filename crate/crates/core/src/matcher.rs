//! Streaming dictionary matching over a [`SuccinctAcIndex`].
//!
//! For every consumed byte the scanner first moves to the next state
//! (following failure links until a transition exists or the root gives
//! up), then reports: the current state if terminal, followed by every
//! state on its report chain. Occurrences ending at the same position come
//! out longest first.

use crate::alphabet::UNKNOWN;
use crate::index::{Occurrence, StateId, SuccinctAcIndex};

/// Work counters of a scan.
///
/// `next_steps` counts one next transition per consumed byte (a goto taken,
/// the stay at the root, or the jump to the root on an unknown byte).
/// `probes` counts every transition-dictionary query, failed ones included.
/// `fail_steps` and `report_steps` count parent queries on the failure and
/// report trees.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepCounters {
    pub next_steps: u64,
    pub probes: u64,
    pub fail_steps: u64,
    pub report_steps: u64,
}

impl StepCounters {
    /// Automaton transitions taken: next steps plus failure steps.
    pub fn transitions(&self) -> u64 {
        self.next_steps + self.fail_steps
    }
}

/// Mutable state carried across chunks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanState {
    pub state: StateId,
    /// Bytes consumed so far.
    pub step: u64,
    pub counters: StepCounters,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub text_len: u64,
    pub occurrences: u64,
    pub counters: StepCounters,
}

/// Incremental scanner borrowing a shared index.
#[derive(Debug, Clone)]
pub struct Scanner<'a> {
    index: &'a SuccinctAcIndex,
    scan: ScanState,
    occurrences: u64,
}

impl<'a> Scanner<'a> {
    pub fn new(index: &'a SuccinctAcIndex) -> Self {
        Scanner {
            index,
            scan: ScanState::default(),
            occurrences: 0,
        }
    }

    pub fn state(&self) -> &ScanState {
        &self.scan
    }

    /// Consumes `chunk`, pushing every occurrence that ends inside it.
    pub fn feed<F: FnMut(Occurrence)>(&mut self, chunk: &[u8], sink: &mut F) {
        let idx = self.index;
        let alphabet = idx.alphabet();
        let ScanState {
            mut state,
            mut step,
            mut counters,
        } = self.scan;
        let mut found = 0u64;

        for &byte in chunk {
            step += 1;
            counters.next_steps += 1;
            let c = alphabet.encode(byte);
            if c == UNKNOWN {
                state = 0;
                continue;
            }
            state = loop {
                counters.probes += 1;
                if let Some(t) = idx.next_unchecked(state, c) {
                    break t;
                }
                if state == 0 {
                    break 0;
                }
                counters.fail_steps += 1;
                state = idx.fail_unchecked(state);
            };
            if state == 0 {
                continue;
            }

            let mut emit = |s: StateId| {
                let id = idx
                    .terminal_unchecked(s)
                    .expect("report chain only visits terminal states");
                let len = idx.pattern_length_unchecked(id);
                sink(Occurrence {
                    start: step - len,
                    end: step - 1,
                    pattern_id: id,
                });
            };
            if idx.terminal_unchecked(state).is_some() {
                emit(state);
                found += 1;
            }
            let mut tmp = state;
            loop {
                counters.report_steps += 1;
                tmp = idx.report_unchecked(tmp);
                if tmp == 0 {
                    break;
                }
                emit(tmp);
                found += 1;
            }
        }

        self.scan = ScanState {
            state,
            step,
            counters,
        };
        self.occurrences += found;
    }

    pub fn summary(&self) -> ScanSummary {
        ScanSummary {
            text_len: self.scan.step,
            occurrences: self.occurrences,
            counters: self.scan.counters,
        }
    }
}

/// Scans `text` in one piece.
pub fn scan<F: FnMut(Occurrence)>(index: &SuccinctAcIndex, text: &[u8], mut sink: F) -> ScanSummary {
    let mut scanner = Scanner::new(index);
    scanner.feed(text, &mut sink);
    scanner.summary()
}

/// Scans the concatenation of `chunks`; positions are global.
pub fn scan_chunked<I, C, F>(index: &SuccinctAcIndex, chunks: I, mut sink: F) -> ScanSummary
where
    I: IntoIterator<Item = C>,
    C: AsRef<[u8]>,
    F: FnMut(Occurrence),
{
    let mut scanner = Scanner::new(index);
    for chunk in chunks {
        scanner.feed(chunk.as_ref(), &mut sink);
    }
    scanner.summary()
}

/// Collects every occurrence of `text` into a vector, in emission order.
pub fn find_all(index: &SuccinctAcIndex, text: &[u8]) -> Vec<Occurrence> {
    let mut out = Vec::new();
    scan(index, text, |o| out.push(o));
    out
}
