//! Succinct Aho-Corasick dictionary matching.
//!
//! Patterns are compiled into a [`SuccinctAcIndex`]: transitions live in an
//! indexable set of `(symbol, parent)` keys, failure and report links in two
//! balanced-parentheses trees, and pattern lengths in an Elias-Fano array.
//! Texts are scanned with [`scan`] or incrementally with [`Scanner`].
//!
//! ```
//! use succinct_ac::{find_all, Backend, SuccinctAcIndex};
//!
//! let idx = SuccinctAcIndex::build(["ABC", "B", "BC", "CA"], Backend::Flat).unwrap();
//! let hits = find_all(&idx, b"ABCA");
//! assert_eq!(hits.len(), 4);
//! assert_eq!(idx.retrieve_pattern(hits[0].pattern_id).unwrap(), b"B");
//! ```

pub mod alphabet;
pub mod bench;
pub mod builder;
pub mod cli;
pub mod compressed;
pub mod error;
pub mod format;
pub mod index;
pub mod matcher;
pub mod oracle;
pub mod primitives;
pub mod stats;
pub mod tree;
mod words;

pub use builder::{build_index, PatternSet, PrefixTable};
pub use error::{Error, Result};
pub use index::{Backend, Occurrence, StateId, SuccinctAcIndex};
pub use matcher::{find_all, scan, scan_chunked, ScanSummary, Scanner, StepCounters};
pub use stats::{space_report, SpaceReport};
