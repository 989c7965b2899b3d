//! On-disk index file.
//!
//! ```text
//! 0   magic "SDMX1\0\0\0"
//! 8   version u32
//! 12  flags u32            bit 0: compressed transitions
//! 16  m, d, n, sigma, state_bits   u64 each
//! 56  section table        6 x (offset u64, length u64), byte units
//! 152 sections             each: word count u64, then that many u64 words
//! ... checksum u64         CRC-64/XZ of every preceding byte
//! ```
//!
//! Sections appear in the order alphabet, transitions, failure tree, report
//! tree, terminals, lengths. All integers are little-endian.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crc::{Crc, CRC_64_XZ};

use crate::alphabet::AlphabetMap;
use crate::error::{Error, Result};
use crate::index::{Backend, IndexMeta, SuccinctAcIndex, Transitions};
use crate::primitives::{EliasFanoArray, IndexableSet};
use crate::tree::BpTree;
use crate::words::WordReader;

pub const MAGIC: [u8; 8] = *b"SDMX1\0\0\0";
pub const VERSION: u32 = 1;
pub const FLAG_COMPRESSED: u32 = 1;
pub const SECTION_NAMES: [&str; 6] = [
    "alphabet",
    "transitions",
    "failure_tree",
    "report_tree",
    "terminals",
    "lengths",
];

const HEADER_LEN: usize = 8 + 4 + 4 + 5 * 8;
const TABLE_LEN: usize = SECTION_NAMES.len() * 16;
const CRC: Crc<u64> = Crc::<u64>::new(&CRC_64_XZ);

/// Byte range of one section inside the file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Section {
    pub offset: u64,
    pub len: u64,
}

fn section_words(idx: &SuccinctAcIndex) -> [Vec<u64>; 6] {
    let mut s: [Vec<u64>; 6] = Default::default();
    idx.alphabet.write_words(&mut s[0]);
    idx.transitions.write_words(&mut s[1]);
    idx.failure_tree.write_words(&mut s[2]);
    idx.report_tree.write_words(&mut s[3]);
    idx.terminals.write_words(&mut s[4]);
    idx.lengths.write_words(&mut s[5]);
    s
}

/// Serializes `idx` into a complete file image.
pub fn to_bytes(idx: &SuccinctAcIndex) -> Vec<u8> {
    let sections = section_words(idx);
    let body: usize = sections.iter().map(|s| 8 + 8 * s.len()).sum();
    let mut out = Vec::with_capacity(HEADER_LEN + TABLE_LEN + body + 8);

    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let flags = match idx.backend() {
        Backend::Flat => 0,
        Backend::Compressed => FLAG_COMPRESSED,
    };
    out.extend_from_slice(&flags.to_le_bytes());
    let meta = idx.meta();
    for v in [
        meta.states as u64,
        meta.patterns as u64,
        meta.total_len,
        meta.sigma as u64,
        meta.state_bits as u64,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }

    let mut offset = (HEADER_LEN + TABLE_LEN) as u64;
    for s in &sections {
        let len = 8 + 8 * s.len() as u64;
        out.extend_from_slice(&offset.to_le_bytes());
        out.extend_from_slice(&len.to_le_bytes());
        offset += len;
    }
    for s in &sections {
        out.extend_from_slice(&(s.len() as u64).to_le_bytes());
        for w in s {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }
    let sum = CRC.checksum(&out);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::Corrupt(msg.into())
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

/// Validates the framing of a file image and returns its section table.
pub fn read_sections(bytes: &[u8]) -> Result<(u32, IndexMeta, [Section; 6])> {
    if bytes.len() < 8 || bytes[..8] != MAGIC {
        return Err(corrupt("not an index file (bad magic)"));
    }
    if bytes.len() < HEADER_LEN + TABLE_LEN + 8 {
        return Err(corrupt("file truncated"));
    }
    let version = u32_at(bytes, 8);
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let (payload, tail) = bytes.split_at(bytes.len() - 8);
    let stored = u64_at(tail, 0);
    let actual = CRC.checksum(payload);
    if stored != actual {
        return Err(corrupt(format!(
            "checksum mismatch (stored {stored:016x}, computed {actual:016x})"
        )));
    }

    let flags = u32_at(bytes, 12);
    if flags & !FLAG_COMPRESSED != 0 {
        return Err(corrupt(format!("unknown flags {flags:#x}")));
    }
    let field = |i: usize| -> Result<usize> {
        let v = u64_at(bytes, 16 + 8 * i);
        usize::try_from(v).map_err(|_| corrupt("header value out of range"))
    };
    let state_bits = field(4)?;
    if state_bits > 48 {
        return Err(corrupt("state bits out of range"));
    }
    let meta = IndexMeta {
        states: field(0)?,
        patterns: field(1)?,
        total_len: u64_at(bytes, 32),
        sigma: field(3)?,
        state_bits: state_bits as u32,
    };

    let mut sections = [Section { offset: 0, len: 0 }; 6];
    let mut expected = (HEADER_LEN + TABLE_LEN) as u64;
    for (i, s) in sections.iter_mut().enumerate() {
        let at = HEADER_LEN + 16 * i;
        *s = Section {
            offset: u64_at(bytes, at),
            len: u64_at(bytes, at + 8),
        };
        // Sections are packed back to back, which rules out overlap.
        if s.offset != expected || s.len < 8 || s.len % 8 != 0 {
            return Err(corrupt(format!("bad section table entry for {}", SECTION_NAMES[i])));
        }
        expected = s
            .offset
            .checked_add(s.len)
            .filter(|&e| e <= payload.len() as u64)
            .ok_or_else(|| corrupt(format!("section {} exceeds file", SECTION_NAMES[i])))?;
    }
    if expected != payload.len() as u64 {
        return Err(corrupt("unaccounted bytes after last section"));
    }
    Ok((flags, meta, sections))
}

fn section_body(bytes: &[u8], s: Section, name: &str) -> Result<Vec<u64>> {
    let raw = &bytes[s.offset as usize..(s.offset + s.len) as usize];
    let count = u64_at(raw, 0);
    if count != s.len / 8 - 1 {
        return Err(corrupt(format!("section {name}: word count disagrees with length")));
    }
    Ok(raw[8..]
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

fn decode<T>(
    bytes: &[u8],
    s: Section,
    name: &str,
    f: impl FnOnce(&mut WordReader<'_>) -> Result<T>,
) -> Result<T> {
    let words = section_body(bytes, s, name)?;
    let mut r = WordReader::new(&words);
    let v = f(&mut r).map_err(|e| match e {
        Error::Corrupt(m) => corrupt(format!("section {name}: {m}")),
        other => other,
    })?;
    r.finish()
        .map_err(|e| corrupt(format!("section {name}: {e}")))?;
    Ok(v)
}

/// Parses a file image produced by [`to_bytes`].
pub fn from_bytes(bytes: &[u8]) -> Result<SuccinctAcIndex> {
    let (flags, meta, s) = read_sections(bytes)?;
    let backend = if flags & FLAG_COMPRESSED != 0 {
        Backend::Compressed
    } else {
        Backend::Flat
    };
    let n = SECTION_NAMES;
    let alphabet = decode(bytes, s[0], n[0], AlphabetMap::read_words)?;
    let transitions = decode(bytes, s[1], n[1], |r| Transitions::read_words(r, backend))?;
    let failure_tree = decode(bytes, s[2], n[2], BpTree::read_words)?;
    let report_tree = decode(bytes, s[3], n[3], BpTree::read_words)?;
    let terminals = decode(bytes, s[4], n[4], IndexableSet::read_words)?;
    let lengths = decode(bytes, s[5], n[5], EliasFanoArray::read_words)?;
    SuccinctAcIndex::from_parts(
        meta,
        alphabet,
        transitions,
        failure_tree,
        report_tree,
        terminals,
        lengths,
    )
}

pub fn write_to<W: Write>(idx: &SuccinctAcIndex, mut w: W) -> Result<()> {
    w.write_all(&to_bytes(idx))?;
    Ok(())
}

pub fn read_from<R: Read>(mut r: R) -> Result<SuccinctAcIndex> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    from_bytes(&bytes)
}

pub fn save(idx: &SuccinctAcIndex, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_bytes(idx))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<SuccinctAcIndex> {
    from_bytes(&fs::read(path)?)
}

impl SuccinctAcIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        to_bytes(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        from_bytes(bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        save(self, path)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        load(path)
    }
}
