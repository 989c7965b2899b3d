//! Dense remapping of the bytes that occur in the pattern set.

use crate::error::{Error, Result};
use crate::words::WordReader;

/// Dense code of a byte that does not occur in any pattern.
pub const UNKNOWN: u16 = u16::MAX;

/// Order-preserving bijection between the bytes used by the patterns and
/// the codes `0..sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMap {
    dense: [u16; 256],
    symbols: Vec<u8>,
}

impl AlphabetMap {
    /// Builds the map over every byte that appears in `patterns`.
    pub fn from_patterns<P: AsRef<[u8]>>(patterns: &[P]) -> Self {
        let mut seen = [false; 256];
        for p in patterns {
            for &b in p.as_ref() {
                seen[b as usize] = true;
            }
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_symbols(symbols)
    }

    fn from_symbols(symbols: Vec<u8>) -> Self {
        let mut dense = [UNKNOWN; 256];
        for (code, &b) in symbols.iter().enumerate() {
            dense[b as usize] = code as u16;
        }
        AlphabetMap { dense, symbols }
    }

    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn encode(&self, byte: u8) -> u16 {
        self.dense[byte as usize]
    }

    pub fn decode(&self, code: u16) -> Option<u8> {
        self.symbols.get(code as usize).copied()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// The stored symbol list, 8 bits per symbol.
    pub fn payload_bits(&self) -> u64 {
        self.symbols.len() as u64 * 8
    }

    /// The in-memory byte-to-code lookup table.
    pub fn aux_bits(&self) -> u64 {
        256 * 16
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.symbols.len() as u64);
        for chunk in self.symbols.chunks(8) {
            let mut bytes = [0u8; 8];
            bytes[..chunk.len()].copy_from_slice(chunk);
            out.push(u64::from_le_bytes(bytes));
        }
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let sigma = r.next_usize()?;
        if sigma == 0 || sigma > 256 {
            return Err(Error::Corrupt(format!("alphabet size {sigma}")));
        }
        let mut symbols = Vec::with_capacity(sigma);
        for &w in r.take(sigma.div_ceil(8))? {
            symbols.extend_from_slice(&w.to_le_bytes());
        }
        symbols.truncate(sigma);
        if symbols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Corrupt("alphabet symbols not increasing".into()));
        }
        Ok(Self::from_symbols(symbols))
    }
}
