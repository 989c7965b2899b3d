//! Plain bitvector with a two-level rank directory and sampled select.
//!
//! Layout of the directory:
//! - one absolute `u64` count per superblock of 4096 bits,
//! - one `u16` count per block of 512 bits, relative to its superblock,
//! - one `u32` block hint per 512 set (resp. unset) bits for select.
//!
//! `rank1` is a directory lookup plus at most eight popcounts. `select1` and
//! `select0` search the blocks bracketed by two samples, then scan at most
//! eight words and finish with a broadword in-word select.

use crate::error::{out_of_range, Result};
use crate::words::WordReader;

const WORD_BITS: usize = 64;
const BLOCK_WORDS: usize = 8;
const SUPER_WORDS: usize = 64;
const BLOCK_BITS: usize = BLOCK_WORDS * WORD_BITS;
const SELECT_SAMPLE: usize = 512;
const BLOCKS_PER_SUPER: usize = SUPER_WORDS / BLOCK_WORDS;

/// Mutable bit buffer used to assemble a [`BitVector`].
#[derive(Debug, Clone, Default)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    /// A buffer of `len` zero bits.
    pub fn zeros(len: usize) -> Self {
        BitBuf {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitBuf {
            words: Vec::with_capacity(bits.div_ceil(WORD_BITS)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD_BITS] |= 1 << (self.len % WORD_BITS);
        }
        self.len += 1;
    }

    /// Sets bit `i`; panics if `i >= len`.
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of buffer of {} bits", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn freeze(self) -> BitVector {
        BitVector::from_words(self.words, self.len)
    }
}

/// Immutable bitvector supporting `rank1`, `select1` and `select0`.
#[derive(Debug, Clone)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

impl BitVector {
    /// Wraps `words` holding `len` bits; bits at positions `>= len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % WORD_BITS)) - 1;
        }

        let n_blocks = words.len().div_ceil(BLOCK_WORDS);
        let n_supers = words.len().div_ceil(SUPER_WORDS);
        let mut supers = Vec::with_capacity(n_supers);
        let mut blocks = Vec::with_capacity(n_blocks);
        let mut select1_hints = Vec::new();
        let mut select0_hints = Vec::new();

        let mut total = 0usize;
        for (sb, chunk) in words.chunks(SUPER_WORDS).enumerate() {
            supers.push(total as u64);
            let mut rel = 0usize;
            for (i, block) in chunk.chunks(BLOCK_WORDS).enumerate() {
                let b = sb * BLOCKS_PER_SUPER + i;
                blocks.push(rel as u16);
                let ones_here = block.iter().map(|w| w.count_ones() as usize).sum::<usize>();
                let bits_here = (len - b * BLOCK_BITS).min(BLOCK_BITS);
                let ones_before = total + rel;
                let zeros_before = b * BLOCK_BITS - ones_before;
                // Sample k*SELECT_SAMPLE lives in this block when the running
                // count crosses it here.
                while select1_hints.len() * SELECT_SAMPLE < ones_before + ones_here {
                    select1_hints.push(b as u32);
                }
                while select0_hints.len() * SELECT_SAMPLE < zeros_before + bits_here - ones_here {
                    select0_hints.push(b as u32);
                }
                rel += ones_here;
            }
            total += rel;
        }

        BitVector {
            words,
            len,
            ones: total,
            supers,
            blocks,
            select1_hints,
            select0_hints,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut buf = BitBuf::with_capacity(bits.len());
        for &b in bits {
            buf.push(b);
        }
        buf.freeze()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of bitvector of {} bits", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Number of set bits in `[0, i)`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(out_of_range(i, self.len));
        }
        Ok(self.rank1_unchecked(i))
    }

    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    #[inline]
    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        if i == self.len {
            return self.ones;
        }
        let w = i / WORD_BITS;
        let block = w / BLOCK_WORDS;
        let mut r = self.supers[w / SUPER_WORDS] as usize + self.blocks[block] as usize;
        for word in &self.words[block * BLOCK_WORDS..w] {
            r += word.count_ones() as usize;
        }
        let bit = i % WORD_BITS;
        if bit != 0 {
            r += (self.words[w] << (WORD_BITS - bit)).count_ones() as usize;
        }
        r
    }

    /// Position of the `k`-th set bit (0-based rank).
    pub fn select1(&self, k: usize) -> Result<usize> {
        if k >= self.ones {
            return Err(out_of_range(k, self.ones));
        }
        Ok(self.select1_unchecked(k))
    }

    /// Position of the `k`-th unset bit (0-based rank).
    pub fn select0(&self, k: usize) -> Result<usize> {
        if k >= self.count_zeros() {
            return Err(out_of_range(k, self.count_zeros()));
        }
        Ok(self.select0_unchecked(k))
    }

    #[inline]
    fn block_rank1(&self, b: usize) -> usize {
        self.supers[b / BLOCKS_PER_SUPER] as usize + self.blocks[b] as usize
    }

    #[inline]
    fn block_rank0(&self, b: usize) -> usize {
        b * BLOCK_BITS - self.block_rank1(b)
    }

    /// Last block `b` in the sampled range for `k` with `rank(b) <= k`.
    #[inline]
    fn select_block(&self, hints: &[u32], k: usize, rank: impl Fn(usize) -> usize) -> usize {
        let s = k / SELECT_SAMPLE;
        let mut lo = hints[s] as usize;
        let mut hi = hints.get(s + 1).map_or(self.blocks.len() - 1, |&h| h as usize);
        if hi - lo <= 8 {
            while lo < hi && rank(lo + 1) <= k {
                lo += 1;
            }
            return lo;
        }
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if rank(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    #[inline]
    pub(crate) fn select1_unchecked(&self, k: usize) -> usize {
        debug_assert!(k < self.ones);
        let block = self.select_block(&self.select1_hints, k, |b| self.block_rank1(b));
        let mut rem = k - self.block_rank1(block);
        let mut w = block * BLOCK_WORDS;
        loop {
            let c = self.words[w].count_ones() as usize;
            if rem < c {
                return w * WORD_BITS + select_in_word(self.words[w], rem);
            }
            rem -= c;
            w += 1;
        }
    }

    #[inline]
    pub(crate) fn select0_unchecked(&self, k: usize) -> usize {
        debug_assert!(k < self.count_zeros());
        let block = self.select_block(&self.select0_hints, k, |b| self.block_rank0(b));
        let mut rem = k - self.block_rank0(block);
        let mut w = block * BLOCK_WORDS;
        loop {
            let inv = !self.words[w];
            let c = inv.count_ones() as usize;
            if rem < c {
                return w * WORD_BITS + select_in_word(inv, rem);
            }
            rem -= c;
            w += 1;
        }
    }

    /// Bits of the raw bit array (`len`, word padding excluded).
    pub fn payload_bits(&self) -> u64 {
        self.len as u64
    }

    /// Bits of the rank/select directories plus word padding.
    pub fn aux_bits(&self) -> u64 {
        let padding = (self.words.len() * WORD_BITS - self.len) as u64;
        padding
            + self.supers.len() as u64 * 64
            + self.blocks.len() as u64 * 16
            + (self.select1_hints.len() + self.select0_hints.len()) as u64 * 32
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.len as u64);
        out.extend_from_slice(&self.words);
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let len = r.next_usize()?;
        let words = r.take(len.div_ceil(WORD_BITS))?.to_vec();
        Ok(BitVector::from_words(words, len))
    }
}

impl PartialEq for BitVector {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for BitVector {}

/// Position of the `k`-th set bit of `w`; `k < w.count_ones()`.
///
/// Byte-wise prefix popcounts in one multiply locate the byte, a table
/// finishes inside it.
#[inline]
pub(crate) fn select_in_word(w: u64, k: usize) -> usize {
    const ONES: u64 = 0x0101_0101_0101_0101;
    const HIGHS: u64 = 0x8080_8080_8080_8080;
    let mut s = w - ((w >> 1) & 0x5555_5555_5555_5555);
    s = (s & 0x3333_3333_3333_3333) + ((s >> 2) & 0x3333_3333_3333_3333);
    s = (s + (s >> 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    let prefix = s.wrapping_mul(ONES);
    // High bit of byte i set when prefix count through byte i is <= k.
    let le = ((k as u64 * ONES) | HIGHS).wrapping_sub(prefix) & HIGHS;
    let byte = le.count_ones() as usize;
    let before = if byte == 0 {
        0
    } else {
        ((prefix >> (8 * (byte - 1))) & 0xff) as usize
    };
    let b = ((w >> (8 * byte)) & 0xff) as usize;
    8 * byte + SELECT_IN_BYTE[(k - before) * 256 + b] as usize
}

/// `SELECT_IN_BYTE[k * 256 + b]`: position of the `k`-th set bit of `b`.
static SELECT_IN_BYTE: [u8; 2048] = {
    let mut t = [0u8; 2048];
    let mut b = 0;
    while b < 256 {
        let (mut k, mut bit) = (0, 0);
        while bit < 8 {
            if (b >> bit) & 1 == 1 {
                t[k * 256 + b] = bit as u8;
                k += 1;
            }
            bit += 1;
        }
        b += 1;
    }
    t
};
