//! Elias-Fano coded integer arrays.
//!
//! An array `A[0..n)` with `sum(A) = U` is stored through its inclusive
//! prefix sums `S_i = A[0] + ... + A[i]`. Each `S_i` is split into
//! `low_width` low bits, packed into a flat array, and a high part `S_i >>
//! low_width` stored in unary: bit `(S_i >> low_width) + i` of a `2n`-bit
//! vector is set. With `low_width` the smallest `l` such that `n * 2^l >= U`
//! the high part never exceeds `n`, so the payload is exactly
//! `n * (low_width + 2)` bits.

use crate::error::{out_of_range, Error, Result};
use crate::primitives::bitvec::{BitBuf, BitVector};
use crate::words::WordReader;

/// Fixed-width integers packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PackedInts {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl PackedInts {
    pub(crate) fn new(width: u32, len: usize) -> Self {
        assert!(width <= 64);
        let bits = width as usize * len;
        PackedInts {
            words: vec![0; bits.div_ceil(64)],
            width,
            len,
        }
    }

    #[inline]
    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    pub(crate) fn set(&mut self, i: usize, value: u64) {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return;
        }
        let value = value & self.mask();
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        self.words[w] &= !(self.mask() << off);
        self.words[w] |= value << off;
        if off + self.width as usize > 64 {
            let spill = 64 - off;
            self.words[w + 1] &= !(self.mask() >> spill);
            self.words[w + 1] |= value >> spill;
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        let mut v = self.words[w] >> off;
        if off + self.width as usize > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        v & self.mask()
    }

    fn storage_bits(&self) -> u64 {
        self.words.len() as u64 * 64
    }

    fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.width as u64);
        out.push(self.len as u64);
        out.extend_from_slice(&self.words);
    }

    fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let width = r.next()?;
        if width > 64 {
            return Err(Error::Corrupt(format!("packed width {width} exceeds 64")));
        }
        let len = r.next_usize()?;
        let bits = (width as usize)
            .checked_mul(len)
            .ok_or_else(|| Error::Corrupt("packed array too large".into()))?;
        let words = r.take(bits.div_ceil(64))?.to_vec();
        Ok(PackedInts {
            words,
            width: width as u32,
            len,
        })
    }
}

/// Compressed array of non-negative integers with constant-time access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliasFanoArray {
    n: usize,
    universe: u64,
    low: PackedInts,
    high: BitVector,
}

/// Smallest `l` with `n * 2^l >= universe`.
pub(crate) fn low_width_for(n: usize, universe: u64) -> u32 {
    let n = n as u128;
    let u = universe as u128;
    let mut l = 0u32;
    while (n << l) < u {
        l += 1;
    }
    l
}

impl EliasFanoArray {
    /// Encodes `values`; fails on an empty array or if the total overflows.
    pub fn build(values: &[u64]) -> Result<Self> {
        let mut sums = Vec::with_capacity(values.len());
        let mut acc = 0u64;
        for &v in values {
            acc = acc.checked_add(v).ok_or(Error::Overflow)?;
            sums.push(acc);
        }
        Self::from_prefix_sums(&sums)
    }

    /// Encodes an array given directly by its non-decreasing inclusive
    /// prefix sums.
    pub(crate) fn from_prefix_sums(sums: &[u64]) -> Result<Self> {
        let n = sums.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let universe = sums[n - 1];
        let width = low_width_for(n, universe);
        let mut low = PackedInts::new(width, n);
        let mut high = BitBuf::zeros(2 * n);
        let mut prev = 0u64;
        for (i, &s) in sums.iter().enumerate() {
            if s < prev {
                return Err(Error::Unsorted { position: i });
            }
            prev = s;
            low.set(i, s);
            let h = (s >> width) as usize;
            debug_assert!(h <= n);
            high.set(h + i);
        }
        Ok(EliasFanoArray {
            n,
            universe,
            low,
            high: high.freeze(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Sum of all elements.
    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn low_width(&self) -> u32 {
        self.low.width
    }

    /// `A[i]`.
    pub fn access(&self, i: usize) -> Result<u64> {
        if i >= self.n {
            return Err(out_of_range(i, self.n));
        }
        Ok(self.access_unchecked(i))
    }

    #[inline]
    pub(crate) fn access_unchecked(&self, i: usize) -> u64 {
        let hi = self.prefix_sum_unchecked(i);
        if i == 0 {
            hi
        } else {
            hi - self.prefix_sum_unchecked(i - 1)
        }
    }

    /// `A[0] + ... + A[i]`.
    pub fn prefix_sum(&self, i: usize) -> Result<u64> {
        if i >= self.n {
            return Err(out_of_range(i, self.n));
        }
        Ok(self.prefix_sum_unchecked(i))
    }

    #[inline]
    pub(crate) fn prefix_sum_unchecked(&self, i: usize) -> u64 {
        let high = (self.high.select1_unchecked(i) - i) as u64;
        (high << self.low.width) | self.low.get(i)
    }

    /// Index of the element whose prefix sum equals `value`, if any.
    ///
    /// Locates the high-part bucket through `select0` and binary searches
    /// the low parts inside it. When the bucket's run of ones ends inside
    /// the same word as its first bit, the second `select0` is skipped.
    #[inline]
    pub(crate) fn find_prefix_sum(&self, value: u64) -> Option<usize> {
        if value > self.universe {
            return None;
        }
        let width = self.low.width;
        let bucket = (value >> width) as usize;
        let max_bucket = (self.universe >> width) as usize;
        let first = if bucket == 0 {
            0
        } else {
            self.high.select0_unchecked(bucket - 1) + 1
        };
        let start = first - bucket;
        let words = self.high.words();
        let off = first % 64;
        let run = match words.get(first / 64) {
            Some(&w) => (w >> off).trailing_ones() as usize,
            None => 0,
        };
        let end = if bucket >= max_bucket {
            self.n
        } else if run < 64 - off {
            start + run
        } else {
            self.high.select0_unchecked(bucket) - bucket
        };
        let target = if width == 64 {
            value
        } else {
            value & ((1u64 << width) - 1)
        };
        let (mut lo, mut hi) = (start, end);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.low.get(mid) < target {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        (lo < end && self.low.get(lo) == target).then_some(lo)
    }

    /// Exactly `n * (low_width + 2)`.
    pub fn payload_bits(&self) -> u64 {
        self.n as u64 * (self.low.width as u64 + 2)
    }

    /// Directories of the high bitvector plus word padding of both arrays.
    pub fn aux_bits(&self) -> u64 {
        let low_padding = self.low.storage_bits() - self.n as u64 * self.low.width as u64;
        self.high.aux_bits() + low_padding
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.n as u64);
        out.push(self.universe);
        self.low.write_words(out);
        self.high.write_words(out);
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let n = r.next_usize()?;
        let universe = r.next()?;
        let low = PackedInts::read_words(r)?;
        let high = BitVector::read_words(r)?;
        if n == 0
            || low.len != n
            || low.width != low_width_for(n, universe)
            || high.len() != 2 * n
            || high.count_ones() != n
        {
            return Err(Error::Corrupt("inconsistent Elias-Fano header".into()));
        }
        let ef = EliasFanoArray {
            n,
            universe,
            low,
            high,
        };
        if ef.prefix_sum_unchecked(n - 1) != universe {
            return Err(Error::Corrupt("Elias-Fano total mismatch".into()));
        }
        Ok(ef)
    }
}
