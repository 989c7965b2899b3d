//! Static integer-key dictionary with membership rank and select.

use crate::error::{out_of_range, Error, Result};
use crate::primitives::elias_fano::EliasFanoArray;
use crate::words::WordReader;

/// A sorted set of distinct keys from `[0, universe)`.
///
/// The keys are held as an [`EliasFanoArray`] of their gaps, so the stored
/// prefix sums are the keys themselves. `rank` answers `None` for keys that
/// are not members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexableSet {
    universe: u64,
    keys: Option<EliasFanoArray>,
}

impl IndexableSet {
    pub fn build(keys: &[u64], universe: u64) -> Result<Self> {
        for (i, &k) in keys.iter().enumerate() {
            if k >= universe {
                return Err(Error::KeyOutsideUniverse { key: k, universe });
            }
            if i > 0 && keys[i - 1] >= k {
                return Err(Error::Unsorted { position: i });
            }
        }
        let keys = if keys.is_empty() {
            None
        } else {
            Some(EliasFanoArray::from_prefix_sums(keys)?)
        };
        Ok(IndexableSet { universe, keys })
    }

    pub fn len(&self) -> usize {
        self.keys.as_ref().map_or(0, EliasFanoArray::len)
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_none()
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    /// Rank of `key` among the stored keys, or `None` if it is absent.
    pub fn rank(&self, key: u64) -> Result<Option<usize>> {
        if key >= self.universe {
            return Err(out_of_range(key, self.universe));
        }
        Ok(self.rank_unchecked(key))
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, key: u64) -> Option<usize> {
        self.keys.as_ref()?.find_prefix_sum(key)
    }

    /// The `i`-th smallest key.
    pub fn select(&self, i: usize) -> Result<u64> {
        match &self.keys {
            Some(ef) if i < ef.len() => Ok(ef.prefix_sum_unchecked(i)),
            _ => Err(out_of_range(i, self.len())),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).map(move |i| self.keys.as_ref().unwrap().prefix_sum_unchecked(i))
    }

    pub fn payload_bits(&self) -> u64 {
        self.keys.as_ref().map_or(0, EliasFanoArray::payload_bits)
    }

    pub fn aux_bits(&self) -> u64 {
        self.keys.as_ref().map_or(0, EliasFanoArray::aux_bits)
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.universe);
        out.push(self.len() as u64);
        if let Some(ef) = &self.keys {
            ef.write_words(out);
        }
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let universe = r.next()?;
        let len = r.next_usize()?;
        let keys = if len == 0 {
            None
        } else {
            let ef = EliasFanoArray::read_words(r)?;
            if ef.len() != len || ef.universe() >= universe {
                return Err(Error::Corrupt("indexable set header mismatch".into()));
            }
            Some(ef)
        };
        Ok(IndexableSet { universe, keys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{seq::index::sample, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn state_dictionary() -> IndexableSet {
        IndexableSet::build(&[2, 3, 6, 7], 8).unwrap()
    }

    #[test]
    fn terminal_state_example() {
        let s = state_dictionary();
        assert_eq!(s.select(0).unwrap(), 2);
        assert_eq!(s.select(2).unwrap(), 6);
        assert_eq!(s.select(3).unwrap(), 7);
        assert_eq!(s.rank(6).unwrap(), Some(2));
        assert_eq!(s.rank(2).unwrap(), Some(0));
        assert_eq!(s.rank(5).unwrap(), None);
        assert!(s.rank(8).is_err());
        assert!(s.select(4).is_err());
    }

    #[test]
    fn singleton_zero() {
        let s = IndexableSet::build(&[0], 1).unwrap();
        assert_eq!(s.select(0).unwrap(), 0);
        assert_eq!(s.rank(0).unwrap(), Some(0));
    }

    #[test]
    fn empty_set_is_total() {
        let s = IndexableSet::build(&[], 10).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.rank(3).unwrap(), None);
        assert!(s.select(0).is_err());
        assert_eq!(s.payload_bits(), 0);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            IndexableSet::build(&[1, 1], 4),
            Err(Error::Unsorted { position: 1 })
        ));
        assert!(matches!(
            IndexableSet::build(&[3, 2], 4),
            Err(Error::Unsorted { position: 1 })
        ));
        assert!(matches!(
            IndexableSet::build(&[1, 4], 4),
            Err(Error::KeyOutsideUniverse { key: 4, universe: 4 })
        ));
    }

    #[test]
    fn random_keys_match_sorted_array() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let universe = 1_000_000u64;
        let mut keys: Vec<u64> = sample(&mut rng, universe as usize, 10_000)
            .into_iter()
            .map(|k| k as u64)
            .collect();
        keys.sort_unstable();
        let s = IndexableSet::build(&keys, universe).unwrap();
        for (i, &k) in keys.iter().enumerate() {
            assert_eq!(s.select(i).unwrap(), k);
            assert_eq!(s.rank(k).unwrap(), Some(i));
        }
        for probe in (0..universe).step_by(37) {
            assert_eq!(s.rank(probe).unwrap(), keys.binary_search(&probe).ok());
        }
    }

    #[test]
    fn exhaustive_small_universe() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let universe = 1u64 << 16;
        for &m in &[1usize, 17, 3000, 40_000] {
            let mut keys: Vec<u64> = sample(&mut rng, universe as usize, m)
                .into_iter()
                .map(|k| k as u64)
                .collect();
            keys.sort_unstable();
            let s = IndexableSet::build(&keys, universe).unwrap();
            for k in 0..universe {
                let r = s.rank(k).unwrap();
                assert_eq!(r, keys.binary_search(&k).ok());
                if let Some(r) = r {
                    assert_eq!(s.select(r).unwrap(), k);
                }
            }
        }
    }
}
