//! Balanced-parentheses ordinal trees with parent-by-preorder queries.
//!
//! A tree of `n` nodes is written as the `2n` parentheses of its DFS
//! traversal (`1` = open, `0` = close). The node of preorder `i` owns the
//! `i`-th open parenthesis, so `select1(i)` finds it and `rank1` maps an
//! open parenthesis back to a preorder.
//!
//! The parent is the nearest enclosing open parenthesis. With
//! `e(j) = 2 * rank1(j) - j` the excess before position `j`, the parent of
//! the node opened at `p` is opened at the largest `j < p` with
//! `e(j) <= e(p) - 1`. That backward search scans the current block with
//! per-word and per-byte minima and otherwise jumps through a min-tree over
//! per-block minimum excess values.

use std::sync::OnceLock;

use crate::error::{out_of_range, Error, Result};
use crate::primitives::{BitBuf, BitVector};
use crate::words::WordReader;

/// Bits per block of the excess min-tree.
const EXCESS_BLOCK: usize = 1024;

#[derive(Debug, Clone)]
pub struct BpTree {
    parens: BitVector,
    nodes: usize,
    leaves: usize,
    min_tree: Vec<i32>,
    /// Per full word `w`: minimum of `e(64w + k) - e(64w + 64)`, `k < 64`.
    word_min: Vec<i8>,
}

impl PartialEq for BpTree {
    fn eq(&self, other: &Self) -> bool {
        self.parens == other.parens
    }
}

impl Eq for BpTree {}

struct ByteTables {
    /// Sum of +1/-1 over the 8 bits.
    total: [i8; 256],
    /// Minimum of `e(start + k) - e(start + 8)` over `k` in `0..8`.
    back_min: [i8; 256],
}

fn byte_tables() -> &'static ByteTables {
    static TABLES: OnceLock<ByteTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut total = [0i8; 256];
        let mut back_min = [0i8; 256];
        for v in 0..256usize {
            let mut suffix = 0i8;
            let mut min = i8::MAX;
            for k in (0..8).rev() {
                suffix += if (v >> k) & 1 == 1 { 1 } else { -1 };
                min = min.min(-suffix);
            }
            total[v] = suffix;
            back_min[v] = min;
        }
        ByteTables { total, back_min }
    })
}

impl BpTree {
    /// Builds the tree whose node `i` has parent `parents[i]`.
    ///
    /// `parents[0]` must be `None` and every other entry `Some(p)` with
    /// `p < i`; the numbering must be a DFS preorder in which children
    /// appear in increasing order.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree has no nodes".into()));
        }
        if let Some(p) = parents[0] {
            return Err(Error::InvalidTree(format!("root has parent {p}")));
        }
        let mut parens = BitBuf::with_capacity(2 * n);
        let mut path: Vec<usize> = vec![0];
        parens.push(true);
        for (i, &parent) in parents.iter().enumerate().skip(1) {
            let p = parent
                .ok_or_else(|| Error::InvalidTree(format!("node {i} is a second root")))?;
            if p >= i {
                return Err(Error::InvalidTree(format!(
                    "node {i} has parent {p} which does not precede it"
                )));
            }
            while path.last() != Some(&p) {
                path.pop();
                parens.push(false);
                if path.is_empty() {
                    return Err(Error::InvalidTree(format!(
                        "node {i} is not numbered in DFS preorder"
                    )));
                }
            }
            path.push(i);
            parens.push(true);
        }
        for _ in 0..path.len() {
            parens.push(false);
        }
        Ok(Self::from_parens(parens.freeze()))
    }

    fn from_parens(parens: BitVector) -> Self {
        let len = parens.len();
        let nodes = len / 2;
        let leaves = len.div_ceil(EXCESS_BLOCK).max(1);
        let cap = leaves.next_power_of_two();
        let mut min_tree = vec![i32::MAX; 2 * cap];
        let mut e = 0i32;
        for j in 0..len {
            let leaf = cap + j / EXCESS_BLOCK;
            min_tree[leaf] = min_tree[leaf].min(e);
            e += if parens.get(j) { 1 } else { -1 };
        }
        for node in (1..cap).rev() {
            min_tree[node] = min_tree[2 * node].min(min_tree[2 * node + 1]);
        }
        let tables = byte_tables();
        let word_min = parens.words()[..len / 64]
            .iter()
            .map(|&w| {
                let (mut acc, mut min) = (0i8, 0i8);
                for b in (0..8).rev() {
                    let byte = ((w >> (8 * b)) & 0xff) as usize;
                    min = min.min(acc + tables.back_min[byte]);
                    acc -= tables.total[byte];
                }
                min
            })
            .collect();
        BpTree {
            parens,
            nodes,
            leaves,
            min_tree,
            word_min,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 0
    }

    pub fn parens(&self) -> &BitVector {
        &self.parens
    }

    /// Preorder of the parent of node `i`; `None` for the root.
    pub fn parent(&self, i: usize) -> Result<Option<usize>> {
        if i >= self.nodes {
            return Err(out_of_range(i, self.nodes));
        }
        Ok((i != 0).then(|| self.parent_unchecked(i)))
    }

    /// Parent of a non-root node.
    #[inline]
    pub(crate) fn parent_unchecked(&self, i: usize) -> usize {
        debug_assert!(i > 0 && i < self.nodes);
        let p = self.parens.select1_unchecked(i);
        let e_p = 2 * i as i64 - p as i64;
        if e_p == 1 {
            return 0;
        }
        let j = self.backward_search(p, e_p, e_p - 1);
        // e(j) = e_p - 1 exactly, so rank1(j) = (e(j) + j) / 2.
        ((e_p - 1 + j as i64) / 2) as usize
    }

    /// Largest `j < p` with `e(j) <= target`, where `e(p) = e_p > target >= 0`.
    fn backward_search(&self, p: usize, e_p: i64, target: i64) -> usize {
        let block = (p - 1) / EXCESS_BLOCK;
        if let Some(j) = self.scan_back(p, e_p, block * EXCESS_BLOCK, target) {
            return j;
        }
        let found = self
            .last_block_at_most(block, target)
            .expect("excess at position 0 is zero, so some block qualifies");
        let end = ((found + 1) * EXCESS_BLOCK).min(self.parens.len());
        let e_end = 2 * self.parens.rank1_unchecked(end) as i64 - end as i64;
        self.scan_back(end, e_end, found * EXCESS_BLOCK, target)
            .expect("block minimum guarantees a hit")
    }

    /// Scans positions `from - 1` down to `lower` (a multiple of 64) for the
    /// first `j` with `e(j) <= target`; `e_from = e(from)`.
    fn scan_back(&self, from: usize, e_from: i64, lower: usize, target: i64) -> Option<usize> {
        let words = self.parens.words();
        let (mut j, mut e) = (from, e_from);
        let aligned = (from & !63).max(lower);
        if let Some(hit) = self.scan_bytes(&mut j, &mut e, aligned, target) {
            return Some(hit);
        }
        while j > lower {
            let w = j / 64 - 1;
            if e + (self.word_min[w] as i64) > target {
                e -= 2 * words[w].count_ones() as i64 - 64;
                j -= 64;
                continue;
            }
            let lo = j - 64;
            return self.scan_bytes(&mut j, &mut e, lo, target);
        }
        None
    }

    /// Bit and byte steps from `*j` down to `lower`; on a miss `*j` and
    /// `*e` are left at `lower` and `e(lower)`.
    fn scan_bytes(&self, j_ref: &mut usize, e_ref: &mut i64, lower: usize, target: i64) -> Option<usize> {
        let tables = byte_tables();
        let words = self.parens.words();
        let bit = |j: usize| (words[j / 64] >> (j % 64)) & 1 == 1;
        let (mut j, mut e) = (*j_ref, *e_ref);
        while j > lower && j % 8 != 0 {
            j -= 1;
            e -= if bit(j) { 1 } else { -1 };
            if e <= target {
                return Some(j);
            }
        }
        while j > lower {
            let byte = ((words[(j - 8) / 64] >> ((j - 8) % 64)) & 0xff) as usize;
            if e + (tables.back_min[byte] as i64) > target {
                e -= tables.total[byte] as i64;
                j -= 8;
                continue;
            }
            for _ in 0..8 {
                j -= 1;
                e -= if bit(j) { 1 } else { -1 };
                if e <= target {
                    return Some(j);
                }
            }
            unreachable!("byte minimum promised a position");
        }
        *j_ref = j;
        *e_ref = e;
        None
    }

    /// Largest block index `< limit` whose minimum excess is `<= target`.
    fn last_block_at_most(&self, limit: usize, target: i64) -> Option<usize> {
        if limit == 0 {
            return None;
        }
        let cap = self.min_tree.len() / 2;
        let qualifies = |node: usize| self.min_tree[node] as i64 <= target;
        // Walk left from leaf `limit - 1` to the nearest qualifying subtree.
        let mut node = cap + limit - 1;
        while !qualifies(node) {
            while node & 1 == 0 {
                node >>= 1;
            }
            if node == 1 {
                return None;
            }
            node -= 1;
        }
        while node < cap {
            node = if qualifies(2 * node + 1) { 2 * node + 1 } else { 2 * node };
        }
        Some(node - cap)
    }

    /// Child count of every node, indexed by preorder.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degree = vec![0usize; self.nodes];
        let mut path: Vec<usize> = Vec::new();
        let mut next = 0;
        for j in 0..self.parens.len() {
            if self.parens.get(j) {
                if let Some(&parent) = path.last() {
                    degree[parent] += 1;
                }
                path.push(next);
                next += 1;
            } else {
                path.pop();
            }
        }
        degree
    }

    /// Entropy of the node-degree distribution, in bits per node.
    pub fn degree_entropy(&self) -> f64 {
        let mut counts = std::collections::BTreeMap::<usize, usize>::new();
        for d in self.degrees() {
            *counts.entry(d).or_default() += 1;
        }
        let n = self.nodes as f64;
        counts
            .values()
            .map(|&c| {
                let c = c as f64;
                (c / n) * (n / c).log2()
            })
            .sum()
    }

    /// The parenthesis string, for display and tests.
    pub fn to_paren_string(&self) -> String {
        (0..self.parens.len())
            .map(|j| if self.parens.get(j) { '(' } else { ')' })
            .collect()
    }

    /// Exactly `2n`.
    pub fn payload_bits(&self) -> u64 {
        self.parens.payload_bits()
    }

    pub fn aux_bits(&self) -> u64 {
        self.parens.aux_bits() + self.min_tree.len() as u64 * 32 + self.word_min.len() as u64 * 8
    }

    /// Number of leaves in the excess min-tree.
    pub fn excess_blocks(&self) -> usize {
        self.leaves
    }

    pub(crate) fn write_words(&self, out: &mut Vec<u64>) {
        out.push(self.nodes as u64);
        self.parens.write_words(out);
    }

    pub(crate) fn read_words(r: &mut WordReader<'_>) -> Result<Self> {
        let nodes = r.next_usize()?;
        let parens = BitVector::read_words(r)?;
        if nodes == 0 || parens.len() != 2 * nodes || parens.count_ones() != nodes {
            return Err(Error::Corrupt("tree header mismatch".into()));
        }
        let mut e = 0i64;
        for j in 0..parens.len() {
            e += if parens.get(j) { 1 } else { -1 };
            if e < 0 || (e == 0 && j + 1 != parens.len()) {
                return Err(Error::Corrupt("parentheses are not a single balanced tree".into()));
            }
        }
        Ok(Self::from_parens(parens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Random tree in DFS preorder: node `i` hangs off some node on the
    /// path from the root to node `i - 1`.
    pub(crate) fn random_preorder_parents(rng: &mut impl Rng, n: usize) -> Vec<Option<usize>> {
        let mut parents = vec![None];
        let mut path = vec![0usize];
        for i in 1..n {
            let keep = rng.gen_range(1..=path.len());
            path.truncate(keep);
            parents.push(Some(*path.last().unwrap()));
            path.push(i);
        }
        parents
    }

    #[test]
    fn failure_tree_of_worked_example() {
        let parents = [None, Some(0), Some(1), Some(0), Some(3), Some(0), Some(5), Some(6)];
        let t = BpTree::from_parents(&parents).unwrap();
        assert_eq!(t.to_paren_string(), "((())(())((())))");
        assert_eq!(t.parent(7).unwrap(), Some(6));
        assert_eq!(t.parent(2).unwrap(), Some(1));
        assert_eq!(t.parent(0).unwrap(), None);
        assert!(t.parent(8).is_err());
        assert_eq!(t.payload_bits(), 16);
    }

    #[test]
    fn single_node() {
        let t = BpTree::from_parents(&[None]).unwrap();
        assert_eq!(t.to_paren_string(), "()");
        assert_eq!(t.parent(0).unwrap(), None);
        assert_eq!(t.degree_entropy(), 0.0);
    }

    #[test]
    fn rejects_invalid_parent_arrays() {
        assert!(BpTree::from_parents(&[]).is_err());
        assert!(BpTree::from_parents(&[Some(0)]).is_err());
        assert!(BpTree::from_parents(&[None, None]).is_err());
        assert!(BpTree::from_parents(&[None, Some(1)]).is_err());
        assert!(BpTree::from_parents(&[None, Some(2), Some(0)]).is_err());
        // Node 3 attaches to node 1 after node 2 closed node 1's subtree.
        assert!(BpTree::from_parents(&[None, Some(0), Some(0), Some(1)]).is_err());
    }

    #[test]
    fn entropy_of_star_and_path() {
        let k = 7usize;
        let star: Vec<Option<usize>> =
            std::iter::once(None).chain((0..k).map(|_| Some(0))).collect();
        let t = BpTree::from_parents(&star).unwrap();
        let n = (k + 1) as f64;
        let expected = (1.0 / n) * n.log2() + (k as f64 / n) * (n / k as f64).log2();
        assert!((t.degree_entropy() - expected).abs() < 1e-12);

        let path: Vec<Option<usize>> =
            std::iter::once(None).chain((1..10).map(|i| Some(i - 1))).collect();
        let t = BpTree::from_parents(&path).unwrap();
        let expected = (9.0 / 10.0) * (10.0f64 / 9.0).log2() + (1.0 / 10.0) * 10.0f64.log2();
        assert!((t.degree_entropy() - expected).abs() < 1e-12);
    }

    #[test]
    fn report_tree_entropy_of_worked_example() {
        let parents = [None, Some(0), Some(0), Some(0), Some(3), Some(0), Some(0), Some(6)];
        let t = BpTree::from_parents(&parents).unwrap();
        assert_eq!(t.degrees(), vec![5, 0, 0, 1, 0, 0, 1, 0]);
        // Degree counts {5: 1, 1: 2, 0: 5} over 8 nodes.
        let expected = (1.0 / 8.0) * 8.0f64.log2()
            + (2.0 / 8.0) * 4.0f64.log2()
            + (5.0 / 8.0) * (8.0f64 / 5.0).log2();
        assert!((t.degree_entropy() - expected).abs() < 1e-12);
    }

    #[test]
    fn random_trees_match_parent_arrays() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in (1..=500).step_by(7) {
            let parents = random_preorder_parents(&mut rng, n);
            let t = BpTree::from_parents(&parents).unwrap();
            for (i, &p) in parents.iter().enumerate() {
                assert_eq!(t.parent(i).unwrap(), p, "n={n} node={i}");
            }
        }
    }

    #[test]
    fn large_trees_cross_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        // Deep path, then a wide star, then random: parents far to the left.
        let mut parents: Vec<Option<usize>> = vec![None];
        for i in 1..3000 {
            parents.push(Some(i - 1));
        }
        for _ in 0..3000 {
            parents.push(Some(0));
        }
        let t = BpTree::from_parents(&parents).unwrap();
        for (i, &p) in parents.iter().enumerate() {
            assert_eq!(t.parent(i).unwrap(), p);
        }
        let parents = random_preorder_parents(&mut rng, 10_000);
        let t = BpTree::from_parents(&parents).unwrap();
        for (i, &p) in parents.iter().enumerate() {
            assert_eq!(t.parent(i).unwrap(), p);
        }
    }

    #[test]
    fn word_roundtrip_and_corruption() {
        let parents = [None, Some(0), Some(1), Some(0)];
        let t = BpTree::from_parents(&parents).unwrap();
        let mut out = Vec::new();
        t.write_words(&mut out);
        let back = BpTree::read_words(&mut WordReader::new(&out)).unwrap();
        assert_eq!(back.to_paren_string(), t.to_paren_string());
        // Flip the first open parenthesis.
        out[2] ^= 1;
        assert!(BpTree::read_words(&mut WordReader::new(&out)).is_err());
    }
}
