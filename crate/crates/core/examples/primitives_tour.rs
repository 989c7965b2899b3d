//! The three building blocks on their own: a rank/select bitvector, an
//! Elias-Fano array of small integers, an indexable set, and a
//! balanced-parentheses tree.

use succinct_ac::primitives::{BitVector, EliasFanoArray, IndexableSet};
use succinct_ac::tree::BpTree;

fn main() -> succinct_ac::Result<()> {
    let bv = BitVector::from_bools(&[true, false, true, true, false, false, true]);
    println!("bits 1011001: rank1(4) = {}, select1(2) = {}, select0(1) = {}",
        bv.rank1(4)?, bv.select1(2)?, bv.select0(1)?);

    let ef = EliasFanoArray::build(&[2, 1, 2, 3])?;
    println!(
        "lengths [2,1,2,3]: low width {}, payload {} bits, access(3) = {}, prefix_sum(2) = {}",
        ef.low_width(),
        ef.payload_bits(),
        ef.access(3)?,
        ef.prefix_sum(2)?
    );

    let set = IndexableSet::build(&[2, 3, 6, 7], 8)?;
    let ranks: Vec<String> = (0..8)
        .map(|k| match set.rank(k) {
            Ok(Some(r)) => format!("{k}->{r}"),
            _ => format!("{k}->-"),
        })
        .collect();
    println!("set {{2,3,6,7}} in [0,8): {}", ranks.join(" "));

    // Failure tree of the four-pattern example.
    let parents = [None, Some(0), Some(1), Some(0), Some(3), Some(0), Some(5), Some(6)];
    let tree = BpTree::from_parents(&parents)?;
    println!("tree {} ({} payload bits)", tree.to_paren_string(), tree.payload_bits());
    for i in 1..parents.len() {
        print!("parent({i}) = {}  ", tree.parent(i)?.unwrap());
    }
    println!();
    println!("degree entropy H* = {:.4} bits/node", tree.degree_entropy());
    Ok(())
}
