//! Patterns are not stored: each one is read back by walking transition
//! keys from its terminal state to the root, one select per symbol.
//! Ids follow the order of the reversed patterns.

use succinct_ac::{Backend, SuccinctAcIndex};

fn main() -> succinct_ac::Result<()> {
    let words = ["banana", "bandana", "ban", "nab", "ananas", "a"];
    let idx = SuccinctAcIndex::build(words, Backend::Compressed)?;
    println!("id  selects  pattern");
    for id in 0..idx.num_patterns() {
        let (p, selects) = idx.retrieve_pattern_counted(id)?;
        println!("{id:>2}  {selects:>7}  {}", String::from_utf8_lossy(&p));
    }
    Ok(())
}
