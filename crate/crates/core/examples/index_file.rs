//! Writes an index to disk, reads the section table back, reloads it, and
//! shows that a flipped bit is rejected.

use succinct_ac::format::{read_sections, SECTION_NAMES};
use succinct_ac::{find_all, Backend, SuccinctAcIndex};

fn main() -> succinct_ac::Result<()> {
    let idx = SuccinctAcIndex::build(["he", "she", "his", "hers"], Backend::Flat)?;
    let dir = std::env::temp_dir().join("succinct-ac-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("words.sdmx");
    idx.save(&path)?;

    let bytes = std::fs::read(&path)?;
    let (flags, meta, sections) = read_sections(&bytes)?;
    println!("{} bytes, flags {flags}, {meta:?}", bytes.len());
    for (s, name) in sections.iter().zip(SECTION_NAMES) {
        println!("  {name:<13} offset {:>4} length {:>4}", s.offset, s.len);
    }

    let back = SuccinctAcIndex::load(&path)?;
    assert_eq!(find_all(&back, b"ushers"), find_all(&idx, b"ushers"));
    println!("reloaded: {} matches in \"ushers\"", find_all(&back, b"ushers").len());

    let mut broken = bytes.clone();
    broken[sections[3].offset as usize + 9] ^= 0x04;
    match SuccinctAcIndex::from_bytes(&broken) {
        Err(e) => println!("flipped bit: {e}"),
        Ok(_) => unreachable!("checksum must catch a flipped bit"),
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
