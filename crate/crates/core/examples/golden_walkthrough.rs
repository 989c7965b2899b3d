//! Builds the four-pattern dictionary {ABC, B, BC, CA} and prints every
//! intermediate artifact: state order, transition pairs, failure and report
//! parents, terminals, lengths, and the matches in "ABCA".
//!
//! ```bash
//! cargo run --example golden_walkthrough
//! ```

use succinct_ac::builder::{
    build_failure_parents, build_report_parents, build_transition_pairs, suffix_lex_order,
};
use succinct_ac::{find_all, Backend, PatternSet, SuccinctAcIndex};

fn show(bytes: &[u8]) -> String {
    if bytes.is_empty() {
        "ε".to_string()
    } else {
        String::from_utf8_lossy(bytes).into_owned()
    }
}

fn main() -> succinct_ac::Result<()> {
    let set = PatternSet::new(["ABC", "B", "BC", "CA"])?;
    let pt = suffix_lex_order(&set);

    println!("state  prefix  terminal");
    for s in 0..pt.len() {
        let e = pt.entry(s);
        println!("{s:>5}  {:<6}  {}", show(&pt.prefix(s)), if e.terminal { "yes" } else { "" });
    }

    let bits = pt.state_bits();
    let pairs: Vec<String> = build_transition_pairs(&pt)?
        .iter()
        .map(|k| {
            let c = pt.alphabet().decode(k.symbol(bits)).unwrap() as char;
            format!("({c},{})", k.state(bits))
        })
        .collect();
    println!("\ntransition pairs (sorted; pair i leads to state i + 1):\n  {}", pairs.join(" "));

    let fail = build_failure_parents(&pt)?;
    let report = build_report_parents(&pt, &fail)?;
    println!("\nstate  failure  report");
    for s in 1..pt.len() {
        println!("{s:>5}  {:>7}  {:>6}", fail[s].unwrap(), report[s].unwrap());
    }

    let idx = SuccinctAcIndex::build_from(&set, Backend::Flat)?;
    println!("\nfailure tree parens: {}", idx.failure_tree().to_paren_string());
    println!("report tree parens:  {}", idx.report_tree().to_paren_string());
    println!("terminal states: {:?}", idx.terminals().iter().collect::<Vec<_>>());
    let lengths: Vec<u64> = (0..idx.num_patterns())
        .map(|i| idx.pattern_length(i))
        .collect::<Result<_, _>>()?;
    println!("pattern lengths by id: {lengths:?}");

    println!("\nmatches in \"ABCA\" (start, end, id, pattern):");
    for o in find_all(&idx, b"ABCA") {
        println!("  {o}\t{}", show(&idx.retrieve_pattern(o.pattern_id)?));
    }
    Ok(())
}
