//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use succinct_ac::bench::{bench_scaling, dictionary_of_total, random_dictionary, synthetic_text};
use succinct_ac::builder::{
    build_failure_parents, build_report_parents, build_transition_pairs, suffix_lex_order,
};
use succinct_ac::compressed::{h0_entropy, CharDistribution};
use succinct_ac::index::Transitions;
use succinct_ac::oracle::{
    alphabet_of_size, naive_failure, naive_report, random_case, CaseShape, NaiveMatcher,
};
use succinct_ac::{
    find_all, scan, scan_chunked, space_report, Backend, Occurrence, PatternSet, SuccinctAcIndex,
};

const SIGMAS: [usize; 4] = [2, 4, 26, 256];

struct Case {
    set: PatternSet,
    text: Vec<u8>,
    flat: SuccinctAcIndex,
    compressed: SuccinctAcIndex,
}

impl Case {
    fn backends(&self) -> [(&'static str, &SuccinctAcIndex); 2] {
        [("flat", &self.flat), ("compressed", &self.compressed)]
    }
}

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(mut v: Vec<Occurrence>) -> Vec<Occurrence> {
    v.sort_unstable();
    v
}

fn make_cases(count: usize, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let alphabet = alphabet_of_size(SIGMAS[i % SIGMAS.len()]);
            let rc = random_case(&mut rng, &alphabet, CaseShape::default());
            let set = PatternSet::new(rc.patterns).expect("generator yields valid sets");
            Case {
                flat: SuccinctAcIndex::build_from(&set, Backend::Flat).unwrap(),
                compressed: SuccinctAcIndex::build_from(&set, Backend::Compressed).unwrap(),
                set,
                text: rc.text,
            }
        })
        .collect()
}

fn criterion_1() -> Verdict {
    let set = PatternSet::new(["ABC", "B", "BC", "CA"]).unwrap();
    let pt = suffix_lex_order(&set);
    let order: Vec<String> = (0..pt.len())
        .map(|s| String::from_utf8(pt.prefix(s)).unwrap())
        .collect();
    ensure(order == ["", "A", "CA", "B", "AB", "C", "BC", "ABC"], || {
        format!("state order {order:?}")
    })?;

    let pairs: Vec<(char, usize)> = build_transition_pairs(&pt)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|k| {
            let c = pt.alphabet().decode(k.symbol(pt.state_bits())).unwrap() as char;
            (c, k.state(pt.state_bits()))
        })
        .collect();
    let expected = [('A', 0), ('A', 5), ('B', 0), ('B', 1), ('C', 0), ('C', 3), ('C', 4)];
    ensure(pairs == expected, || format!("transition pairs {pairs:?}"))?;

    for backend in [Backend::Flat, Backend::Compressed] {
        let idx = SuccinctAcIndex::build_from(&set, backend).unwrap();
        ensure(idx.num_states() == 8, || format!("m = {}", idx.num_states()))?;
        let terminals: Vec<u64> = idx.terminals().iter().collect();
        ensure(terminals == [2, 3, 6, 7], || format!("terminals {terminals:?}"))?;
        let lengths: Vec<u64> = (0..4).map(|i| idx.lengths().access(i).unwrap()).collect();
        ensure(lengths == [2, 1, 2, 3], || format!("lengths {lengths:?}"))?;
    }
    Ok("state order, 7 pairs, terminals {2,3,6,7}, lengths [2,1,2,3]".into())
}

fn criterion_2(cases: &[Case]) -> Verdict {
    let mut occurrences = 0;
    for (i, case) in cases.iter().enumerate() {
        let expected = NaiveMatcher::new(&case.set).scan(&case.text);
        occurrences += expected.len();
        for (name, idx) in case.backends() {
            let got = sorted(find_all(idx, &case.text));
            ensure(got == expected, || {
                format!("case {i}, {name} backend: {} vs {} occurrences", got.len(), expected.len())
            })?;
        }
    }
    Ok(format!("{} cases x 2 backends, {occurrences} occurrences, 0 mismatches", cases.len()))
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let shape = CaseShape {
        max_patterns: 400,
        max_total_len: 2000,
        max_text_len: 0,
    };
    let mut pairs_checked = 0;
    for i in 0..200 {
        let alphabet = alphabet_of_size(SIGMAS[i % SIGMAS.len()]);
        let rc = random_case(&mut rng, &alphabet, shape);
        let set = PatternSet::new(rc.patterns).unwrap();
        let pt = suffix_lex_order(&set);
        let fail = build_failure_parents(&pt).map_err(|e| e.to_string())?;
        ensure(fail == naive_failure(&pt), || format!("set {i}: failure parents differ"))?;
        let report = build_report_parents(&pt, &fail).map_err(|e| e.to_string())?;
        ensure(report == naive_report(&pt, &set), || format!("set {i}: report parents differ"))?;

        let keys = build_transition_pairs(&pt).map_err(|e| e.to_string())?;
        let idx = SuccinctAcIndex::build_from(&set, Backend::Flat).unwrap();
        ensure(keys.len() == pt.len() - 1, || format!("set {i}: {} pairs", keys.len()))?;
        for s in 1..pt.len() {
            let e = pt.entry(s);
            let key = succinct_ac::index::TransitionKey::new(e.symbol, e.parent, pt.state_bits());
            // Rank among the sorted pairs, counted from 1, is the state itself.
            let rank = keys.partition_point(|k| k.0 < key.0) + 1;
            ensure(keys[s - 1] == key && rank == s, || format!("set {i}: pair of state {s}"))?;
            let next = idx.next_state(e.parent, e.symbol).map_err(|e| e.to_string())?;
            ensure(next == Some(s), || format!("set {i}: next of state {s}'s pair"))?;
            pairs_checked += 1;
        }
    }
    Ok(format!("200 sets, {pairs_checked} pair-rank checks"))
}

fn criterion_4(cases: &[Case]) -> Verdict {
    let mut worst_steps = 0f64;
    let mut worst_probes = 0f64;
    for (i, case) in cases.iter().enumerate() {
        for (name, idx) in case.backends() {
            let s = scan(idx, &case.text, |_| {});
            let t = s.text_len;
            let c = s.counters;
            ensure(c.next_steps + c.fail_steps <= 2 * t, || {
                format!("case {i} {name}: next+fail = {} > 2|T| = {}", c.next_steps + c.fail_steps, 2 * t)
            })?;
            ensure(c.probes <= 2 * t, || format!("case {i} {name}: {} probes", c.probes))?;
            ensure(c.report_steps <= s.occurrences + t, || {
                format!("case {i} {name}: {} report steps, occ {} |T| {t}", c.report_steps, s.occurrences)
            })?;
            if t > 0 {
                worst_steps = worst_steps.max(c.transitions() as f64 / t as f64);
                worst_probes = worst_probes.max(c.probes as f64 / t as f64);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let patterns = random_dictionary(&mut rng, b"ACGT", 2_000, 6, 20);
    let text = synthetic_text(&mut rng, b"ACGT", &patterns, 100_000_000, 500);
    let idx = SuccinctAcIndex::build(patterns, Backend::Flat).unwrap();
    let r = bench_scaling(&idx, &text, 1).map_err(|e| e.to_string())?;
    let ratio = r.ratio();
    let spc = r.doubled.steps_per_char();
    ensure(spc <= 2.0, || format!("bench steps per char {spc:.3}"))?;
    ensure((1.5..=2.5).contains(&ratio), || {
        format!(
            "time ratio {ratio:.3} ({:.2}s -> {:.2}s)",
            r.single.best.as_secs_f64(),
            r.doubled.best.as_secs_f64()
        )
    })?;
    Ok(format!(
        "fuzz max (next+fail)/|T| = {worst_steps:.3}, max probes/|T| = {worst_probes:.3}; \
         100 MB -> 200 MB time ratio {ratio:.3} ({:.1} MB/s, {spc:.3} steps/char)",
        r.single.mb_per_sec()
    ))
}

fn dna_instance() -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    dictionary_of_total(&mut rng, b"ACGT", 100_000, 5, 15)
}

/// Smallest `l` with `d * 2^l >= n`, by repeated doubling.
fn ceil_log2_ratio(n: u64, d: u64) -> u64 {
    let mut l = 0;
    while d << l < n {
        l += 1;
    }
    l
}

fn criterion_5(patterns: &[Vec<u8>]) -> Verdict {
    let idx = SuccinctAcIndex::build(patterns.to_vec(), Backend::Flat).unwrap();
    let r = space_report(&idx);
    let n = r.total_len;
    let d = r.patterns as u64;
    let m = r.states as u64;
    ensure(n == 100_000, || format!("n = {n}"))?;
    let budget = n * (2 + 8);
    ensure(r.total_bits <= budget, || format!("total {} > {budget}", r.total_bits))?;
    let failure = r.component("failure_tree").unwrap().payload;
    ensure(failure == 2 * m, || format!("failure payload {failure} != 2m = {}", 2 * m))?;
    let lengths = r.component("lengths").unwrap().payload;
    let want = d * (ceil_log2_ratio(n, d) + 2);
    ensure(lengths == want, || format!("length payload {lengths} != {want}"))?;
    let rows: u64 = r.components.iter().map(|c| c.payload + c.aux).sum();
    ensure(rows == r.total_bits, || "total is not the sum of rows".into())?;
    Ok(format!(
        "m={m} d={d}: total {} bits ({:.2} bits/symbol, budget {budget}); formula {:.0}; \
         failure payload 2m={failure}; lengths payload {lengths}",
        r.total_bits,
        r.bits_per_symbol(),
        r.formula_bits
    ))
}

fn criterion_6(patterns: &[Vec<u8>], cases: &[Case]) -> Verdict {
    let idx = SuccinctAcIndex::build(patterns.to_vec(), Backend::Compressed).unwrap();
    let Transitions::Compressed(t) = idx.transitions() else {
        return Err("compressed backend not selected".into());
    };
    let m = idx.num_states() as u64;
    let sigma = idx.sigma() as u64;
    let h0 = h0_entropy(&idx.char_distribution());

    // Independent H0 from the transition pair list.
    let pt = suffix_lex_order(&PatternSet::new(patterns.to_vec()).unwrap());
    let keys = build_transition_pairs(&pt).unwrap();
    let dist = CharDistribution::from_pairs(&keys, pt.alphabet().sigma(), pt.state_bits());
    let total = dist.total() as f64;
    let h0_direct: f64 = dist
        .counts()
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    ensure((h0 - h0_direct).abs() < 1e-9, || format!("H0 {h0} vs {h0_direct}"))?;

    let payload = t.per_char_payload_bits();
    let aux: u64 = t.per_char().iter().map(|s| s.aux_bits()).sum();
    let ceil_log_m = ceil_log2_ratio(m, 1);
    let bound = m as f64 * (h0 + 3.0) + (sigma * ceil_log_m) as f64 + aux as f64;
    ensure(payload as f64 <= bound, || format!("per-symbol payload {payload} > bound {bound:.0}"))?;

    for (i, case) in cases.iter().enumerate() {
        let a = find_all(&case.flat, &case.text);
        let b = find_all(&case.compressed, &case.text);
        ensure(a == b, || format!("case {i}: backends disagree"))?;
    }
    Ok(format!(
        "H0={h0:.4}: per-symbol payload {payload} <= {bound:.0} (aux {aux}); {} fuzz cases identical",
        cases.len()
    ))
}

fn criterion_7(cases: &[Case]) -> Verdict {
    let mut retrieved = 0;
    for (i, case) in cases.iter().enumerate() {
        let naive = NaiveMatcher::new(&case.set);
        for (name, idx) in case.backends() {
            for id in 0..case.set.len() {
                let (p, selects) = idx.retrieve_pattern_counted(id).map_err(|e| e.to_string())?;
                ensure(p == naive.pattern(id), || format!("case {i} {name}: pattern {id}"))?;
                ensure(selects <= p.len() + 1, || {
                    format!("case {i} {name}: {selects} selects for |x| = {}", p.len())
                })?;
                retrieved += 1;
            }
        }
    }
    Ok(format!("{retrieved} retrievals exact, selects <= |x| + 1"))
}

fn criterion_8(cases: &[Case]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for (i, case) in cases.iter().enumerate() {
        let mut whole = Vec::new();
        let single = scan(&case.flat, &case.text, |o| whole.push(o));
        for _ in 0..100 {
            let cuts = rng.gen_range(0..=case.text.len().min(24) + 1);
            let mut points: Vec<usize> = (0..cuts).map(|_| rng.gen_range(0..=case.text.len())).collect();
            points.sort_unstable();
            let mut chunks = Vec::with_capacity(cuts + 1);
            let mut prev = 0;
            for p in points.into_iter().chain([case.text.len()]) {
                chunks.push(&case.text[prev..p]);
                prev = p;
            }
            let mut parts = Vec::new();
            let summary = scan_chunked(&case.flat, &chunks, |o| parts.push(o));
            ensure(parts == whole && summary == single, || {
                format!("case {i}: chunking at {} pieces differs", chunks.len())
            })?;
        }
    }
    Ok(format!("{} texts x 100 chunkings identical", cases.len()))
}

fn report(n: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let t0 = Instant::now();
    let verdict = f();
    let elapsed = t0.elapsed();
    let verdict = match (verdict, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (v, _) => v,
    };
    let (tag, detail) = match &verdict {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} criterion {n} [{name}] {detail} ({elapsed:.2?})");
    verdict.is_ok()
}

fn main() -> ExitCode {
    let cases = make_cases(1000, 0x5eed_0002);
    let dna = dna_instance();
    let results = [
        report(1, "worked example", Some(Duration::from_secs(1)), criterion_1),
        report(2, "oracle equivalence", Some(Duration::from_secs(60)), || criterion_2(&cases)),
        report(3, "structural oracles", Some(Duration::from_secs(30)), criterion_3),
        report(4, "step bound and linear time", None, || criterion_4(&cases)),
        report(5, "space accounting", None, || criterion_5(&dna)),
        report(6, "compressed backend", None, || criterion_6(&dna, &cases)),
        report(7, "implicit retrieval", None, || criterion_7(&cases)),
        report(8, "chunked scan", None, || criterion_8(&cases)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
