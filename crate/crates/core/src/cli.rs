//! The `sdmx` command-line tool.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input or
//! arguments, 3 unreadable or corrupt index file.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bench::{bench_scaling, bench_scan, BenchResult};
use crate::builder::PatternSet;
use crate::error::Error;
use crate::index::{Backend, Occurrence, SuccinctAcIndex};
use crate::matcher::{scan, ScanSummary, Scanner};
use crate::oracle::{alphabet_of_size, random_case, CaseShape, NaiveMatcher};
use crate::stats::space_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CORRUPT: i32 = 3;

const READ_CHUNK: usize = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "sdmx", version, about = "Succinct Aho-Corasick dictionary matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an index file from a pattern file.
    Build {
        patterns: PathBuf,
        output: PathBuf,
        /// Transition representation: flat or compressed.
        #[arg(long, default_value = "flat")]
        transitions: Backend,
        #[command(flatten)]
        input: PatternInput,
    },
    /// Report every occurrence as `start<TAB>end<TAB>pattern_id`.
    Scan {
        index: PathBuf,
        /// Text file; stdin when absent or `-`.
        text: Option<PathBuf>,
        /// Append the matched pattern as a fourth column.
        #[arg(long)]
        verbose: bool,
    },
    /// Print the space report of an index.
    Stats { index: PathBuf },
    /// Compare both backends with the brute-force matcher.
    Verify {
        /// Pattern file (not needed with --fuzz).
        patterns: Option<PathBuf>,
        /// Text file; empty text when absent.
        text: Option<PathBuf>,
        #[command(flatten)]
        input: PatternInput,
        /// Run this many seeded random cases instead.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rebuild patterns from the index alone.
    Retrieve {
        index: PathBuf,
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// Measure scan throughput.
    Bench {
        index: PathBuf,
        text: PathBuf,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Also time the text repeated twice and report the ratio.
        #[arg(long)]
        scale: bool,
    },
}

#[derive(Debug, Args)]
struct PatternInput {
    /// Patterns as records of a u32 little-endian length followed by bytes.
    #[arg(long)]
    binary: bool,
}

/// Failure with an exit code and a message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::invalid(format!("{}: {e}", path.display()))
}

fn output_failure(e: io::Error) -> Failure {
    Failure::invalid(format!("write failed: {e}"))
}

/// Splits a newline-delimited pattern file; a trailing CR is dropped.
pub fn parse_lines(data: &[u8]) -> Vec<Vec<u8>> {
    let body = data.strip_suffix(b"\n").unwrap_or(data);
    if data.is_empty() {
        return Vec::new();
    }
    body.split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l).to_vec())
        .collect()
}

/// Decodes length-prefixed records.
pub fn parse_binary(data: &[u8]) -> std::result::Result<Vec<Vec<u8>>, String> {
    let mut out = Vec::new();
    let mut rest = data;
    while !rest.is_empty() {
        let record = out.len() + 1;
        if rest.len() < 4 {
            return Err(format!("record {record}: truncated length prefix"));
        }
        let len = u32::from_le_bytes(rest[..4].try_into().unwrap()) as usize;
        rest = &rest[4..];
        if rest.len() < len {
            return Err(format!("record {record}: truncated pattern"));
        }
        out.push(rest[..len].to_vec());
        rest = &rest[len..];
    }
    Ok(out)
}

fn load_patterns(path: &Path, binary: bool) -> std::result::Result<PatternSet, Failure> {
    let data = std::fs::read(path).map_err(|e| io_failure(path, e))?;
    let (raw, unit) = if binary {
        (parse_binary(&data).map_err(Failure::invalid)?, "record")
    } else {
        (parse_lines(&data), "line")
    };
    PatternSet::new(raw).map_err(|e| {
        Failure::invalid(match e {
            Error::NoPatterns => format!("{}: no patterns", path.display()),
            Error::EmptyPattern { index } => {
                format!("{}: {unit} {}: empty pattern", path.display(), index + 1)
            }
            Error::DuplicatePattern { index, first } => format!(
                "{}: {unit} {}: duplicate of {unit} {}",
                path.display(),
                index + 1,
                first + 1
            ),
            other => other.to_string(),
        })
    })
}

fn load_index(path: &Path) -> std::result::Result<SuccinctAcIndex, Failure> {
    SuccinctAcIndex::load(path).map_err(|e| match e {
        Error::Io(io) => io_failure(path, io),
        other => Failure {
            code: EXIT_CORRUPT,
            message: format!("{}: {other}", path.display()),
        },
    })
}

fn summary_line(s: &ScanSummary) -> String {
    let c = s.counters;
    format!(
        "text_len={} occurrences={} next_steps={} fail_steps={} report_steps={} probes={}",
        s.text_len, s.occurrences, c.next_steps, c.fail_steps, c.report_steps, c.probes
    )
}

fn bench_line(label: &str, r: &BenchResult) -> String {
    format!(
        "{label}: bytes={} reps={} best={:.3}s throughput={:.2} MB/s steps_per_char={:.4} occurrences={}",
        r.text_len,
        r.reps,
        r.best.as_secs_f64(),
        r.mb_per_sec(),
        r.steps_per_char(),
        r.occurrences
    )
}

/// Runs the tool with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = dispatch(cli.command, stdin, stdout, stderr);
    let _ = stdout.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Build {
            patterns,
            output,
            transitions,
            input,
        } => cmd_build(&patterns, &output, transitions, input.binary, stderr),
        Command::Scan {
            index,
            text,
            verbose,
        } => cmd_scan(&index, text.as_deref(), verbose, stdin, stdout, stderr),
        Command::Stats { index } => {
            let idx = load_index(&index)?;
            writeln!(stdout, "{}", space_report(&idx)).map_err(output_failure)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            patterns,
            text,
            input,
            fuzz,
            seed,
        } => match fuzz {
            Some(n) => cmd_fuzz(n, seed, stdout),
            None => {
                let patterns =
                    patterns.ok_or_else(|| Failure::invalid("verify needs a pattern file or --fuzz"))?;
                cmd_verify(&patterns, text.as_deref(), input.binary, stdout)
            }
        },
        Command::Retrieve { index, id, all } => cmd_retrieve(&index, id, all, stdout),
        Command::Bench {
            index,
            text,
            reps,
            scale,
        } => cmd_bench(&index, &text, reps, scale, stdout),
    }
}

fn cmd_build(
    patterns: &Path,
    output: &Path,
    backend: Backend,
    binary: bool,
    stderr: &mut dyn Write,
) -> CmdResult {
    let set = load_patterns(patterns, binary)?;
    let idx = SuccinctAcIndex::build_from(&set, backend).map_err(|e| Failure::invalid(e.to_string()))?;
    let bytes = idx.to_bytes();
    std::fs::write(output, &bytes).map_err(|e| io_failure(output, e))?;
    let meta = idx.meta();
    writeln!(
        stderr,
        "built {}: m={} d={} n={} sigma={} backend={} bytes={}",
        output.display(),
        meta.states,
        meta.patterns,
        meta.total_len,
        meta.sigma,
        backend,
        bytes.len()
    )
    .map_err(output_failure)?;
    Ok(EXIT_OK)
}

fn cmd_scan(
    index: &Path,
    text: Option<&Path>,
    verbose: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let idx = load_index(index)?;
    let patterns: Vec<Vec<u8>> = if verbose {
        (0..idx.num_patterns())
            .map(|i| idx.retrieve_pattern(i))
            .collect::<crate::Result<_>>()
            .map_err(|e| Failure {
                code: EXIT_CORRUPT,
                message: e.to_string(),
            })?
    } else {
        Vec::new()
    };

    let mut file;
    let reader: &mut dyn Read = match text {
        Some(p) if p != Path::new("-") => {
            file = File::open(p).map_err(|e| io_failure(p, e))?;
            &mut file
        }
        _ => stdin,
    };

    let mut out = BufWriter::new(stdout);
    let mut write_err = None;
    let mut sink = |o: Occurrence| {
        if write_err.is_some() {
            return;
        }
        let r = if verbose {
            writeln!(out, "{o}\t{}", String::from_utf8_lossy(&patterns[o.pattern_id]))
        } else {
            writeln!(out, "{o}")
        };
        if let Err(e) = r {
            write_err = Some(e);
        }
    };
    let mut scanner = Scanner::new(&idx);
    let mut buf = vec![0u8; READ_CHUNK];
    loop {
        let n = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(Failure::invalid(format!("reading text: {e}"))),
        };
        scanner.feed(&buf[..n], &mut sink);
    }
    if let Some(e) = write_err {
        return Err(output_failure(e));
    }
    out.flush().map_err(output_failure)?;
    writeln!(stderr, "{}", summary_line(&scanner.summary())).map_err(output_failure)?;
    Ok(EXIT_OK)
}

/// Sorted occurrences of both backends against the oracle; the first
/// difference found, if any.
fn compare_all(set: &PatternSet, text: &[u8]) -> std::result::Result<Option<String>, Failure> {
    let expected = NaiveMatcher::new(set).scan(text);
    for backend in [Backend::Flat, Backend::Compressed] {
        let idx = SuccinctAcIndex::build_from(set, backend)
            .map_err(|e| Failure::invalid(e.to_string()))?;
        let mut got = Vec::new();
        scan(&idx, text, |o| got.push(o));
        got.sort_unstable();
        if got != expected {
            let at = got.iter().zip(&expected).position(|(a, b)| a != b);
            let detail = match at {
                Some(i) => format!("index reports {} where oracle has {}", got[i], expected[i]),
                None if got.len() > expected.len() => {
                    format!("index reports extra {}", got[expected.len()])
                }
                None => format!("index misses {}", expected[got.len()]),
            };
            return Ok(Some(format!("{backend} backend: {detail}")));
        }
    }
    Ok(None)
}

fn cmd_verify(patterns: &Path, text: Option<&Path>, binary: bool, stdout: &mut dyn Write) -> CmdResult {
    let set = load_patterns(patterns, binary)?;
    let text = match text {
        Some(p) => std::fs::read(p).map_err(|e| io_failure(p, e))?,
        None => Vec::new(),
    };
    match compare_all(&set, &text)? {
        None => {
            writeln!(stdout, "ok: both backends agree with the brute-force matcher")
                .map_err(output_failure)?;
            Ok(EXIT_OK)
        }
        Some(diff) => {
            writeln!(stdout, "mismatch: {diff}").map_err(output_failure)?;
            Ok(EXIT_MISMATCH)
        }
    }
}

fn cmd_fuzz(cases: usize, seed: u64, stdout: &mut dyn Write) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigmas = [2, 4, 26, 256];
    let mut occurrences = 0usize;
    for case in 0..cases {
        let alphabet = alphabet_of_size(sigmas[case % sigmas.len()]);
        let rc = random_case(&mut rng, &alphabet, CaseShape::default());
        let set = PatternSet::new(rc.patterns).map_err(|e| Failure::invalid(e.to_string()))?;
        if let Some(diff) = compare_all(&set, &rc.text)? {
            writeln!(stdout, "mismatch in case {case} (seed {seed}): {diff}").map_err(output_failure)?;
            return Ok(EXIT_MISMATCH);
        }
        occurrences += NaiveMatcher::new(&set).scan(&rc.text).len();
    }
    writeln!(stdout, "ok: {cases} cases, {occurrences} occurrences, seed {seed}").map_err(output_failure)?;
    Ok(EXIT_OK)
}

fn cmd_retrieve(index: &Path, id: Option<usize>, all: bool, stdout: &mut dyn Write) -> CmdResult {
    let idx = load_index(index)?;
    let d = idx.num_patterns();
    let ids: Vec<usize> = if all {
        (0..d).collect()
    } else {
        let id = id.expect("clap enforces id or --all");
        if id >= d {
            return Err(Failure::invalid(format!("pattern id {id} out of range (d = {d})")));
        }
        vec![id]
    };
    let mut out = BufWriter::new(stdout);
    for i in ids {
        let p = idx.retrieve_pattern(i).map_err(|e| Failure {
            code: EXIT_CORRUPT,
            message: e.to_string(),
        })?;
        out.write_all(&p).and_then(|_| out.write_all(b"\n")).map_err(output_failure)?;
    }
    out.flush().map_err(output_failure)?;
    Ok(EXIT_OK)
}

fn cmd_bench(index: &Path, text: &Path, reps: usize, scale: bool, stdout: &mut dyn Write) -> CmdResult {
    if reps == 0 {
        return Err(Failure::invalid("--reps must be at least 1"));
    }
    let idx = load_index(index)?;
    let text = std::fs::read(text).map_err(|e| io_failure(text, e))?;
    let map = |e: Error| Failure::invalid(e.to_string());
    if scale {
        let r = bench_scaling(&idx, &text, reps).map_err(map)?;
        writeln!(stdout, "{}", bench_line("single", &r.single)).map_err(output_failure)?;
        writeln!(stdout, "{}", bench_line("doubled", &r.doubled)).map_err(output_failure)?;
        writeln!(stdout, "time ratio (doubled / single) = {:.3}", r.ratio()).map_err(output_failure)?;
    } else {
        let r = bench_scan(&idx, &text, reps).map_err(map)?;
        writeln!(stdout, "{}", bench_line("scan", &r)).map_err(output_failure)?;
    }
    Ok(EXIT_OK)
}
