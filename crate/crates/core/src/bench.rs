//! Experiment grid: algorithms × pattern lengths over one generated corpus.
//!
//! Each cell samples a pattern set from the text, runs every selected
//! matcher over every pattern and checks that they all report the same
//! occurrences. The reported mean advancement is the average over patterns
//! of each pattern's own advancement per shift; the pooled ratio (total
//! advancement over total shifts across the cell) is kept alongside it.
//! The two differ: pooling weights each pattern by its shift count, which
//! favors patterns with short shifts.
//!
//! Cells run in parallel. Timed passes are serialized behind a process-wide
//! gate so no two cells are timed at once.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::corpus::{cell_seed, generate_text, sample_patterns, CorpusSpec, PatternSet};
use crate::matchers::{Algorithm, Matcher};
use crate::{Error, FrequencyTable, Result, Text};

static TIMING_GATE: Mutex<()> = Mutex::new(());

/// Where the worst-character rule gets its frequencies from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FreqSource {
    /// The distribution the corpus was generated from.
    #[default]
    ExactModel,
    /// Counts measured on the generated text.
    Empirical,
}

impl FromStr for FreqSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-model" => Ok(FreqSource::ExactModel),
            "empirical" => Ok(FreqSource::Empirical),
            other => Err(Error::InvalidSpec(format!("unknown frequency source `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(Error::InvalidSpec(format!("unknown table format `{other}`"))),
        }
    }
}

/// Default pattern lengths of the benchmark grid.
pub const GRID_LENGTHS: [usize; 9] = [2, 4, 8, 16, 32, 64, 128, 256, 512];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub corpus: CorpusSpec,
    pub pattern_lengths: Vec<usize>,
    pub pattern_count: usize,
    pub algorithms: Vec<Algorithm>,
    /// Timed passes per (algorithm, cell); the median is reported.
    pub repeats: usize,
    pub freq_source: FreqSource,
    /// When false, only the counting pass runs and no runtime is reported.
    pub measure_time: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.corpus.validate()?;
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.pattern_lengths.is_empty() {
            return bad("no pattern lengths".into());
        }
        if let Some(&m) = self.pattern_lengths.iter().find(|&&m| m == 0 || m > self.corpus.n) {
            return bad(format!("pattern length {m} not in 1..={}", self.corpus.n));
        }
        if self.pattern_count == 0 {
            return bad("pattern count must be at least 1".into());
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected".into());
        }
        if self.algorithms.contains(&Algorithm::Naive) {
            return bad("the naive matcher is a correctness oracle, not a benchmark entry".into());
        }
        Ok(())
    }
}

/// Metrics for one (algorithm, m) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub algorithm: Algorithm,
    pub m: usize,
    /// Average over patterns of per-pattern advancement per shift. NaN when
    /// no pattern performed a shift (only possible for `m = n`).
    pub mean_advancement: f64,
    /// Total advancement over total shifts for the whole cell.
    pub pooled_advancement: f64,
    pub total_shifts: u64,
    pub total_advancement: u64,
    pub total_comparisons: u64,
    pub median_runtime: Option<Duration>,
    pub occurrence_count: u64,
    pub occurrences_checksum: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    /// Ordered by pattern length, then by the spec's algorithm order.
    pub cells: Vec<CellResult>,
}

impl ExperimentResult {
    pub fn cell(&self, algorithm: Algorithm, m: usize) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.m == m)
    }

    pub fn mean_advancement(&self, algorithm: Algorithm, m: usize) -> Option<f64> {
        self.cell(algorithm, m).map(|c| c.mean_advancement)
    }
}

/// Generates the corpus and runs the grid.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let text = generate_text(&spec.corpus)?;
    run_experiment_on_text(spec, &text)
}

/// Runs the grid over an existing text, which must match the corpus
/// alphabet. The corpus distribution still supplies the exact-model
/// frequencies.
pub fn run_experiment_on_text(spec: &ExperimentSpec, text: &Text) -> Result<ExperimentResult> {
    spec.validate()?;
    spec.corpus.alphabet()?.ensure_same(text.alphabet())?;
    let f = match spec.freq_source {
        FreqSource::ExactModel => spec.corpus.frequencies()?,
        FreqSource::Empirical => FrequencyTable::empirical(text)?,
    };
    let per_length: Vec<Vec<CellResult>> = spec
        .pattern_lengths
        .par_iter()
        .map(|&m| run_cell(spec, text, &f, m))
        .collect::<Result<_>>()?;
    Ok(ExperimentResult { spec: spec.clone(), cells: per_length.into_iter().flatten().collect() })
}

fn checksum(occurrences: &[usize]) -> u64 {
    occurrences
        .iter()
        .fold(0xcbf2_9ce4_8422_2325, |h, &s| (h ^ (s as u64 + 1)).wrapping_mul(0x100_0000_01b3))
}

#[derive(Default)]
struct Tally {
    per_pattern_sum: f64,
    patterns_shifted: u64,
    shifts: u64,
    advancement: u64,
    comparisons: u64,
    occurrences: u64,
    checksum: u64,
}

fn run_cell(spec: &ExperimentSpec, text: &Text, f: &FrequencyTable, m: usize) -> Result<Vec<CellResult>> {
    let corpus = &spec.corpus;
    let seed = cell_seed(corpus.seed, corpus.sigma, &corpus.distribution, m);
    let set = sample_patterns(text, m, spec.pattern_count, seed)?;

    // Untimed pass: counters and cross-algorithm agreement.
    let mut tallies: Vec<Tally> = Vec::with_capacity(spec.algorithms.len());
    let mut reference: Vec<(usize, u64)> = Vec::new();
    for (a, &algo) in spec.algorithms.iter().enumerate() {
        let mut tally = Tally::default();
        for (i, pattern) in set.patterns.iter().enumerate() {
            let out = Matcher::new(algo, pattern, f)?.search(text)?;
            let found = (out.occurrences.len(), checksum(&out.occurrences));
            if a == 0 {
                reference.push(found);
            } else if reference[i] != found {
                return Err(Error::Disagreement {
                    dist: corpus.distribution.to_string(),
                    sigma: corpus.sigma,
                    m,
                    pattern_index: i,
                    pattern_seed: set.pattern_seeds[i],
                    left: spec.algorithms[0].name(),
                    left_count: reference[i].0,
                    right: algo.name(),
                    right_count: found.0,
                });
            }
            if let Some(adv) = out.mean_advancement() {
                tally.per_pattern_sum += adv;
                tally.patterns_shifted += 1;
            }
            tally.shifts += out.shift_count;
            tally.advancement += out.total_advancement;
            tally.comparisons += out.char_comparisons;
            tally.occurrences += found.0 as u64;
            tally.checksum = tally.checksum.wrapping_mul(31).wrapping_add(found.1);
        }
        tallies.push(tally);
    }

    let runtimes = if spec.measure_time {
        let _gate = TIMING_GATE.lock().unwrap_or_else(|e| e.into_inner());
        spec.algorithms
            .iter()
            .map(|&algo| time_algorithm(algo, &set, text, f, spec.repeats).map(Some))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![None; spec.algorithms.len()]
    };

    Ok(spec
        .algorithms
        .iter()
        .zip(tallies)
        .zip(runtimes)
        .map(|((&algorithm, t), median_runtime)| CellResult {
            algorithm,
            m,
            mean_advancement: t.per_pattern_sum / t.patterns_shifted as f64,
            pooled_advancement: t.advancement as f64 / t.shifts as f64,
            total_shifts: t.shifts,
            total_advancement: t.advancement,
            total_comparisons: t.comparisons,
            median_runtime,
            occurrence_count: t.occurrences,
            occurrences_checksum: t.checksum,
        })
        .collect())
}

/// One warm-up pass, then the median of `repeats` timed passes over the
/// whole pattern set. Each pass includes preprocessing.
fn time_algorithm(
    algo: Algorithm,
    set: &PatternSet,
    text: &Text,
    f: &FrequencyTable,
    repeats: usize,
) -> Result<Duration> {
    let pass = || -> Result<u64> {
        let mut sink = 0;
        for pattern in &set.patterns {
            sink += Matcher::new(algo, pattern, f)?.search(text)?.occurrences.len() as u64;
        }
        Ok(sink)
    };
    std::hint::black_box(pass()?);
    let mut times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        std::hint::black_box(pass()?);
        times.push(start.elapsed());
    }
    Ok(median(times))
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort();
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2
    }
}

pub const CSV_HEADER: &str = "dist,sigma,lambda,n,m,algo,mean_adv,total_shifts,total_cmps,median_runtime_s,seed";

/// Renders a result as CSV (one row per cell) or as markdown tables with
/// algorithms as rows and pattern lengths as columns.
pub fn emit_table(result: &ExperimentResult, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => emit_csv(result),
        TableFormat::Markdown => emit_markdown(result),
    }
}

fn emit_csv(result: &ExperimentResult) -> String {
    let corpus = &result.spec.corpus;
    let lambda = corpus.distribution.lambda().map(|l| l.to_string()).unwrap_or_default();
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for &algo in &result.spec.algorithms {
        for cell in result.cells.iter().filter(|c| c.algorithm == algo) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:.2},{},{},{},{}",
                corpus.distribution.name(),
                corpus.sigma,
                lambda,
                corpus.n,
                cell.m,
                algo.name(),
                cell.mean_advancement,
                cell.total_shifts,
                cell.total_comparisons,
                cell.median_runtime.map(|d| format!("{:.4}", d.as_secs_f64())).unwrap_or_default(),
                corpus.seed
            );
        }
    }
    out
}

type Render = fn(&CellResult) -> String;

fn emit_markdown(result: &ExperimentResult) -> String {
    let corpus = &result.spec.corpus;
    let lengths = &result.spec.pattern_lengths;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Problem: {} sigma={} n={} patterns={} seed={}\n",
        corpus.distribution, corpus.sigma, corpus.n, result.spec.pattern_count, corpus.seed
    );
    let sections: [(&str, Render); 2] = [
        ("Average advancement", |c| format!("{:.2}", c.mean_advancement)),
        ("Median running time (s)", |c| match c.median_runtime {
            Some(d) => format!("{:.4}", d.as_secs_f64()),
            None => "-".into(),
        }),
    ];
    for (k, (title, render)) in sections.into_iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "### {title}\n");
        let _ = write!(out, "| sigma={} |", corpus.sigma);
        for m in lengths {
            let _ = write!(out, " {m} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---:|".repeat(lengths.len()));
        out.push('\n');
        for &algo in &result.spec.algorithms {
            let _ = write!(out, "| {} |", algo.label());
            for &m in lengths {
                let value = result.cell(algo, m).map(render).unwrap_or_else(|| "-".into());
                let _ = write!(out, " {value} |");
            }
            out.push('\n');
        }
    }
    out
}
