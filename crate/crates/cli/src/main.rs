use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use worstchar::alphabet::{load_text, load_text_and_pattern};
use worstchar::badchar::{compute_hbc, compute_qbc, compute_smith};
use worstchar::bench::{emit_table, run_experiment, ExperimentSpec, FreqSource, TableFormat};
use worstchar::corpus::{generate_text, CorpusSpec, Distribution};
use worstchar::matchers::{Matcher, WorstCharacter};
use worstchar::worst::{find_worst_character, precompute_wc};
use worstchar::{Algorithm, FrequencyTable, MappingMode};

#[derive(Parser)]
#[command(name = "worstchar", version, about = "Bad-character string matching and advancement benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random text, one byte per character.
    Gen(GenArgs),
    /// Search a pattern file in a text file.
    Search(SearchArgs),
    /// Run the advancement/runtime grid and print a table.
    Bench(BenchArgs),
    /// Print the character frequencies of a text as `char_index,probability`.
    Freq(FreqArgs),
    /// Print a pattern's shift table as `char_index,shift`.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    Powerlaw,
}

#[derive(Clone, Copy, ValueEnum)]
enum MappingArg {
    Dense,
    Remap,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum FreqArg {
    Exact,
    Empirical,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Naive,
    Hor,
    Qs,
    Sm,
    Wc,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Hbc,
    Qbc,
    Sm,
    Wc,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, value_enum)]
    dist: DistArg,
    #[arg(long)]
    sigma: usize,
    /// Power-law degree.
    #[arg(long, default_value_t = 5.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2_000_000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        let distribution = match self.dist {
            DistArg::Uniform => Distribution::Uniform,
            DistArg::Powerlaw => Distribution::PowerLaw { lambda: self.lambda },
        };
        CorpusSpec { distribution, sigma: self.sigma, n: self.n, seed: self.seed }
    }
}

#[derive(Args)]
struct MappingArgs {
    /// `dense`: bytes are characters and must be below --sigma.
    /// `remap`: bytes are ranked by frequency in the text.
    #[arg(long, value_enum, default_value = "dense")]
    mapping: MappingArg,
    /// Alphabet size for dense mapping.
    #[arg(long, default_value_t = 256)]
    sigma: usize,
}

impl MappingArgs {
    fn mode(&self) -> MappingMode {
        match self.mapping {
            MappingArg::Dense => MappingMode::Dense { sigma: self.sigma },
            MappingArg::Remap => MappingMode::Remap,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long)]
    pattern_file: PathBuf,
    #[arg(long)]
    text_file: PathBuf,
    /// Frequencies for `wc`; measured from the text when omitted.
    #[arg(long)]
    freq_file: Option<PathBuf>,
    #[command(flatten)]
    mapping: MappingArgs,
    /// Print the advancement profile of `wc` to stderr.
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value_t = 100)]
    patterns: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64,128,256,512")]
    lengths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "hor,qs,sm,wc")]
    algos: Vec<String>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, value_enum, default_value = "exact")]
    freq: FreqArg,
    /// Skip the timed passes; only advancement counters are reported.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct FreqArgs {
    #[arg(long)]
    text_file: PathBuf,
    #[command(flatten)]
    mapping: MappingArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    rule: RuleArg,
    #[arg(long)]
    pattern_file: PathBuf,
    #[arg(long, default_value_t = 256)]
    sigma: usize,
    /// Probe offset for `wc`; chosen from --freq-file (or uniform) when omitted.
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    freq_file: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(args) => gen(args),
        Command::Search(args) => search(args),
        Command::Bench(args) => bench(args),
        Command::Freq(args) => freq(args),
        Command::Table(args) => table(args),
    }
}

fn read_freq_file(path: &PathBuf, alphabet: worstchar::Alphabet) -> Result<FrequencyTable> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FrequencyTable::from_csv(&raw, alphabet).with_context(|| format!("parsing {}", path.display()))
}

fn gen(args: GenArgs) -> Result<()> {
    let spec = args.corpus.spec();
    let text = generate_text(&spec)?;
    fs::write(&args.out, text.as_slice()).with_context(|| format!("writing {}", args.out.display()))?;
    let mut meta = args.out.clone().into_os_string();
    meta.push(".meta");
    fs::write(&meta, spec.metadata_line() + "\n")?;
    Ok(())
}

fn search(args: SearchArgs) -> Result<()> {
    let (text, pattern, mapping) =
        load_text_and_pattern(&args.text_file, &args.pattern_file, args.mapping.mode())
            .context("loading inputs")?;
    let f = match &args.freq_file {
        Some(path) => read_freq_file(path, mapping.alphabet())?,
        None if text.is_empty() => FrequencyTable::uniform(mapping.alphabet()),
        None => FrequencyTable::empirical(&text)?,
    };
    let algorithm = match args.algo {
        AlgoArg::Naive => Algorithm::Naive,
        AlgoArg::Hor => Algorithm::Hor,
        AlgoArg::Qs => Algorithm::Qs,
        AlgoArg::Sm => Algorithm::Sm,
        AlgoArg::Wc => Algorithm::Wc,
    };
    let matcher = Matcher::new(algorithm, &pattern, &f)?;
    if args.explain {
        match &matcher {
            Matcher::WorstCharacter(wc) => eprint!("{}", wc.profile().expect("chosen from f").explain()),
            _ => bail!("--explain applies to --algo wc only"),
        }
    }
    let out = matcher.search(&text)?;

    let stdout = io::stdout();
    let mut w = io::BufWriter::new(stdout.lock());
    for s in &out.occurrences {
        writeln!(w, "{s}")?;
    }
    writeln!(
        w,
        "shifts={} advanced={} cmps={}",
        out.shift_count, out.total_advancement, out.char_comparisons
    )?;
    w.flush()?;
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let algorithms = args
        .algos
        .iter()
        .map(|a| a.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    let spec = ExperimentSpec {
        corpus: args.corpus.spec(),
        pattern_lengths: args.lengths,
        pattern_count: args.patterns,
        algorithms,
        repeats: args.repeats,
        freq_source: match args.freq {
            FreqArg::Exact => FreqSource::ExactModel,
            FreqArg::Empirical => FreqSource::Empirical,
        },
        measure_time: !args.no_timing,
    };
    let result = run_experiment(&spec)?;
    let format = match args.format {
        FormatArg::Csv => TableFormat::Csv,
        FormatArg::Markdown => TableFormat::Markdown,
    };
    print!("{}", emit_table(&result, format));
    Ok(())
}

fn freq(args: FreqArgs) -> Result<()> {
    let (text, _) = load_text(&args.text_file, args.mapping.mode())?;
    print!("{}", FrequencyTable::empirical(&text)?.to_csv());
    Ok(())
}

fn table(args: TableArgs) -> Result<()> {
    let alphabet = worstchar::Alphabet::new(args.sigma)?;
    let bytes = fs::read(&args.pattern_file)?;
    let pattern = worstchar::Pattern::new(bytes, alphabet)?;
    let table = match args.rule {
        RuleArg::Hbc => compute_hbc(&pattern),
        RuleArg::Qbc => compute_qbc(&pattern),
        RuleArg::Sm => compute_smith(&pattern),
        RuleArg::Wc => match args.q {
            Some(q) => precompute_wc(&pattern, q)?,
            None => {
                let f = match &args.freq_file {
                    Some(path) => read_freq_file(path, alphabet)?,
                    None => FrequencyTable::uniform(alphabet),
                };
                let q = find_worst_character(&pattern, &f)?.q;
                WorstCharacter::with_offset(&pattern, q)?.table().clone()
            }
        },
    };
    print!("{}", table.to_csv());
    Ok(())
}
