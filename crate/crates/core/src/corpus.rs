//! Random problem instances: i.i.d. texts under a frequency model and
//! random-substring pattern sets.

use std::fmt;

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Alphabet, Error, FrequencyTable, Pattern, Result, Text};

/// Identifies the character generator; written to metadata sidecars.
pub const GENERATOR_ID: &str = "chacha8-rand_chacha0.3+weighted-index-inverse-cdf";

/// Character distribution of a generated text.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    Uniform,
    PowerLaw { lambda: f64 },
}

impl Distribution {
    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::PowerLaw { .. } => "powerlaw",
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match *self {
            Distribution::Uniform => None,
            Distribution::PowerLaw { lambda } => Some(lambda),
        }
    }

    pub fn frequencies(&self, alphabet: Alphabet) -> Result<FrequencyTable> {
        match *self {
            Distribution::Uniform => Ok(FrequencyTable::uniform(alphabet)),
            Distribution::PowerLaw { lambda } => FrequencyTable::powerlaw(alphabet, lambda),
        }
    }

    fn tag(&self) -> u64 {
        match *self {
            Distribution::Uniform => 0,
            Distribution::PowerLaw { lambda } => 1 ^ lambda.to_bits().rotate_left(1),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform => f.write_str("uniform"),
            Distribution::PowerLaw { lambda } => write!(f, "powerlaw(lambda={lambda})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    pub distribution: Distribution,
    pub sigma: usize,
    pub n: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<Alphabet> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("text length must be at least 1".into()));
        }
        Alphabet::new(self.sigma)
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.sigma)
    }

    /// The exact distribution the text is drawn from.
    pub fn frequencies(&self) -> Result<FrequencyTable> {
        self.distribution.frequencies(self.alphabet()?)
    }

    /// One-line `key=value` description for metadata sidecars.
    pub fn metadata_line(&self) -> String {
        let lambda = self.distribution.lambda().map(|l| l.to_string()).unwrap_or_default();
        format!(
            "dist={} sigma={} lambda={} n={} seed={} generator={}",
            self.distribution.name(),
            self.sigma,
            lambda,
            self.n,
            self.seed,
            GENERATOR_ID
        )
    }
}

/// Draws `n` characters i.i.d. from the spec's distribution.
pub fn generate_text(spec: &CorpusSpec) -> Result<Text> {
    let alphabet = spec.validate()?;
    let f = spec.frequencies()?;
    let dist = WeightedIndex::new(f.probs())
        .map_err(|e| Error::InvalidFrequencies(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let data = (0..spec.n).map(|_| dist.sample(&mut rng) as u8).collect();
    Text::new(data, alphabet)
}

/// Patterns of a common length cut from a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub patterns: Vec<Pattern>,
    pub source_positions: Vec<usize>,
    /// Seed each pattern's offset was drawn with.
    pub pattern_seeds: Vec<u64>,
    pub seed: u64,
}

impl PatternSet {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// Picks `count` offsets uniformly from `0..=n-m`, with replacement, and
/// copies the substrings. Pattern `i` draws its offset from
/// `derive_seed(seed, &[i])`, so any one pattern can be reproduced alone.
pub fn sample_patterns(text: &Text, m: usize, count: usize, seed: u64) -> Result<PatternSet> {
    let n = text.len();
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > n {
        return Err(Error::PatternTooLong { m, n });
    }
    if count == 0 {
        return Err(Error::InvalidSpec("pattern count must be at least 1".into()));
    }
    let mut set = PatternSet {
        patterns: Vec::with_capacity(count),
        source_positions: Vec::with_capacity(count),
        pattern_seeds: Vec::with_capacity(count),
        seed,
    };
    for i in 0..count {
        let pattern_seed = derive_seed(seed, &[i as u64]);
        let offset = ChaCha8Rng::seed_from_u64(pattern_seed).gen_range(0..=n - m);
        let data = text.as_slice()[offset..offset + m].to_vec();
        set.patterns.push(Pattern::new(data, text.alphabet())?);
        set.source_positions.push(offset);
        set.pattern_seeds.push(pattern_seed);
    }
    Ok(set)
}

/// Seed for the patterns of one benchmark cell.
pub fn cell_seed(master: u64, sigma: usize, distribution: &Distribution, m: usize) -> u64 {
    derive_seed(master, &[sigma as u64, distribution.tag(), m as u64])
}

/// Mixes `parts` into `master` with the splitmix64 finalizer.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(master), |h, &p| mix(h.wrapping_add(0x9e37_79b9_7f4a_7c15) ^ p))
}
