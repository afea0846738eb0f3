//! Alphabets, texts, patterns and character-frequency models.
//!
//! Characters are dense small integers `0..sigma`. External byte files are
//! brought into that range by a [`ByteMapping`], either unchanged
//! ([`MappingMode::Dense`]) or by frequency rank ([`MappingMode::Remap`]).

use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// Tolerance on the sum of a [`FrequencyTable`].
pub const FREQ_SUM_TOLERANCE: f64 = 1e-9;

/// A finite alphabet `{0, 1, .., sigma - 1}` with `1 <= sigma <= 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(u16);

impl Alphabet {
    pub const MAX: usize = 256;

    pub fn new(sigma: usize) -> Result<Self> {
        if (1..=Self::MAX).contains(&sigma) {
            Ok(Alphabet(sigma as u16))
        } else {
            Err(Error::InvalidAlphabet(sigma))
        }
    }

    /// The byte alphabet, `sigma = 256`.
    pub fn bytes() -> Self {
        Alphabet(256)
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, c: u8) -> bool {
        (c as usize) < self.size()
    }

    fn check(self, data: &[u8]) -> Result<()> {
        match data.iter().position(|&c| !self.contains(c)) {
            Some(index) => Err(Error::CharOutOfRange { ch: data[index], index, sigma: self.size() }),
            None => Ok(()),
        }
    }

    pub(crate) fn ensure_same(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.size(), right: other.size() })
        }
    }
}

/// A text `T[0..n]`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    data: Vec<u8>,
    alphabet: Alphabet,
}

impl Text {
    pub fn new(data: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        alphabet.check(&data)?;
        Ok(Text { data, alphabet })
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.data
    }
}

/// A non-empty pattern `P[0..m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    data: Vec<u8>,
    alphabet: Alphabet,
}

impl Pattern {
    pub fn new(data: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyPattern);
        }
        alphabet.check(&data)?;
        Ok(Pattern { data, alphabet })
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    /// Pattern length `m`, always at least 1.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }
}

/// Relative character frequencies `f(c)`, summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    probs: Vec<f64>,
    alphabet: Alphabet,
}

impl FrequencyTable {
    pub fn new(probs: Vec<f64>, alphabet: Alphabet) -> Result<Self> {
        if probs.len() != alphabet.size() {
            return Err(Error::InvalidFrequencies(format!(
                "{} entries for an alphabet of size {}",
                probs.len(),
                alphabet.size()
            )));
        }
        if let Some(c) = probs.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidFrequencies(format!(
                "probability {} of character {c} is outside [0, 1]",
                probs[c]
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > FREQ_SUM_TOLERANCE {
            return Err(Error::InvalidFrequencies(format!("probabilities sum to {sum}")));
        }
        Ok(FrequencyTable { probs, alphabet })
    }

    /// `f(c) = 1 / sigma`.
    pub fn uniform(alphabet: Alphabet) -> Self {
        let sigma = alphabet.size();
        FrequencyTable { probs: vec![1.0 / sigma as f64; sigma], alphabet }
    }

    /// Inverse-rank power law of degree `lambda`.
    ///
    /// Character `c` has rank `c + 1`, so character 0 is the most frequent
    /// and receives weight `sigma^lambda`; the character of rank `i` gets
    /// `(sigma - i + 1)^lambda`, normalized by `sum_{j=1..sigma} j^lambda`.
    pub fn powerlaw(alphabet: Alphabet, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidFrequencies(format!("lambda {lambda} is not finite")));
        }
        let sigma = alphabet.size();
        let norm: f64 = (1..=sigma).map(|j| (j as f64).powf(lambda)).sum();
        let probs = (0..sigma).map(|c| ((sigma - c) as f64).powf(lambda) / norm).collect();
        Ok(FrequencyTable { probs, alphabet })
    }

    /// Frequencies measured by counting the characters of `text`.
    pub fn empirical(text: &Text) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut counts = vec![0u64; text.alphabet().size()];
        for &c in text.as_slice() {
            counts[c as usize] += 1;
        }
        let n = text.len() as f64;
        let probs = counts.into_iter().map(|k| k as f64 / n).collect();
        Ok(FrequencyTable { probs, alphabet: text.alphabet() })
    }

    #[inline]
    pub fn get(&self, c: u8) -> f64 {
        self.probs[c as usize]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// One `char_index,probability` line per character.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (c, p) in self.probs.iter().enumerate() {
            let _ = writeln!(out, "{c},{p}");
        }
        out
    }

    /// Parses `char_index,probability` lines. Characters without a line get
    /// probability zero; blank lines and `#` comments are skipped.
    pub fn from_csv(input: &str, alphabet: Alphabet) -> Result<Self> {
        let mut probs = vec![0.0; alphabet.size()];
        let mut seen = vec![false; alphabet.size()];
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let (c, p) = line
                .split_once(',')
                .ok_or_else(|| parse_err("expected `char_index,probability`".into()))?;
            let c: usize = c.trim().parse().map_err(|e| parse_err(format!("bad index: {e}")))?;
            let p: f64 = p.trim().parse().map_err(|e| parse_err(format!("bad probability: {e}")))?;
            if c >= alphabet.size() {
                return Err(parse_err(format!(
                    "index {c} outside alphabet of size {}",
                    alphabet.size()
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(parse_err(format!("duplicate index {c}")));
            }
            probs[c] = p;
        }
        FrequencyTable::new(probs, alphabet)
    }
}

/// How raw bytes from a file become characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MappingMode {
    /// Bytes are used as-is and must already be `< sigma`.
    Dense { sigma: usize },
    /// Distinct bytes are ranked by frequency, the most frequent becoming 0.
    Remap,
}

/// A byte-to-character translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ByteMapping {
    to_char: Vec<Option<u8>>,
    alphabet: Alphabet,
}

impl ByteMapping {
    /// Identity on `0..sigma`.
    pub fn dense(alphabet: Alphabet) -> Self {
        let to_char =
            (0..256usize).map(|b| (b < alphabet.size()).then_some(b as u8)).collect();
        ByteMapping { to_char, alphabet }
    }

    /// Ranks the distinct bytes of `corpus` by decreasing count (ties by byte
    /// value). Bytes that appear only in `extra` are appended after them.
    pub fn ranked(corpus: &[u8], extra: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in corpus {
            counts[b as usize] += 1;
        }
        let mut order: Vec<usize> = (0..256).filter(|&b| counts[b] > 0).collect();
        order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
        let mut to_char = vec![None; 256];
        for (rank, &b) in order.iter().enumerate() {
            to_char[b] = Some(rank as u8);
        }
        let mut next = order.len();
        for &b in extra {
            if to_char[b as usize].is_none() {
                to_char[b as usize] = Some(next as u8);
                next += 1;
            }
        }
        let alphabet = Alphabet(next.max(1) as u16);
        ByteMapping { to_char, alphabet }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Character assigned to byte `b`, if any.
    pub fn char_of(&self, b: u8) -> Option<u8> {
        self.to_char[b as usize]
    }

    pub fn map(&self, bytes: &[u8]) -> Result<Vec<u8>> {
        bytes
            .iter()
            .enumerate()
            .map(|(index, &b)| {
                self.char_of(b).ok_or(Error::CharOutOfRange {
                    ch: b,
                    index,
                    sigma: self.alphabet.size(),
                })
            })
            .collect()
    }

    pub fn text(&self, bytes: &[u8]) -> Result<Text> {
        Text::new(self.map(bytes)?, self.alphabet)
    }

    pub fn pattern(&self, bytes: &[u8]) -> Result<Pattern> {
        Pattern::new(self.map(bytes)?, self.alphabet)
    }
}

/// Loads a text file and its pattern file under a shared mapping.
///
/// In [`MappingMode::Remap`] the ranking is taken from the text; pattern
/// bytes absent from the text get the ranks after the text's characters.
pub fn load_text_and_pattern(
    text_path: &Path,
    pattern_path: &Path,
    mode: MappingMode,
) -> Result<(Text, Pattern, ByteMapping)> {
    let text_bytes = std::fs::read(text_path)?;
    let pattern_bytes = std::fs::read(pattern_path)?;
    let mapping = match mode {
        MappingMode::Dense { sigma } => ByteMapping::dense(Alphabet::new(sigma)?),
        MappingMode::Remap => ByteMapping::ranked(&text_bytes, &pattern_bytes),
    };
    let text = mapping.text(&text_bytes)?;
    let pattern = mapping.pattern(&pattern_bytes)?;
    Ok((text, pattern, mapping))
}

/// Loads a single raw-bytes text file.
pub fn load_text(path: &Path, mode: MappingMode) -> Result<(Text, ByteMapping)> {
    let bytes = std::fs::read(path)?;
    let mapping = match mode {
        MappingMode::Dense { sigma } => ByteMapping::dense(Alphabet::new(sigma)?),
        MappingMode::Remap => ByteMapping::ranked(&bytes, &[]),
    };
    Ok((mapping.text(&bytes)?, mapping))
}
