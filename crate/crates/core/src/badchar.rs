//! Bad-character tables and the last-position machinery.
//!
//! Every rule here has the same shape: probe the text character at offset
//! `q` from the current shift and move the pattern so that character lines
//! up with its rightmost occurrence in `P[0..q]`, or past it when absent.
//! Horspool probes `q = m - 1`, Quick-Search probes `q = m`.

use std::fmt;
use std::fmt::Write as _;

use crate::{Alphabet, Error, Pattern, Result};

/// Which heuristic a [`ShiftTable`] implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Horspool,
    QuickSearch,
    /// Componentwise `max(hbc, qbc)`.
    Smith,
    WorstCharacter,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Horspool => "hbc",
            Rule::QuickSearch => "qbc",
            Rule::Smith => "sm",
            Rule::WorstCharacter => "wc",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense per-character shift increments for one probe offset.
///
/// Every entry lies in `1..=probe_offset + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTable {
    shifts: Vec<usize>,
    probe_offset: usize,
    rule: Rule,
}

impl ShiftTable {
    pub(crate) fn from_parts(shifts: Vec<usize>, probe_offset: usize, rule: Rule) -> Self {
        debug_assert!(shifts.iter().all(|&k| (1..=probe_offset + 1).contains(&k)));
        ShiftTable { shifts, probe_offset, rule }
    }

    #[inline]
    pub fn shift(&self, c: u8) -> usize {
        self.shifts[c as usize]
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    /// Offset `q` of the probed text character relative to the shift.
    pub fn probe_offset(&self) -> usize {
        self.probe_offset
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    /// One `char_index,shift` line per character.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (c, k) in self.shifts.iter().enumerate() {
            let _ = writeln!(out, "{c},{k}");
        }
        out
    }
}

/// Rightmost occurrence of each character in the pattern, `-1` if absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcTable {
    rightmost: Vec<isize>,
    m: usize,
}

impl BcTable {
    #[inline]
    pub fn rightmost(&self, c: u8) -> isize {
        self.rightmost[c as usize]
    }

    pub fn as_slice(&self) -> &[isize] {
        &self.rightmost
    }

    /// The table as increments `m - 1 - rightmost(c)`; `m` for absent characters.
    pub fn increments(&self) -> Vec<usize> {
        self.rightmost.iter().map(|&r| (self.m as isize - 1 - r) as usize).collect()
    }
}

/// Rightmost occurrence of every character, as in the Boyer-Moore
/// bad-character rule. The shift it suggests depends on the mismatch
/// position, so only the index is stored.
pub fn compute_bc(pattern: &Pattern) -> BcTable {
    let mut rightmost = vec![-1; pattern.alphabet().size()];
    for (i, &c) in pattern.as_slice().iter().enumerate() {
        rightmost[c as usize] = i as isize;
    }
    BcTable { rightmost, m: pattern.len() }
}

/// Horspool: `hbc(c) = min({1 <= k < m | P[m-1-k] = c} ∪ {m})`, probe `m - 1`.
pub fn compute_hbc(pattern: &Pattern) -> ShiftTable {
    let p = pattern.as_slice();
    let m = p.len();
    let mut shifts = vec![m; pattern.alphabet().size()];
    for (i, &c) in p[..m - 1].iter().enumerate() {
        shifts[c as usize] = m - 1 - i;
    }
    ShiftTable::from_parts(shifts, m - 1, Rule::Horspool)
}

/// Quick-Search: `qbc(c) = min({1 <= k <= m | P[m-k] = c} ∪ {m+1})`, probe `m`.
pub fn compute_qbc(pattern: &Pattern) -> ShiftTable {
    let p = pattern.as_slice();
    let m = p.len();
    let mut shifts = vec![m + 1; pattern.alphabet().size()];
    for (i, &c) in p.iter().enumerate() {
        shifts[c as usize] = m - i;
    }
    ShiftTable::from_parts(shifts, m, Rule::QuickSearch)
}

/// The Smith rule folded into one table, `max(hbc(c), qbc(c))`.
///
/// The Smith matcher itself reads two different text characters and so
/// uses the Horspool and Quick-Search tables separately; this merged form
/// is what you get when both probes see the same character.
pub fn compute_smith(pattern: &Pattern) -> ShiftTable {
    let hbc = compute_hbc(pattern);
    let qbc = compute_qbc(pattern);
    let shifts = hbc.shifts.iter().zip(&qbc.shifts).map(|(&h, &q)| h.max(q)).collect();
    ShiftTable::from_parts(shifts, pattern.len(), Rule::Smith)
}

/// Streaming last-position function `lp^i`.
///
/// After `i` calls to [`advance`](Self::advance), `get(c)` is the rightmost
/// index of `c` in `P[0..i]`, or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastPosition {
    lp: Vec<isize>,
    frontier: usize,
}

impl LastPosition {
    pub fn new(alphabet: Alphabet) -> Self {
        LastPosition { lp: vec![-1; alphabet.size()], frontier: 0 }
    }

    #[inline]
    pub fn get(&self, c: u8) -> isize {
        self.lp[c as usize]
    }

    /// Length of the prefix covered so far.
    pub fn frontier(&self) -> usize {
        self.frontier
    }

    pub fn as_slice(&self) -> &[isize] {
        &self.lp
    }

    /// Extends the covered prefix by one character of `pattern`.
    pub fn advance(&mut self, pattern: &Pattern) -> Result<()> {
        let i = self.frontier;
        let &c = pattern.as_slice().get(i).ok_or(Error::FrontierExhausted(i))?;
        self.lp[c as usize] = i as isize;
        self.frontier += 1;
        Ok(())
    }
}

/// Generalized bad-character function by direct evaluation of
/// `min({1 <= k <= i | P[i-k] = c} ∪ {i+1})`. O(i) per call; reference only.
pub fn gbc_full(pattern: &Pattern, i: usize, c: u8) -> Result<usize> {
    let p = pattern.as_slice();
    if i > p.len() {
        return Err(Error::PositionOutOfRange { pos: i, max: p.len() });
    }
    Ok((1..=i).find(|&k| p[i - k] == c).unwrap_or(i + 1))
}
