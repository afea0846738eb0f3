//! Worst-character relative position and its shift table.
//!
//! For a probe offset `i` the expected shift under frequencies `f` is
//! `adv(i) = sum_c f(c) * gbc(i, c)`. It satisfies
//!
//! ```text
//! adv(0) = 1
//! adv(i) = adv(i-1) + 1 - f(P[i-1]) * gbc(i-1, P[i-1])
//! ```
//!
//! because moving the probe one step right adds one to every `gbc` value
//! except the one of `P[i-1]`, which drops to 1. The only `gbc` entries the
//! recurrence needs are `gbc(i, P[i]) = i - lp^i(P[i])`, so a single
//! left-to-right pass with a [`LastPosition`] array yields the whole profile
//! in O(m + sigma).

use std::fmt::Write as _;

use crate::badchar::{gbc_full, LastPosition, Rule, ShiftTable};
use crate::{Error, FrequencyTable, Pattern, Result};

/// Advancements closer than this to the maximum count as attaining it.
///
/// Periodic patterns produce exact ties (`abab` under `f(a) = 0.7` has
/// `adv(2) = adv(4)`) that rounding can split either way.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Expected advancement at every probe offset `0..=m`, plus the chosen one.
#[derive(Clone, Debug, PartialEq)]
pub struct AdvancementProfile {
    pub adv: Vec<f64>,
    /// Smallest offset whose advancement is within [`TIE_TOLERANCE`] of `max_adv`.
    pub q: usize,
    pub max_adv: f64,
}

impl AdvancementProfile {
    /// Builds the profile from raw values, choosing `q` as the smallest
    /// (tolerant) argmax.
    pub fn from_values(adv: Vec<f64>) -> Self {
        let max_adv = adv.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let q = adv.iter().position(|&a| a >= max_adv - TIE_TOLERANCE).unwrap_or(0);
        AdvancementProfile { adv, q, max_adv }
    }

    pub fn pattern_len(&self) -> usize {
        self.adv.len() - 1
    }

    /// One fixed-width line per offset, the chosen one marked with `<- q`.
    pub fn explain(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.adv.iter().enumerate() {
            let mark = if i == self.q { "  <- q" } else { "" };
            let _ = writeln!(out, "{i:>6} {a:>14.6}{mark}");
        }
        out
    }
}

/// `sum_c f(c) * gbc(i, c)` evaluated straight from the definition.
pub fn adv_bruteforce(pattern: &Pattern, f: &FrequencyTable, i: usize) -> Result<f64> {
    pattern.alphabet().ensure_same(f.alphabet())?;
    let mut total = 0.0;
    for c in 0..pattern.alphabet().size() {
        total += f.get(c as u8) * gbc_full(pattern, i, c as u8)? as f64;
    }
    Ok(total)
}

/// Computes the advancement profile and the worst-character offset `q`.
pub fn find_worst_character(pattern: &Pattern, f: &FrequencyTable) -> Result<AdvancementProfile> {
    find_worst_character_counted(pattern, f).map(|(profile, _)| profile)
}

/// Like [`find_worst_character`], also returning the number of elementary
/// steps taken: one per last-position slot initialized, one per recurrence
/// step and one per profile entry scanned for the argmax.
pub fn find_worst_character_counted(
    pattern: &Pattern,
    f: &FrequencyTable,
) -> Result<(AdvancementProfile, u64)> {
    pattern.alphabet().ensure_same(f.alphabet())?;
    let p = pattern.as_slice();
    let m = p.len();

    let mut lp = LastPosition::new(pattern.alphabet());
    let mut steps = pattern.alphabet().size() as u64;

    let mut adv = Vec::with_capacity(m + 1);
    adv.push(1.0);
    for i in 1..=m {
        let c = p[i - 1];
        // lp now covers P[0..i-1], so this is gbc(i-1, P[i-1]).
        let gbc = (i - 1) as isize - lp.get(c);
        let a = adv[i - 1] + 1.0 - f.get(c) * gbc as f64;
        lp.advance(pattern)?;
        adv.push(a);
        steps += 1;
    }
    // Argmax scan over the profile.
    steps += adv.len() as u64;
    Ok((AdvancementProfile::from_values(adv), steps))
}

/// `wc(c) = min({1 <= k <= q | P[q-k] = c} ∪ {q+1})`, probe offset `q`.
pub fn precompute_wc(pattern: &Pattern, q: usize) -> Result<ShiftTable> {
    let p = pattern.as_slice();
    if q > p.len() {
        return Err(Error::PositionOutOfRange { pos: q, max: p.len() });
    }
    let mut shifts = vec![q + 1; pattern.alphabet().size()];
    for (i, &c) in p[..q].iter().enumerate() {
        shifts[c as usize] = q - i;
    }
    Ok(ShiftTable::from_parts(shifts, q, Rule::WorstCharacter))
}
