//! Instrumented search loops.
//!
//! All matchers run the same loop: starting at shift `s = 0`, compare the
//! window `T[s..s+m]` with the pattern from right to left, record `s` on a
//! full match, then add the increment chosen by the rule. The heuristics
//! differ only in which text character they probe and which table they
//! read it from.
//!
//! When a rule would probe `T[n]` (Quick-Search and, for `q = m`, the
//! worst-character rule at the last admissible window), the loop stops
//! after verifying that window: any shift from there would leave the text.

use std::fmt;
use std::str::FromStr;

use crate::badchar::{compute_hbc, compute_qbc, ShiftTable};
use crate::worst::{find_worst_character, precompute_wc, AdvancementProfile};
use crate::{Error, FrequencyTable, Pattern, Result, Text};

/// Occurrences plus the counters collected while finding them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Valid shifts in increasing order.
    pub occurrences: Vec<usize>,
    /// Number of window advancements performed.
    pub shift_count: u64,
    /// Sum of all increments; equals the final shift.
    pub total_advancement: u64,
    /// Pattern/text character equality tests.
    pub char_comparisons: u64,
    /// Set when the worst-character rule settled on `q = 0`, where every
    /// increment is 1.
    pub degenerate_probe: bool,
}

impl SearchOutcome {
    pub fn mean_advancement(&self) -> Option<f64> {
        (self.shift_count > 0).then(|| self.total_advancement as f64 / self.shift_count as f64)
    }
}

/// Core loop shared by every matcher.
///
/// `increment(s)` returns the shift to apply after the window at `s`, or
/// `None` to stop. `on_shift(s, k)` observes each advancement.
#[inline(always)]
fn scan<I, O>(p: &[u8], t: &[u8], mut increment: I, mut on_shift: O) -> SearchOutcome
where
    I: FnMut(usize) -> Option<usize>,
    O: FnMut(usize, usize),
{
    let m = p.len();
    let n = t.len();
    let mut out = SearchOutcome::default();
    let mut s = 0;
    while s + m <= n {
        let mut j = m;
        while j > 0 {
            out.char_comparisons += 1;
            if p[j - 1] != t[s + j - 1] {
                break;
            }
            j -= 1;
        }
        if j == 0 {
            out.occurrences.push(s);
        }
        match increment(s) {
            Some(k) => {
                on_shift(s, k);
                out.shift_count += 1;
                out.total_advancement += k as u64;
                s += k;
            }
            None => break,
        }
    }
    out
}

/// Common interface of the matchers in this module.
pub trait Searcher {
    fn pattern(&self) -> &Pattern;

    /// Increment after the window at shift `s`, or `None` to stop.
    fn next_shift(&self, text: &[u8], s: usize) -> Option<usize>;

    fn degenerate(&self) -> bool {
        false
    }

    fn check(&self, text: &Text) -> Result<()> {
        self.pattern().alphabet().ensure_same(text.alphabet())
    }

    fn search(&self, text: &Text) -> Result<SearchOutcome> {
        self.check(text)?;
        let t = text.as_slice();
        let mut out = scan(self.pattern().as_slice(), t, |s| self.next_shift(t, s), |_, _| {});
        out.degenerate_probe = self.degenerate();
        Ok(out)
    }

    /// Every `(shift, increment)` pair the search performs, in order.
    fn trace(&self, text: &Text) -> Result<Vec<(usize, usize)>> {
        self.check(text)?;
        let t = text.as_slice();
        let mut steps = Vec::new();
        scan(self.pattern().as_slice(), t, |s| self.next_shift(t, s), |s, k| steps.push((s, k)));
        Ok(steps)
    }
}

/// Tries every shift. Works across alphabets since it reads no tables.
#[derive(Clone, Debug)]
pub struct Naive {
    pattern: Pattern,
}

impl Naive {
    pub fn new(pattern: &Pattern) -> Self {
        Naive { pattern: pattern.clone() }
    }
}

impl Searcher for Naive {
    fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    #[inline]
    fn next_shift(&self, _: &[u8], _: usize) -> Option<usize> {
        Some(1)
    }

    fn check(&self, _: &Text) -> Result<()> {
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Horspool {
    pattern: Pattern,
    hbc: ShiftTable,
}

impl Horspool {
    pub fn new(pattern: &Pattern) -> Self {
        Horspool { pattern: pattern.clone(), hbc: compute_hbc(pattern) }
    }

    pub fn table(&self) -> &ShiftTable {
        &self.hbc
    }
}

impl Searcher for Horspool {
    fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    #[inline]
    fn next_shift(&self, t: &[u8], s: usize) -> Option<usize> {
        Some(self.hbc.shift(t[s + self.pattern.len() - 1]))
    }
}

#[derive(Clone, Debug)]
pub struct QuickSearch {
    pattern: Pattern,
    qbc: ShiftTable,
}

impl QuickSearch {
    pub fn new(pattern: &Pattern) -> Self {
        QuickSearch { pattern: pattern.clone(), qbc: compute_qbc(pattern) }
    }

    pub fn table(&self) -> &ShiftTable {
        &self.qbc
    }
}

impl Searcher for QuickSearch {
    fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    #[inline]
    fn next_shift(&self, t: &[u8], s: usize) -> Option<usize> {
        t.get(s + self.pattern.len()).map(|&c| self.qbc.shift(c))
    }
}

/// Larger of the Horspool and Quick-Search increments, each read from its
/// own probe. At the last window only the Horspool probe exists.
#[derive(Clone, Debug)]
pub struct Smith {
    pattern: Pattern,
    hbc: ShiftTable,
    qbc: ShiftTable,
}

impl Smith {
    pub fn new(pattern: &Pattern) -> Self {
        Smith { pattern: pattern.clone(), hbc: compute_hbc(pattern), qbc: compute_qbc(pattern) }
    }
}

impl Searcher for Smith {
    fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    #[inline]
    fn next_shift(&self, t: &[u8], s: usize) -> Option<usize> {
        let m = self.pattern.len();
        let h = self.hbc.shift(t[s + m - 1]);
        Some(match t.get(s + m) {
            Some(&c) => h.max(self.qbc.shift(c)),
            None => h,
        })
    }
}

/// Bad-character rule probing the worst-character offset `q`.
#[derive(Clone, Debug)]
pub struct WorstCharacter {
    pattern: Pattern,
    wc: ShiftTable,
    profile: Option<AdvancementProfile>,
}

impl WorstCharacter {
    /// Chooses `q` from the advancement profile under `f`.
    pub fn new(pattern: &Pattern, f: &FrequencyTable) -> Result<Self> {
        let profile = find_worst_character(pattern, f)?;
        let wc = precompute_wc(pattern, profile.q)?;
        Ok(WorstCharacter { pattern: pattern.clone(), wc, profile: Some(profile) })
    }

    /// Uses a caller-chosen probe offset `q` in `0..=m`.
    pub fn with_offset(pattern: &Pattern, q: usize) -> Result<Self> {
        let wc = precompute_wc(pattern, q)?;
        Ok(WorstCharacter { pattern: pattern.clone(), wc, profile: None })
    }

    pub fn q(&self) -> usize {
        self.wc.probe_offset()
    }

    pub fn table(&self) -> &ShiftTable {
        &self.wc
    }

    /// The profile `q` was chosen from; `None` for a forced offset.
    pub fn profile(&self) -> Option<&AdvancementProfile> {
        self.profile.as_ref()
    }
}

impl Searcher for WorstCharacter {
    fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    #[inline]
    fn next_shift(&self, t: &[u8], s: usize) -> Option<usize> {
        t.get(s + self.wc.probe_offset()).map(|&c| self.wc.shift(c))
    }

    fn degenerate(&self) -> bool {
        self.wc.probe_offset() == 0
    }
}

pub fn naive_search(pattern: &Pattern, text: &Text) -> SearchOutcome {
    let t = text.as_slice();
    scan(pattern.as_slice(), t, |_| Some(1), |_, _| {})
}

pub fn hor_search(pattern: &Pattern, text: &Text) -> Result<SearchOutcome> {
    Horspool::new(pattern).search(text)
}

pub fn qs_search(pattern: &Pattern, text: &Text) -> Result<SearchOutcome> {
    QuickSearch::new(pattern).search(text)
}

pub fn sm_search(pattern: &Pattern, text: &Text) -> Result<SearchOutcome> {
    Smith::new(pattern).search(text)
}

/// Preprocesses with `f` (profile, then table) and searches.
pub fn wc_search(pattern: &Pattern, text: &Text, f: &FrequencyTable) -> Result<SearchOutcome> {
    WorstCharacter::new(pattern, f)?.search(text)
}

/// Algorithm selector used by the harness and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    Hor,
    Qs,
    Sm,
    Wc,
}

impl Algorithm {
    /// The four shift heuristics, in table order.
    pub const HEURISTICS: [Algorithm; 4] = [Algorithm::Hor, Algorithm::Qs, Algorithm::Sm, Algorithm::Wc];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Hor => "hor",
            Algorithm::Qs => "qs",
            Algorithm::Sm => "sm",
            Algorithm::Wc => "wc",
        }
    }

    /// Upper-case label used in tables.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Naive => "NAIVE",
            Algorithm::Hor => "HOR",
            Algorithm::Qs => "QS",
            Algorithm::Sm => "SM",
            Algorithm::Wc => "WC",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "naive" => Ok(Algorithm::Naive),
            "hor" | "horspool" => Ok(Algorithm::Hor),
            "qs" | "quick" | "quicksearch" => Ok(Algorithm::Qs),
            "sm" | "smith" => Ok(Algorithm::Sm),
            "wc" | "worst" => Ok(Algorithm::Wc),
            other => Err(Error::InvalidSpec(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// A preprocessed matcher of any kind, dispatched statically per search.
#[derive(Clone, Debug)]
pub enum Matcher {
    Naive(Naive),
    Horspool(Horspool),
    QuickSearch(QuickSearch),
    Smith(Smith),
    WorstCharacter(WorstCharacter),
}

impl Matcher {
    /// `f` is only consulted by [`Algorithm::Wc`].
    pub fn new(algorithm: Algorithm, pattern: &Pattern, f: &FrequencyTable) -> Result<Self> {
        Ok(match algorithm {
            Algorithm::Naive => Matcher::Naive(Naive::new(pattern)),
            Algorithm::Hor => Matcher::Horspool(Horspool::new(pattern)),
            Algorithm::Qs => Matcher::QuickSearch(QuickSearch::new(pattern)),
            Algorithm::Sm => Matcher::Smith(Smith::new(pattern)),
            Algorithm::Wc => Matcher::WorstCharacter(WorstCharacter::new(pattern, f)?),
        })
    }

    pub fn search(&self, text: &Text) -> Result<SearchOutcome> {
        match self {
            Matcher::Naive(m) => m.search(text),
            Matcher::Horspool(m) => m.search(text),
            Matcher::QuickSearch(m) => m.search(text),
            Matcher::Smith(m) => m.search(text),
            Matcher::WorstCharacter(m) => m.search(text),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Alphabet;

    const A: u8 = 0;
    const B: u8 = 1;
    const C: u8 = 2;

    fn sigma(s: usize) -> Alphabet {
        Alphabet::new(s).unwrap()
    }

    fn text(data: &[u8], s: usize) -> Text {
        Text::new(data.to_vec(), sigma(s)).unwrap()
    }

    fn pat(data: &[u8], s: usize) -> Pattern {
        Pattern::new(data.to_vec(), sigma(s)).unwrap()
    }

    fn all(p: &Pattern, t: &Text) -> Vec<SearchOutcome> {
        let f = FrequencyTable::uniform(p.alphabet());
        vec![
            naive_search(p, t),
            hor_search(p, t).unwrap(),
            qs_search(p, t).unwrap(),
            sm_search(p, t).unwrap(),
            wc_search(p, t, &f).unwrap(),
        ]
    }

    #[test]
    fn overlapping_occurrences() {
        let t = text(&[A, B, A, B, A, B], 2);
        let p = pat(&[A, B, A, B], 2);
        for out in all(&p, &t) {
            assert_eq!(out.occurrences, [0, 2]);
            assert!(out.total_advancement >= out.shift_count);
        }
    }

    #[test]
    fn whole_text_and_short_text() {
        let t = text(&[A, C, B], 3);
        for out in all(&pat(&[A, C, B], 3), &t) {
            assert_eq!(out.occurrences, [0]);
        }
        let t = text(&[A, B], 3);
        for out in all(&pat(&[A, B, C], 3), &t) {
            assert!(out.occurrences.is_empty());
            assert_eq!(out.shift_count, 0);
        }
        let empty = text(&[], 3);
        assert!(naive_search(&pat(&[A], 3), &empty).occurrences.is_empty());
    }

    #[test]
    fn naive_counts_every_shift() {
        let t = text(&[A; 10], 2);
        let out = naive_search(&pat(&[A, A, A], 2), &t);
        assert_eq!(out.occurrences, (0..8).collect::<Vec<_>>());
        assert_eq!(out.shift_count, 8);
        assert_eq!(out.total_advancement, 8);
        assert_eq!(out.char_comparisons, 24);
    }

    #[test]
    fn horspool_skips_whole_pattern_on_absent_character() {
        let t = text(&[C; 40], 3);
        let out = hor_search(&pat(&[A, B, A, B], 3), &t).unwrap();
        assert_eq!(out.shift_count, 10);
        assert_eq!(out.total_advancement, 40);
        assert_eq!(out.char_comparisons, 10);
    }

    #[test]
    fn quick_search_stops_at_last_window() {
        let t = text(&[C, C, C, C], 3);
        let qs = QuickSearch::new(&pat(&[A, B], 3));
        assert_eq!(qs.trace(&t).unwrap(), [(0, 3)]);
        let out = qs.search(&t).unwrap();
        assert_eq!((out.shift_count, out.total_advancement), (1, 3));

        // Window at s = n - m: no probe, loop ends without a shift.
        let t = text(&[C, C, A, B], 3);
        let qs = QuickSearch::new(&pat(&[C, A, B], 3));
        assert_eq!(qs.trace(&t).unwrap(), [(0, 1)]);
        assert_eq!(qs.search(&t).unwrap().occurrences, [1]);
    }

    #[test]
    fn smith_falls_back_to_horspool_at_last_window() {
        let t = text(&[C, C, A, B], 3);
        let sm = Smith::new(&pat(&[C, A, B], 3));
        // s = 0: max(hbc[A] = 1, qbc[B] = 1); s = 1: hbc[B] = 3.
        assert_eq!(sm.trace(&t).unwrap(), [(0, 1), (1, 3)]);
    }

    #[test]
    fn smith_dominates_horspool_per_window() {
        let t = text(&[A, B, B, A, C, A, B, A, A, B, C, B, A, B, A], 3);
        let p = pat(&[A, B, A], 3);
        let hor = Horspool::new(&p);
        let sm = Smith::new(&p);
        for (s, k) in sm.trace(&t).unwrap() {
            assert!(k >= hor.next_shift(t.as_slice(), s).unwrap());
        }
    }

    #[test]
    fn forced_offsets_reproduce_baselines() {
        let t = text(&[A, B, B, A, C, A, B, A, A, B, C, B, A, B, A, A], 3);
        let p = pat(&[B, A, B, A], 3);
        let wc_h = WorstCharacter::with_offset(&p, 3).unwrap();
        let wc_q = WorstCharacter::with_offset(&p, 4).unwrap();
        assert_eq!(wc_h.trace(&t).unwrap(), Horspool::new(&p).trace(&t).unwrap());
        assert_eq!(wc_q.trace(&t).unwrap(), QuickSearch::new(&p).trace(&t).unwrap());
        assert_eq!(wc_h.search(&t).unwrap(), hor_search(&p, &t).unwrap());
        assert!(WorstCharacter::with_offset(&p, 5).is_err());
    }

    #[test]
    fn degenerate_offset_shifts_by_one() {
        let t = text(&[0; 12], 1);
        let p = pat(&[0, 0, 0], 1);
        let out = wc_search(&p, &t, &FrequencyTable::uniform(sigma(1))).unwrap();
        assert!(out.degenerate_probe);
        assert_eq!(out.occurrences.len(), 10);
        assert_eq!(out.mean_advancement(), Some(1.0));
        assert!(!hor_search(&p, &t).unwrap().degenerate_probe);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let t = text(&[A, B], 2);
        let p = pat(&[A], 3);
        assert!(matches!(hor_search(&p, &t), Err(Error::AlphabetMismatch { .. })));
        assert!(wc_search(&p, &t, &FrequencyTable::uniform(sigma(2))).is_err());
        assert_eq!(naive_search(&p, &t).occurrences, [0]);
    }

    #[test]
    fn matcher_dispatch() {
        let t = text(&[A, B, A, B, A, B], 2);
        let p = pat(&[B, A], 2);
        let f = FrequencyTable::uniform(sigma(2));
        for algo in [Algorithm::Naive].into_iter().chain(Algorithm::HEURISTICS) {
            let out = Matcher::new(algo, &p, &f).unwrap().search(&t).unwrap();
            assert_eq!(out.occurrences, [1, 3], "{algo}");
        }
    }

    #[test]
    fn algorithm_names_parse() {
        for algo in [Algorithm::Naive].into_iter().chain(Algorithm::HEURISTICS) {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert_eq!("Smith".parse::<Algorithm>().unwrap(), Algorithm::Sm);
        assert!("kmp".parse::<Algorithm>().is_err());
    }
}
