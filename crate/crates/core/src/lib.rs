//! Bad-character shift heuristics for exact string matching.
//!
//! The crate implements the classical single-character shift rules
//! (Horspool, Quick-Search and Smith) together with the *worst-character*
//! rule, which picks the probe offset `q` relative to the current window
//! that maximizes the expected shift under a known character distribution.
//!
//! All matchers share one instrumented loop: verify the window right to
//! left, report a match, then advance by a table lookup on a single probed
//! text character. The counters collected by that loop (shifts, total
//! advancement, character comparisons) drive the benchmark harness in
//! [`bench`].
//!
//! ```
//! use worstchar::{Alphabet, FrequencyTable, Pattern, Text, matchers};
//!
//! let sigma = Alphabet::new(2).unwrap();
//! let text = Text::new(vec![0, 1, 0, 1, 0, 1], sigma).unwrap();
//! let pattern = Pattern::new(vec![0, 1, 0, 1], sigma).unwrap();
//! let f = FrequencyTable::uniform(sigma);
//!
//! let out = matchers::wc_search(&pattern, &text, &f).unwrap();
//! assert_eq!(out.occurrences, [0, 2]);
//! ```

pub mod alphabet;
pub mod badchar;
pub mod bench;
pub mod corpus;
mod error;
pub mod matchers;
pub mod worst;

pub use alphabet::{Alphabet, ByteMapping, FrequencyTable, MappingMode, Pattern, Text};
pub use badchar::{BcTable, LastPosition, Rule, ShiftTable};
pub use error::{Error, Result};
pub use matchers::{Algorithm, SearchOutcome};
pub use worst::AdvancementProfile;
