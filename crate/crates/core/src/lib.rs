//! Alignment-free sequence comparison by logical match.
//!
//! Comparing a text of length `n` with a pattern of length `m <= n` happens
//! in two phases:
//!
//! 1. every sequence is encoded over an [`Alphabet`] of one-hot codes and
//!    indexed by the positions at which each symbol occurs ([`PositionIndex`]);
//! 2. the indexes are intersected symbol by symbol to count the `r`
//!    positions where text and pattern agree ([`ComparisonCounts`]).
//!
//! The counts then yield fuzzy memberships `r / m` and `(m - r) / m` and a
//! similarity score ([`ScoreReport`]).
//!
//! ```
//! use logical_match::{compare_strs, Engine};
//!
//! let report = compare_strs("ATCAAGATCA", "AAGAGGCTCA", Engine::Bitplanes).unwrap();
//! assert_eq!(report.counts().r(), 6);
//! assert_eq!(report.score_f64(), 2.0);
//! ```

pub mod alphabet;
pub mod bench;
pub mod compare;
mod error;
pub mod fixtures;
pub mod index;
pub mod io;
pub mod score;

use std::sync::Arc;

pub use alphabet::{
    encode, Alphabet, Encoded, EncodedSequence, OneHotCode, SymbolId, ValidationPolicy,
};
pub use compare::{
    count, count_by_bitplanes, count_by_postings, count_naive, count_verified, ComparisonCounts,
    Engine, Prepared,
};
pub use error::{Error, Result};
pub use index::{BitPlane, PositionIndex};
pub use score::{membership, score, Membership, Rational, ScoreReport};

/// Indexes both sequences, counts with `engine` and scores the result.
pub fn score_sequences(
    text: &EncodedSequence,
    pattern: &EncodedSequence,
    engine: Engine,
) -> Result<ScoreReport> {
    let counts = match engine {
        Engine::Naive => count_naive(text, pattern)?,
        Engine::Postings => {
            count_by_postings(&PositionIndex::build(text), &PositionIndex::build(pattern))?
        }
        Engine::Bitplanes => {
            count_by_bitplanes(&PositionIndex::build(text), &PositionIndex::build(pattern))?
        }
    };
    Ok(score(&counts))
}

/// [`score_sequences`] on raw DNA text, validated strictly.
pub fn compare_strs(text: &str, pattern: &str, engine: Engine) -> Result<ScoreReport> {
    let dna = Arc::new(Alphabet::dna());
    let text = encode(text, &dna, ValidationPolicy::Strict)?.sequence;
    let pattern = encode(pattern, &dna, ValidationPolicy::Strict)?.sequence;
    score_sequences(&text, &pattern, engine)
}
