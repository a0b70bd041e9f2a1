//! Phase II: counting positional matches between a text and a pattern.
//!
//! Comparison is left-anchored: pattern position `i` is compared with text
//! position `i` for `i` in `1..=m`. Text positions past the pattern (the
//! overhang) count as text mismatches. Three engines produce identical
//! [`ComparisonCounts`]:
//!
//! * [`count_by_postings`] intersects posting lists with a sorted merge,
//! * [`count_by_bitplanes`] ANDs bit-planes and counts set bits,
//! * [`count_naive`] walks both sequences position by position.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, EncodedSequence};
use crate::error::{Error, Result};
use crate::index::PositionIndex;

/// Match count `r` for a pattern of length `m` against a text of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCounts")]
pub struct ComparisonCounts {
    r: usize,
    m: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawCounts {
    r: usize,
    m: usize,
    n: usize,
}

impl TryFrom<RawCounts> for ComparisonCounts {
    type Error = Error;

    fn try_from(raw: RawCounts) -> Result<Self> {
        Self::new(raw.r, raw.m, raw.n)
    }
}

impl ComparisonCounts {
    pub fn new(r: usize, m: usize, n: usize) -> Result<Self> {
        if m == 0 || r > m || m > n {
            return Err(Error::InvalidCounts { r, m, n });
        }
        Ok(Self { r, m, n })
    }

    /// Matches.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Pattern length.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Text length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Pattern mismatches, `m - r`.
    pub fn pattern_mismatches(&self) -> usize {
        self.m - self.r
    }

    /// Text mismatches, `n - r`. Includes the `n - m` overhang positions.
    pub fn text_mismatches(&self) -> usize {
        self.n - self.r
    }
}

/// Counting strategy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Postings,
    #[default]
    Bitplanes,
    Naive,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Postings, Engine::Bitplanes, Engine::Naive];

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Postings => "postings",
            Engine::Bitplanes => "bitplanes",
            Engine::Naive => "naive",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "postings" => Ok(Engine::Postings),
            "bitplanes" => Ok(Engine::Bitplanes),
            "naive" => Ok(Engine::Naive),
            other => Err(format!(
                "unknown engine {other:?}, expected postings, bitplanes or naive"
            )),
        }
    }
}

fn check_pair(text: &Arc<Alphabet>, pattern: &Arc<Alphabet>, n: usize, m: usize) -> Result<()> {
    if !Arc::ptr_eq(text, pattern) && text != pattern {
        return Err(Error::AlphabetMismatch);
    }
    if m > n {
        return Err(Error::PatternLongerThanText { m, n });
    }
    if m == 0 {
        return Err(Error::EmptySequence);
    }
    Ok(())
}

/// Size of the intersection of two ascending lists, ignoring values above `limit`.
fn merge_count(a: &[usize], b: &[usize], limit: usize) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x > limit || y > limit {
            break;
        }
        match x.cmp(&y) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Counts matches by intersecting each symbol's posting lists.
pub fn count_by_postings(
    text: &PositionIndex,
    pattern: &PositionIndex,
) -> Result<ComparisonCounts> {
    let (n, m) = (text.len(), pattern.len());
    check_pair(text.alphabet(), pattern.alphabet(), n, m)?;
    let r = text
        .postings()
        .iter()
        .zip(pattern.postings())
        .map(|(t, p)| merge_count(t, p, m))
        .sum();
    ComparisonCounts::new(r, m, n)
}

/// Counts matches as the popcount of each symbol's text and pattern planes
/// ANDed over the first `m` bits.
pub fn count_by_bitplanes(
    text: &PositionIndex,
    pattern: &PositionIndex,
) -> Result<ComparisonCounts> {
    let (n, m) = (text.len(), pattern.len());
    check_pair(text.alphabet(), pattern.alphabet(), n, m)?;
    let r = text
        .planes()
        .iter()
        .zip(pattern.planes())
        .map(|(t, p)| t.and_count_prefix(p, m))
        .sum();
    ComparisonCounts::new(r, m, n)
}

/// Counts matches with a direct per-position scan.
pub fn count_naive(text: &EncodedSequence, pattern: &EncodedSequence) -> Result<ComparisonCounts> {
    let (n, m) = (text.len(), pattern.len());
    check_pair(text.alphabet(), pattern.alphabet(), n, m)?;
    let r = text
        .ids()
        .iter()
        .zip(pattern.ids())
        .filter(|(a, b)| a == b)
        .count();
    ComparisonCounts::new(r, m, n)
}

/// A sequence together with its index, ready to be compared with any engine.
#[derive(Debug, Clone)]
pub struct Prepared {
    sequence: EncodedSequence,
    index: PositionIndex,
}

impl Prepared {
    pub fn new(sequence: EncodedSequence) -> Self {
        let index = PositionIndex::build(&sequence);
        Self { sequence, index }
    }

    pub fn sequence(&self) -> &EncodedSequence {
        &self.sequence
    }

    pub fn index(&self) -> &PositionIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Counts with the chosen engine.
pub fn count(engine: Engine, text: &Prepared, pattern: &Prepared) -> Result<ComparisonCounts> {
    match engine {
        Engine::Postings => count_by_postings(&text.index, &pattern.index),
        Engine::Bitplanes => count_by_bitplanes(&text.index, &pattern.index),
        Engine::Naive => count_naive(&text.sequence, &pattern.sequence),
    }
}

/// Runs all three engines and fails with [`Error::EngineDisagreement`]
/// unless they agree.
pub fn count_verified(text: &Prepared, pattern: &Prepared) -> Result<ComparisonCounts> {
    let results = Engine::ALL.map(|e| count(e, text, pattern).map(|c| (e, c)));
    let [first, rest @ ..] = results;
    let (_, expected) = first?;
    for result in rest {
        let (engine, counts) = result?;
        if counts != expected {
            return Err(Error::EngineDisagreement(format!(
                "{} gave r={}, {} gave r={}",
                Engine::Postings,
                expected.r,
                engine,
                counts.r
            )));
        }
    }
    Ok(expected)
}
