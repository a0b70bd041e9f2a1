//! Fuzzy membership values and the similarity score.
//!
//! From the counts of a comparison the membership of the pattern in the
//! "match" class is `r / m` and in the "mismatch" class `(m - r) / m`; the two
//! always sum to one. The score weights the text's matches and mismatches by
//! those memberships:
//!
//! ```text
//! S = r * (r / m) - (n - r) * ((m - r) / m) = (r² - (n - r)(m - r)) / m
//! ```
//!
//! Everything is computed as exact rationals from integer counts and only
//! converted to `f64` at the edges, so `4/7` stays `4/7` rather than the
//! `0.572` one gets from multiplying memberships rounded to three places.

use num_rational::Ratio;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::compare::ComparisonCounts;

/// Exact rational used for all derived quantities.
pub type Rational = Ratio<i128>;

pub fn to_f64(x: &Rational) -> f64 {
    // numerators and denominators stay far below 2^53 for realistic lengths
    *x.numer() as f64 / *x.denom() as f64
}

/// Membership of the pattern in the match and mismatch classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub matched: Rational,
    pub mismatched: Rational,
}

pub fn membership(counts: &ComparisonCounts) -> Membership {
    let m = counts.m() as i128;
    Membership {
        matched: Ratio::new(counts.r() as i128, m),
        mismatched: Ratio::new(counts.pattern_mismatches() as i128, m),
    }
}

/// Score, memberships and match percentage of one comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreReport {
    counts: ComparisonCounts,
    membership: Membership,
    score: Rational,
    match_percent: Rational,
}

pub fn score(counts: &ComparisonCounts) -> ScoreReport {
    let (r, m, n) = (counts.r() as i128, counts.m() as i128, counts.n() as i128);
    ScoreReport {
        counts: *counts,
        membership: membership(counts),
        score: Ratio::new(r * r - (n - r) * (m - r), m),
        match_percent: Ratio::new(100 * r, n),
    }
}

impl ScoreReport {
    pub fn counts(&self) -> &ComparisonCounts {
        &self.counts
    }

    pub fn membership(&self) -> &Membership {
        &self.membership
    }

    pub fn score(&self) -> Rational {
        self.score
    }

    /// `100 r / n`: the share of text positions that matched.
    pub fn match_percent(&self) -> Rational {
        self.match_percent
    }

    pub fn score_f64(&self) -> f64 {
        to_f64(&self.score)
    }

    pub fn mu_match_f64(&self) -> f64 {
        to_f64(&self.membership.matched)
    }

    pub fn mu_mismatch_f64(&self) -> f64 {
        to_f64(&self.membership.mismatched)
    }

    pub fn match_percent_f64(&self) -> f64 {
        to_f64(&self.match_percent)
    }

    /// The report with numeric fields fixed to `precision` decimals.
    pub fn rounded(&self, precision: usize) -> Rounded<'_> {
        Rounded {
            report: self,
            precision,
        }
    }
}

/// Serializes as `{score, mu_match, mu_mismatch, match_percent, r, m, n}`.
impl Serialize for ScoreReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ScoreReport", 7)?;
        s.serialize_field("score", &self.score_f64())?;
        s.serialize_field("mu_match", &self.mu_match_f64())?;
        s.serialize_field("mu_mismatch", &self.mu_mismatch_f64())?;
        s.serialize_field("match_percent", &self.match_percent_f64())?;
        s.serialize_field("r", &self.counts.r())?;
        s.serialize_field("m", &self.counts.m())?;
        s.serialize_field("n", &self.counts.n())?;
        s.end()
    }
}

/// Formats `x` with exactly `precision` decimals, `.` as separator.
pub fn fixed(x: f64, precision: usize) -> String {
    format!("{x:.precision$}")
}

/// A [`ScoreReport`] whose text, CSV and JSON forms carry the same rounded values.
#[derive(Debug, Clone, Copy)]
pub struct Rounded<'a> {
    report: &'a ScoreReport,
    precision: usize,
}

impl Rounded<'_> {
    pub const CSV_COLUMNS: [&'static str; 7] = [
        "score",
        "mu_match",
        "mu_mismatch",
        "match_percent",
        "r",
        "m",
        "n",
    ];

    /// Score, mu_match, mu_mismatch, match_percent as fixed-point strings.
    pub fn fixed_values(&self) -> [String; 4] {
        let r = self.report;
        [
            r.score_f64(),
            r.mu_match_f64(),
            r.mu_mismatch_f64(),
            r.match_percent_f64(),
        ]
        .map(|x| fixed(x, self.precision))
    }

    /// CSV fields in [`Self::CSV_COLUMNS`] order.
    pub fn csv_fields(&self) -> Vec<String> {
        let c = self.report.counts;
        let mut fields = self.fixed_values().to_vec();
        fields.extend([c.r(), c.m(), c.n()].map(|v| v.to_string()));
        fields
    }
}

impl Serialize for Rounded<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // parse the fixed strings so JSON and CSV can never drift apart
        let [score, mu_match, mu_mismatch, percent] = self
            .fixed_values()
            .map(|s| s.parse::<f64>().expect("fixed() yields a float literal"));
        let c = self.report.counts;
        let mut s = serializer.serialize_struct("ScoreReport", 7)?;
        s.serialize_field("score", &score)?;
        s.serialize_field("mu_match", &mu_match)?;
        s.serialize_field("mu_mismatch", &mu_mismatch)?;
        s.serialize_field("match_percent", &percent)?;
        s.serialize_field("r", &c.r())?;
        s.serialize_field("m", &c.m())?;
        s.serialize_field("n", &c.n())?;
        s.end()
    }
}
