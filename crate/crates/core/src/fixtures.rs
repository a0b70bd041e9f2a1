//! Bundled data for the published NCBI comparison.
//!
//! [`TABLE4_FASTA`] holds region 541-560 of seven loci exactly as printed,
//! including the rows that print fewer than 20 residues. [`CONTEXT_FASTA`]
//! embeds the ACU90045 region at 541-560 of a 600-residue record whose
//! flanks are synthetic, for exercising region extraction.

use crate::io::Region;

pub const TABLE4_FASTA: &str = include_str!("../data/table4.fasta");

pub const CONTEXT_FASTA: &str = include_str!("../data/acu90045_context.fasta");

/// Locus used as the text in every published row.
pub const TABLE4_TEXT_LOCUS: &str = "ACU90045";

pub fn table4_region() -> Region {
    Region::new(541, 560).expect("valid region")
}

/// Score and match percentage as printed for one pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub locus: &'static str,
    pub score: i64,
    pub match_percent: u32,
}

impl PublishedRow {
    /// Match count implied by the percentage over a 20-residue text.
    pub fn implied_matches(&self, n: usize) -> usize {
        n * self.match_percent as usize / 100
    }
}

pub const TABLE4_PUBLISHED: [PublishedRow; 7] = [
    PublishedRow {
        locus: "ACU90045",
        score: 20,
        match_percent: 100,
    },
    PublishedRow {
        locus: "PAU90054",
        score: -2,
        match_percent: 45,
    },
    PublishedRow {
        locus: "HSU90049",
        score: -6,
        match_percent: 35,
    },
    PublishedRow {
        locus: "LPU90051",
        score: -8,
        match_percent: 30,
    },
    PublishedRow {
        locus: "NAU90053",
        score: -10,
        match_percent: 25,
    },
    PublishedRow {
        locus: "DCU90047",
        score: -12,
        match_percent: 20,
    },
    PublishedRow {
        locus: "DPU90048",
        score: -16,
        match_percent: 10,
    },
];

pub fn published(locus: &str) -> Option<&'static PublishedRow> {
    TABLE4_PUBLISHED.iter().find(|row| row.locus == locus)
}
