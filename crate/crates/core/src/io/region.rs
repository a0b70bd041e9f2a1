use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::io::fasta::SequenceRecord;

/// A 1-based inclusive coordinate range, e.g. `541-560` (20 residues).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    start: usize,
    end: usize,
}

impl Region {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || start > end {
            return Err(Error::InvalidRegion(format!("{start}-{end}")));
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidRegion(s.to_string());
        let (a, b) = s.trim().split_once('-').ok_or_else(invalid)?;
        let start = a.trim().parse().map_err(|_| invalid())?;
        let end = b.trim().parse().map_err(|_| invalid())?;
        Region::new(start, end).map_err(|_| invalid())
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// Residues `region.start..=region.end` of `record`.
pub fn extract_region<'a>(record: &'a SequenceRecord, region: &Region) -> Result<&'a str> {
    let residues = record.residues.as_str();
    let out_of_bounds = || Error::RegionOutOfBounds {
        start: region.start,
        end: region.end,
        len: record.len(),
    };
    if residues.is_ascii() {
        return residues
            .get(region.start - 1..region.end)
            .ok_or_else(out_of_bounds);
    }
    let mut bounds = residues
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(residues.len()));
    let from = bounds.nth(region.start - 1).ok_or_else(out_of_bounds)?;
    let to = bounds
        .nth(region.end - region.start)
        .ok_or_else(out_of_bounds)?;
    Ok(&residues[from..to])
}
