//! Phase I: the positional index.
//!
//! For every symbol of the alphabet the index keeps the sorted list of
//! 1-based positions where that symbol occurs (its posting list), and the
//! same set as a bit-plane where bit `i - 1` is set iff the symbol occurs at
//! position `i`. Posting lists drive the merge-based counting engine and the
//! table dump; bit-planes drive the popcount engine.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::alphabet::{Alphabet, EncodedSequence, SymbolId};
use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// A fixed-length bit vector. Bits past `len` are always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPlane {
    words: Vec<u64>,
    len: usize,
}

impl BitPlane {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Sets 0-based bit `bit`.
    ///
    /// # Panics
    ///
    /// If `bit >= len`.
    pub fn set(&mut self, bit: usize) {
        assert!(
            bit < self.len,
            "bit {bit} out of range for plane of {}",
            self.len
        );
        self.words[bit / WORD_BITS] |= 1 << (bit % WORD_BITS);
    }

    pub fn get(&self, bit: usize) -> bool {
        bit < self.len && self.words[bit / WORD_BITS] >> (bit % WORD_BITS) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 0-based indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    /// Popcount of `self AND other` restricted to the first `prefix` bits.
    ///
    /// Both planes are masked to `prefix` before the AND, so neither padding
    /// nor bits past `prefix` can contribute.
    pub fn and_count_prefix(&self, other: &BitPlane, prefix: usize) -> usize {
        let prefix = prefix.min(self.len).min(other.len);
        let full = prefix / WORD_BITS;
        let mut count: usize = self.words[..full]
            .iter()
            .zip(&other.words[..full])
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum();
        let rem = prefix % WORD_BITS;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            count += (self.words[full] & other.words[full] & mask).count_ones() as usize;
        }
        count
    }
}

/// Per-symbol posting lists and bit-planes of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionIndex {
    alphabet: Arc<Alphabet>,
    len: usize,
    postings: Vec<Vec<usize>>,
    planes: Vec<BitPlane>,
}

impl PositionIndex {
    /// Builds the index in one left-to-right pass over `seq`.
    pub fn build(seq: &EncodedSequence) -> Self {
        let alphabet = Arc::clone(seq.alphabet());
        let len = seq.len();
        let mut postings = vec![Vec::new(); alphabet.len()];
        let mut planes = vec![BitPlane::zeros(len); alphabet.len()];
        for (i, &id) in seq.ids().iter().enumerate() {
            let id = id as usize;
            postings[id].push(i + 1);
            planes[id].words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        Self {
            alphabet,
            len,
            postings,
            planes,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Length of the indexed sequence.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sorted 1-based positions of `symbol`.
    pub fn positions_of(&self, symbol: SymbolId) -> Result<&[usize]> {
        self.postings
            .get(symbol as usize)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownSymbol(symbol as usize))
    }

    pub fn plane(&self, symbol: SymbolId) -> Result<&BitPlane> {
        self.planes
            .get(symbol as usize)
            .ok_or(Error::UnknownSymbol(symbol as usize))
    }

    pub fn postings(&self) -> &[Vec<usize>] {
        &self.postings
    }

    pub fn planes(&self) -> &[BitPlane] {
        &self.planes
    }

    /// Reconstructs the sequence from the posting lists.
    pub fn decode(&self) -> Result<EncodedSequence> {
        let mut ids = vec![SymbolId::MAX; self.len];
        for (id, list) in self.postings.iter().enumerate() {
            for &p in list {
                ids[p - 1] = id as SymbolId;
            }
        }
        EncodedSequence::from_ids(Arc::clone(&self.alphabet), ids)
    }

    pub fn table(&self) -> IndexTable<'_> {
        IndexTable { index: self }
    }

    /// Posting sets in `1000(1,4,5,7,10)` form, one symbol per entry.
    pub fn posting_sets(&self) -> PostingSets<'_> {
        PostingSets { index: self }
    }
}

/// Position-by-code 0/1 grid of an index.
///
/// Renders as tab-separated text: a header `pos` followed by one column per
/// symbol, then one row per position `1..=len`.
pub struct IndexTable<'a> {
    index: &'a PositionIndex,
}

impl IndexTable<'_> {
    /// Rows of the grid, position 1 first.
    pub fn rows(&self) -> Vec<Vec<bool>> {
        let idx = self.index;
        (0..idx.len)
            .map(|i| idx.planes.iter().map(|p| p.get(i)).collect())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        self.index.planes.iter().map(BitPlane::count_ones).collect()
    }

    /// Parses a grid rendered by this type back into an index.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<PositionIndex> {
        let bad = |msg: String| Error::MalformedTable(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
        let mut cols = header.split_whitespace();
        if cols.next() != Some("pos") {
            return Err(bad("header must start with `pos`".into()));
        }
        let header_symbols: Vec<char> = cols.filter_map(|c| c.chars().next()).collect();
        if header_symbols != alphabet.symbols() {
            return Err(bad(format!(
                "header symbols {header_symbols:?} do not match alphabet {:?}",
                alphabet.symbols()
            )));
        }
        let mut ids = Vec::new();
        for (row, line) in lines.enumerate() {
            let mut cells = line.split_whitespace();
            let pos: usize = cells
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| bad(format!("row {}: bad position", row + 1)))?;
            if pos != row + 1 {
                return Err(bad(format!("expected position {}, found {pos}", row + 1)));
            }
            let bits: Vec<&str> = cells.collect();
            if bits.len() != alphabet.len() || bits.iter().any(|b| *b != "0" && *b != "1") {
                return Err(bad(format!(
                    "row {pos}: expected {} 0/1 cells",
                    alphabet.len()
                )));
            }
            let ones: Vec<usize> = (0..bits.len()).filter(|&c| bits[c] == "1").collect();
            match ones.as_slice() {
                [col] => ids.push(*col as SymbolId),
                _ => return Err(bad(format!("row {pos}: expected exactly one set bit"))),
            }
        }
        let seq = EncodedSequence::from_ids(Arc::clone(alphabet), ids)?;
        Ok(PositionIndex::build(&seq))
    }
}

impl fmt::Display for IndexTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pos")?;
        for s in self.index.alphabet.symbols() {
            write!(f, "\t{s}")?;
        }
        f.write_char('\n')?;
        for (i, row) in self.rows().iter().enumerate() {
            write!(f, "{}", i + 1)?;
            for &bit in row {
                f.write_str(if bit { "\t1" } else { "\t0" })?;
            }
            f.write_char('\n')?;
        }
        Ok(())
    }
}

pub struct PostingSets<'a> {
    index: &'a PositionIndex,
}

impl fmt::Display for PostingSets<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.index;
        for ((code, symbol), list) in idx
            .alphabet
            .codes()
            .zip(idx.alphabet.symbols())
            .zip(&idx.postings)
        {
            write!(f, "{symbol} {code}(")?;
            for (k, p) in list.iter().enumerate() {
                if k > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")\n")?;
        }
        Ok(())
    }
}
