//! Alphabets, one-hot codes, and validated sequences.
//!
//! An [`Alphabet`] is an ordered set of distinct symbols. The symbol at
//! index `i` owns the one-hot code whose only set bit is column `i`, counted
//! from the left, so DNA in `A, T, G, C` order gets `1000, 0100, 0010, 0001`.
//! Raw text is turned into an [`EncodedSequence`] by [`encode`], which
//! uppercases ASCII input and either rejects or drops foreign characters
//! depending on the [`ValidationPolicy`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol within its alphabet.
pub type SymbolId = u8;

const NO_SYMBOL: u8 = u8::MAX;

/// Largest alphabet representable with [`SymbolId`]; one id value is reserved.
pub const MAX_SYMBOLS: usize = u8::MAX as usize;

#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<char>,
    ascii: [u8; 128],
}

impl Alphabet {
    /// Builds an alphabet from symbols in code order.
    ///
    /// ASCII letters are uppercased first, so `['a', 'A']` is rejected as a
    /// duplicate.
    pub fn new<I>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = char>,
    {
        let symbols: Vec<char> = symbols
            .into_iter()
            .map(|c| c.to_ascii_uppercase())
            .collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        if symbols.len() > MAX_SYMBOLS {
            return Err(Error::AlphabetTooLarge {
                got: symbols.len(),
                max: MAX_SYMBOLS,
            });
        }
        let mut ascii = [NO_SYMBOL; 128];
        for (i, &c) in symbols.iter().enumerate() {
            if symbols[..i].contains(&c) {
                return Err(Error::DuplicateSymbol(c));
            }
            if c.is_ascii() {
                ascii[c as usize] = i as u8;
            }
        }
        Ok(Self { symbols, ascii })
    }

    /// `A, T, G, C`, in that code order.
    pub fn dna() -> Self {
        Self::new("ATGC".chars()).expect("DNA alphabet is valid")
    }

    /// `0, 1`.
    pub fn binary() -> Self {
        Self::new("01".chars()).expect("binary alphabet is valid")
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Number of symbols, which is also the width of every code.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn code_width(&self) -> usize {
        self.symbols.len()
    }

    /// Id of `symbol` after case normalization.
    pub fn id_of(&self, symbol: char) -> Option<SymbolId> {
        let c = symbol.to_ascii_uppercase();
        if c.is_ascii() {
            let id = self.ascii[c as usize];
            (id != NO_SYMBOL).then_some(id)
        } else {
            self.symbols
                .iter()
                .position(|&s| s == c)
                .map(|i| i as SymbolId)
        }
    }

    pub fn symbol(&self, id: SymbolId) -> Result<char> {
        self.symbols
            .get(id as usize)
            .copied()
            .ok_or(Error::UnknownSymbol(id as usize))
    }

    pub fn code(&self, id: SymbolId) -> Result<OneHotCode> {
        if (id as usize) < self.len() {
            Ok(OneHotCode {
                column: id as usize,
                width: self.len(),
            })
        } else {
            Err(Error::UnknownSymbol(id as usize))
        }
    }

    pub fn codes(&self) -> impl Iterator<Item = OneHotCode> + '_ {
        (0..self.len()).map(|column| OneHotCode {
            column,
            width: self.len(),
        })
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Alphabet").field(&self.symbols).finish()
    }
}

/// A one-hot binary code of `width` bits with a single set bit at `column`.
///
/// Column 0 is the leftmost (most significant) bit when rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OneHotCode {
    column: usize,
    width: usize,
}

impl OneHotCode {
    pub fn column(&self) -> usize {
        self.column
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_set(&self, column: usize) -> bool {
        column == self.column
    }

    /// Bits from the leftmost column to the rightmost.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |c| c == self.column)
    }
}

impl fmt::Display for OneHotCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.bits() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// What [`encode`] does with characters outside the alphabet.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationPolicy {
    /// Reject the input at the first foreign character.
    #[default]
    Strict,
    /// Drop foreign characters and count them.
    Skip,
}

/// A validated sequence of symbol ids over a shared alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct EncodedSequence {
    alphabet: Arc<Alphabet>,
    ids: Vec<SymbolId>,
}

impl EncodedSequence {
    pub fn from_ids(alphabet: Arc<Alphabet>, ids: Vec<SymbolId>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&bad) = ids.iter().find(|&&id| id as usize >= alphabet.len()) {
            return Err(Error::UnknownSymbol(bad as usize));
        }
        Ok(Self { alphabet, ids })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ids(&self) -> &[SymbolId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Symbol id at 1-based `position`.
    pub fn at(&self, position: usize) -> Option<SymbolId> {
        position
            .checked_sub(1)
            .and_then(|i| self.ids.get(i).copied())
    }

    /// Renders the sequence back to (uppercase) text.
    pub fn decode(&self) -> String {
        self.ids
            .iter()
            .map(|&id| self.alphabet.symbols[id as usize])
            .collect()
    }
}

impl fmt::Debug for EncodedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EncodedSequence({:?})", self.decode())
    }
}

impl fmt::Display for EncodedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decode())
    }
}

/// Result of [`encode`]: the sequence and how many characters were dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub sequence: EncodedSequence,
    pub dropped: usize,
}

/// Validates `raw` against `alphabet`.
///
/// Whitespace is ignored. Foreign characters are reported with their 1-based
/// position in `raw` (whitespace included) under [`ValidationPolicy::Strict`].
pub fn encode(raw: &str, alphabet: &Arc<Alphabet>, policy: ValidationPolicy) -> Result<Encoded> {
    let mut ids = Vec::with_capacity(raw.len());
    let mut dropped = 0;
    for (i, c) in raw.chars().enumerate() {
        if c.is_whitespace() {
            continue;
        }
        match alphabet.id_of(c) {
            Some(id) => ids.push(id),
            None => match policy {
                ValidationPolicy::Strict => {
                    return Err(Error::ForeignSymbol {
                        position: i + 1,
                        symbol: c,
                    })
                }
                ValidationPolicy::Skip => dropped += 1,
            },
        }
    }
    if ids.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(Encoded {
        sequence: EncodedSequence {
            alphabet: Arc::clone(alphabet),
            ids,
        },
        dropped,
    })
}
