use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// One FASTA record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    /// First whitespace-delimited token of the header.
    pub locus: String,
    /// Rest of the header, trimmed.
    pub description: String,
    /// Sequence lines concatenated with whitespace removed.
    pub residues: String,
}

impl SequenceRecord {
    pub fn new(
        locus: impl Into<String>,
        description: impl Into<String>,
        residues: &str,
    ) -> Result<Self> {
        let locus = locus.into();
        let residues: String = residues.chars().filter(|c| !c.is_whitespace()).collect();
        if locus.is_empty() || locus.contains(char::is_whitespace) {
            return Err(Error::MalformedFasta {
                line: 0,
                reason: format!("invalid locus {locus:?}"),
            });
        }
        if residues.is_empty() {
            return Err(Error::MalformedFasta {
                line: 0,
                reason: format!("record {locus} has no residues"),
            });
        }
        Ok(Self {
            locus,
            description: description.into().trim().to_string(),
            residues,
        })
    }

    /// Residue count.
    pub fn len(&self) -> usize {
        self.residues.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

struct Pending {
    line: usize,
    locus: String,
    description: String,
    residues: String,
}

impl Pending {
    fn finish(self) -> Result<SequenceRecord> {
        if self.residues.is_empty() {
            return Err(Error::MalformedFasta {
                line: self.line,
                reason: format!("record {} has no residues", self.locus),
            });
        }
        Ok(SequenceRecord {
            locus: self.locus,
            description: self.description,
            residues: self.residues,
        })
    }
}

/// Reads every record from `reader`, in file order.
pub fn parse_fasta<R: BufRead>(reader: R) -> Result<Vec<SequenceRecord>> {
    let mut records = Vec::new();
    let mut current: Option<Pending> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if let Some(header) = line.strip_prefix('>') {
            if let Some(done) = current.take() {
                records.push(done.finish()?);
            }
            let header = header.trim();
            let (locus, description) = header
                .split_once(char::is_whitespace)
                .unwrap_or((header, ""));
            if locus.is_empty() {
                return Err(Error::MalformedFasta {
                    line: lineno,
                    reason: "header has no locus".into(),
                });
            }
            current = Some(Pending {
                line: lineno,
                locus: locus.to_string(),
                description: description.trim().to_string(),
                residues: String::new(),
            });
        } else if let Some(rec) = current.as_mut() {
            rec.residues
                .extend(line.chars().filter(|c| !c.is_whitespace()));
        } else if !line.trim().is_empty() {
            return Err(Error::MalformedFasta {
                line: lineno,
                reason: "sequence data before the first header".into(),
            });
        }
    }
    if let Some(done) = current {
        records.push(done.finish()?);
    }
    Ok(records)
}

pub fn parse_fasta_str(text: &str) -> Result<Vec<SequenceRecord>> {
    parse_fasta(text.as_bytes())
}

/// Writes records with sequence lines wrapped at `width` characters.
pub fn write_fasta<W: Write>(mut out: W, records: &[SequenceRecord], width: usize) -> Result<()> {
    let width = width.max(1);
    for rec in records {
        if rec.description.is_empty() {
            writeln!(out, ">{}", rec.locus)?;
        } else {
            writeln!(out, ">{} {}", rec.locus, rec.description)?;
        }
        let chars: Vec<char> = rec.residues.chars().collect();
        for chunk in chars.chunks(width) {
            let line: String = chunk.iter().collect();
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}
