use std::fs::File;
use std::io::{self, BufReader};
use std::path::Path;
use std::sync::Arc;

use logical_match::io::{
    extract_region, parse_fasta, FetchClient, NetworkAccess, Region, SequenceRecord,
};
use logical_match::{encode, Alphabet, EncodedSequence, Error, ValidationPolicy};

use crate::http::HttpTransport;
use crate::{CliError, EncodingArgs, OnInvalid};

pub fn read_fasta_file(path: &Path) -> Result<Vec<SequenceRecord>, CliError> {
    let records = if path == Path::new("-") {
        parse_fasta(io::stdin().lock())?
    } else {
        let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        parse_fasta(BufReader::new(file))?
    };
    if records.is_empty() {
        return Err(Error::MalformedFasta {
            line: 0,
            reason: format!("{} contains no records", path.display()),
        }
        .into());
    }
    Ok(records)
}

/// Picks `locus` from `records`, or the only record when `locus` is `None`.
pub fn select(
    records: Vec<SequenceRecord>,
    locus: Option<&str>,
    what: &str,
) -> Result<SequenceRecord, CliError> {
    match locus {
        Some(l) => records
            .into_iter()
            .find(|r| r.locus == l)
            .ok_or_else(|| Error::RecordNotFound(l.to_string()).into()),
        None if records.len() == 1 => Ok(records.into_iter().next().expect("one record")),
        None => Err(CliError::Usage(format!(
            "{what} file holds {} records; pick one with --{what}-locus",
            records.len()
        ))),
    }
}

pub fn inline(label: &str, residues: &str) -> Result<SequenceRecord, CliError> {
    SequenceRecord::new(label, "", residues).map_err(|_| Error::EmptySequence.into())
}

pub fn fetch(
    locus: &str,
    allow_network: bool,
    endpoint: Option<&str>,
) -> Result<SequenceRecord, CliError> {
    let access = if allow_network {
        NetworkAccess::Allowed
    } else {
        NetworkAccess::Denied
    };
    let client = match endpoint {
        Some(e) => FetchClient::new(e, HttpTransport::new(), access),
        None => FetchClient::from_env(HttpTransport::new(), access),
    };
    Ok(client.fetch_record(locus)?)
}

/// Alphabet and validation policy shared by all inputs of one command.
pub struct Encoder {
    pub alphabet: Arc<Alphabet>,
    pub policy: ValidationPolicy,
}

impl Encoder {
    pub fn new(args: &EncodingArgs) -> Result<Self, CliError> {
        let alphabet = Alphabet::new(args.alphabet.chars())?;
        let policy = match args.on_invalid {
            OnInvalid::Error => ValidationPolicy::Strict,
            OnInvalid::Skip => ValidationPolicy::Skip,
        };
        Ok(Self {
            alphabet: Arc::new(alphabet),
            policy,
        })
    }

    /// Cuts `region` out of `record` (if given) and encodes it.
    pub fn encode(
        &self,
        record: &SequenceRecord,
        region: Option<Region>,
    ) -> Result<EncodedSequence, Error> {
        let raw = match region {
            Some(r) => extract_region(record, &r)?,
            None => record.residues.as_str(),
        };
        let encoded = encode(raw, &self.alphabet, self.policy)?;
        if encoded.dropped > 0 {
            eprintln!(
                "logmatch: {}: dropped {} character(s) outside the alphabet",
                record.locus, encoded.dropped
            );
        }
        Ok(encoded.sequence)
    }
}
