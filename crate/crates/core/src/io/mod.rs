//! Getting sequences in: FASTA files, regions, synthetic pairs, remote records.

pub mod fasta;
pub mod fetch;
pub mod mutate;
pub mod region;

pub use fasta::{parse_fasta, parse_fasta_str, write_fasta, SequenceRecord};
pub use fetch::{FetchClient, FixtureTransport, NetworkAccess, Transport};
pub use mutate::generate_mutated;
pub use region::{extract_region, Region};
