//! Remote record retrieval behind an injectable transport.
//!
//! The client performs no I/O itself: a [`Transport`] turns a URL into a
//! response body. Network access must be switched on explicitly with
//! [`NetworkAccess::Allowed`]; otherwise every fetch fails with
//! [`Error::NetworkUnavailable`] before the transport is touched.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::io::fasta::{parse_fasta_str, SequenceRecord};

/// NCBI E-utilities FASTA endpoint. `{locus}` is replaced by the locus.
pub const DEFAULT_ENDPOINT: &str =
    "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi?db=nuccore&rettype=fasta&retmode=text&id={locus}";

/// Environment variable that overrides [`DEFAULT_ENDPOINT`].
pub const ENDPOINT_ENV: &str = "LOGMATCH_ENDPOINT";

/// Fetches a URL. `Ok(None)` means the server has no such resource.
pub trait Transport {
    fn get(&self, url: &str) -> Result<Option<String>>;
}

impl<T: Transport + ?Sized> Transport for &T {
    fn get(&self, url: &str) -> Result<Option<String>> {
        (**self).get(url)
    }
}

/// Serves canned bodies keyed by URL.
#[derive(Debug, Default, Clone)]
pub struct FixtureTransport {
    bodies: HashMap<String, String>,
}

impl FixtureTransport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, url: impl Into<String>, body: impl Into<String>) -> Self {
        self.bodies.insert(url.into(), body.into());
        self
    }
}

impl Transport for FixtureTransport {
    fn get(&self, url: &str) -> Result<Option<String>> {
        Ok(self.bodies.get(url).cloned())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NetworkAccess {
    #[default]
    Denied,
    Allowed,
}

pub struct FetchClient<T> {
    endpoint: String,
    transport: T,
    access: NetworkAccess,
}

impl<T: Transport> FetchClient<T> {
    pub fn new(endpoint: impl Into<String>, transport: T, access: NetworkAccess) -> Self {
        Self {
            endpoint: endpoint.into(),
            transport,
            access,
        }
    }

    /// Endpoint from [`ENDPOINT_ENV`] if set, else [`DEFAULT_ENDPOINT`].
    pub fn from_env(transport: T, access: NetworkAccess) -> Self {
        let endpoint = std::env::var(ENDPOINT_ENV).unwrap_or_else(|_| DEFAULT_ENDPOINT.to_string());
        Self::new(endpoint, transport, access)
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }

    /// URL for `locus`: the `{locus}` placeholder is substituted, or the
    /// locus is appended as a path segment when there is none.
    pub fn url_for(&self, locus: &str) -> String {
        if self.endpoint.contains("{locus}") {
            self.endpoint.replace("{locus}", locus)
        } else {
            format!("{}/{}", self.endpoint.trim_end_matches('/'), locus)
        }
    }

    pub fn fetch_record(&self, locus: &str) -> Result<SequenceRecord> {
        if self.access != NetworkAccess::Allowed {
            return Err(Error::NetworkUnavailable);
        }
        let valid = !locus.is_empty()
            && locus
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'));
        if !valid {
            return Err(Error::RecordNotFound(locus.to_string()));
        }
        let body = self
            .transport
            .get(&self.url_for(locus))?
            .ok_or_else(|| Error::RecordNotFound(locus.to_string()))?;
        if body.trim().is_empty() {
            return Err(Error::RecordNotFound(locus.to_string()));
        }
        parse_fasta_str(&body)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::RecordNotFound(locus.to_string()))
    }
}
