use logical_match::io::Transport;
use logical_match::Error;

/// Blocking HTTP(S) transport for the fetch client.
pub struct HttpTransport {
    agent: ureq::Agent,
}

impl HttpTransport {
    pub fn new() -> Self {
        Self {
            agent: ureq::Agent::new_with_defaults(),
        }
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<Option<String>, Error> {
        match self.agent.get(url).call() {
            Ok(mut resp) => resp
                .body_mut()
                .read_to_string()
                .map(Some)
                .map_err(|e| Error::Transport(e.to_string())),
            Err(ureq::Error::StatusCode(404)) => Ok(None),
            Err(e) => Err(Error::Transport(e.to_string())),
        }
    }
}
