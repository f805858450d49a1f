//! On-disk cache of rendered artifacts, keyed by signature and tool version.

use std::fs;
use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use strata_core::StratumSignature;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
pub struct Entry {
    pub version: String,
    pub signature: String,
    pub command: String,
    pub emit: String,
    pub exit_code: u8,
    pub output: String,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, signature: &str, command: &str, emit: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{signature}\n{VERSION}").as_bytes());
        let key = hex::encode(&digest[..8]);
        self.dir.join(format!("{key}.{command}.{emit}.json"))
    }

    /// A stored entry, if one exists for exactly this request.
    pub fn load(&self, sig: &StratumSignature, command: &str, emit: &str) -> Option<Entry> {
        let signature = sig.to_string();
        let text = fs::read_to_string(self.path(&signature, command, emit)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let matches =
            entry.version == VERSION && entry.signature == signature && entry.command == command && entry.emit == emit;
        matches.then_some(entry)
    }

    pub fn store(
        &self,
        sig: &StratumSignature,
        command: &str,
        emit: &str,
        output: &str,
        exit_code: u8,
    ) -> io::Result<()> {
        let signature = sig.to_string();
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            version: VERSION.into(),
            signature: signature.clone(),
            command: command.into(),
            emit: emit.into(),
            exit_code,
            output: output.into(),
        };
        let text = serde_json::to_string(&entry).map_err(io::Error::other)?;
        fs::write(self.path(&signature, command, emit), text)
    }
}
