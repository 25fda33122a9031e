use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::record::CredentialRecord;
use super::scheme::Scheme;
use crate::error::{Error, Result};

pub const DUMP_HEADER: &str = "#hashvault-dump v1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DumpOptions {
    /// Permit `plain` records, which leak the password itself.
    pub allow_plaintext: bool,
    /// Replace usernames with `user<N>`, numbered from 1 in record order.
    pub anonymize: bool,
}

/// The attacker's view of a breached vault: the vault's record lines under
/// a dump header.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BreachDump {
    pub entries: Vec<CredentialRecord>,
}

impl BreachDump {
    pub fn from_records(records: &[CredentialRecord], options: DumpOptions) -> Result<Self> {
        if !options.allow_plaintext && records.iter().any(|r| r.scheme == Scheme::Plain) {
            return Err(Error::PlaintextExport);
        }
        let entries = records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                if options.anonymize {
                    r.username = format!("user{}", i + 1);
                }
                r
            })
            .collect();
        Ok(BreachDump { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::from(DUMP_HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        fs::read_to_string(path)?.parse()
    }
}

impl FromStr for BreachDump {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.split_terminator('\n');
        if lines.next() != Some(DUMP_HEADER) {
            return Err(Error::parse(format!(
                "dump must start with `{DUMP_HEADER}`"
            )));
        }
        let entries = lines
            .enumerate()
            .map(|(n, line)| {
                line.parse()
                    .map_err(|e| Error::parse(format!("dump line {}: {e}", n + 2)))
            })
            .collect::<Result<_>>()?;
        Ok(BreachDump { entries })
    }
}
