//! Credential store with pluggable schemes, enrollment, verification,
//! migration, a line-oriented file format, and a breach-dump export.
//!
//! Vault file:
//!
//! ```text
//! #hashvault v1 default=<scheme>
//! username:scheme$params$salthex$verifierhex:created_at
//! ...
//! ```

mod dump;
mod record;
mod scheme;

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use dump::{BreachDump, DumpOptions, DUMP_HEADER};
pub use record::CredentialRecord;
pub use scheme::{Scheme, SALT_LEN};

pub const FILE_HEADER: &str = "#hashvault v1";

/// The persisted contents of a vault.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaultFile {
    pub default_scheme: Scheme,
    pub records: Vec<CredentialRecord>,
}

impl VaultFile {
    pub fn new(default_scheme: Scheme) -> Self {
        VaultFile {
            default_scheme,
            records: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("{FILE_HEADER} default={}\n", self.default_scheme);
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }
}

impl FromStr for VaultFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.split_terminator('\n');
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty vault file"))?;
        let default = header
            .strip_prefix(FILE_HEADER)
            .and_then(|rest| rest.strip_prefix(" default="))
            .ok_or_else(|| Error::parse(format!("bad vault header `{header}`")))?;
        let mut file = VaultFile::new(default.parse()?);
        let mut seen = std::collections::HashSet::new();
        for (n, line) in lines.enumerate() {
            let record: CredentialRecord = line
                .parse()
                .map_err(|e| Error::parse(format!("line {}: {e}", n + 2)))?;
            if !seen.insert(record.username.clone()) {
                return Err(Error::DuplicateUsername(record.username));
            }
            file.records.push(record);
        }
        Ok(file)
    }
}

/// Where `created_at` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clock {
    System,
    Fixed(u64),
}

impl Clock {
    fn now(self) -> u64 {
        match self {
            Clock::System => SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            Clock::Fixed(t) => t,
        }
    }
}

/// A loaded vault plus its salt source.
///
/// Mutations go through `&mut self`, so one writer at a time; `verify`
/// takes `&self` and can run from many threads against a shared vault.
pub struct Vault {
    file: VaultFile,
    by_name: HashMap<String, usize>,
    rng: ChaCha20Rng,
    clock: Clock,
}

/// Salt used for the dummy derivation on unknown usernames.
const DUMMY_SALT: [u8; SALT_LEN] = [0x5a; SALT_LEN];

impl Vault {
    /// An empty vault. `seed` makes salts reproducible; `None` draws the
    /// seed from the operating system.
    pub fn new(default_scheme: Scheme, seed: Option<u64>) -> Self {
        Self::from_file(VaultFile::new(default_scheme), seed)
    }

    pub fn from_file(file: VaultFile, seed: Option<u64>) -> Self {
        let by_name = file
            .records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.username.clone(), i))
            .collect();
        let rng = match seed {
            Some(s) => ChaCha20Rng::seed_from_u64(s),
            None => ChaCha20Rng::from_entropy(),
        };
        Vault {
            file,
            by_name,
            rng,
            clock: Clock::System,
        }
    }

    pub fn with_clock(mut self, clock: Clock) -> Self {
        self.clock = clock;
        self
    }

    pub fn load(path: impl AsRef<Path>, seed: Option<u64>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(Self::from_file(text.parse()?, seed))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.file.render())?;
        Ok(())
    }

    pub fn file(&self) -> &VaultFile {
        &self.file
    }

    pub fn into_file(self) -> VaultFile {
        self.file
    }

    pub fn default_scheme(&self) -> &Scheme {
        &self.file.default_scheme
    }

    pub fn records(&self) -> &[CredentialRecord] {
        &self.file.records
    }

    pub fn len(&self) -> usize {
        self.file.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.records.is_empty()
    }

    pub fn get(&self, username: &str) -> Option<&CredentialRecord> {
        self.by_name.get(username).map(|&i| &self.file.records[i])
    }

    fn fresh_salt(&mut self, scheme: &Scheme) -> Vec<u8> {
        let mut salt = vec![0u8; scheme.salt_len()];
        self.rng.fill_bytes(&mut salt);
        salt
    }

    fn make_record(
        &mut self,
        username: &str,
        password: &[u8],
        scheme: &Scheme,
    ) -> Result<CredentialRecord> {
        if password.is_empty() {
            return Err(Error::invalid("password must not be empty"));
        }
        let salt = self.fresh_salt(scheme);
        let verifier = scheme.derive(password, &salt)?;
        Ok(CredentialRecord {
            username: username.to_string(),
            scheme: *scheme,
            salt,
            verifier,
            created_at: self.clock.now(),
        })
    }

    pub fn enroll(
        &mut self,
        username: &str,
        password: &[u8],
        scheme: &Scheme,
    ) -> Result<CredentialRecord> {
        record::validate_username(username)?;
        if self.by_name.contains_key(username) {
            return Err(Error::DuplicateUsername(username.to_string()));
        }
        let record = self.make_record(username, password, scheme)?;
        self.by_name
            .insert(username.to_string(), self.file.records.len());
        self.file.records.push(record.clone());
        Ok(record)
    }

    /// True iff `password` reproduces the stored verifier. Unknown users
    /// cost one derivation under the default scheme before returning false.
    pub fn verify(&self, username: &str, password: &[u8]) -> bool {
        match self.get(username) {
            Some(record) => record.check(password),
            None => {
                let scheme = self.file.default_scheme;
                let salt = &DUMMY_SALT[..scheme.salt_len()];
                let _ = std::hint::black_box(scheme.derive(password, salt));
                false
            }
        }
    }

    /// Re-enrolls `username` under `new_scheme` with a fresh salt. Nothing
    /// changes unless `password` verifies first.
    pub fn migrate(
        &mut self,
        username: &str,
        password: &[u8],
        new_scheme: &Scheme,
    ) -> Result<CredentialRecord> {
        let &index = self
            .by_name
            .get(username)
            .ok_or_else(|| Error::UnknownUser(username.to_string()))?;
        if !self.file.records[index].check(password) {
            return Err(Error::VerificationFailed(username.to_string()));
        }
        let record = self.make_record(username, password, new_scheme)?;
        self.file.records[index] = record.clone();
        Ok(record)
    }

    /// Migrates many users at once. Salts are drawn in input order, the
    /// derivations run in parallel, and nothing is written unless every
    /// credential verifies.
    pub fn migrate_many(
        &mut self,
        credentials: &[(String, Vec<u8>)],
        new_scheme: &Scheme,
    ) -> Result<usize> {
        let mut jobs = Vec::with_capacity(credentials.len());
        for (username, password) in credentials {
            let &index = self
                .by_name
                .get(username)
                .ok_or_else(|| Error::UnknownUser(username.clone()))?;
            if password.is_empty() {
                return Err(Error::invalid("password must not be empty"));
            }
            jobs.push((index, password, self.fresh_salt(new_scheme)));
        }
        let now = self.clock.now();
        let records = &self.file.records;
        let fresh: Vec<(usize, CredentialRecord)> = jobs
            .into_par_iter()
            .map(|(index, password, salt)| {
                let old = &records[index];
                if !old.check(password) {
                    return Err(Error::VerificationFailed(old.username.clone()));
                }
                let verifier = new_scheme.derive(password, &salt)?;
                Ok((
                    index,
                    CredentialRecord {
                        username: old.username.clone(),
                        scheme: *new_scheme,
                        salt,
                        verifier,
                        created_at: now,
                    },
                ))
            })
            .collect::<Result<_>>()?;
        let count = fresh.len();
        for (index, record) in fresh {
            self.file.records[index] = record;
        }
        Ok(count)
    }

    /// What a server breach exposes: every record, no plaintext passwords.
    pub fn export_breach_dump(&self, options: DumpOptions) -> Result<BreachDump> {
        BreachDump::from_records(&self.file.records, options)
    }
}
