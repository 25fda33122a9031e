use std::str::FromStr;

use super::scheme::Scheme;
use crate::error::{Error, Result};

/// One stored login.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CredentialRecord {
    pub username: String,
    pub scheme: Scheme,
    pub salt: Vec<u8>,
    pub verifier: Vec<u8>,
    /// Unix seconds.
    pub created_at: u64,
}

pub(crate) fn validate_username(username: &str) -> Result<()> {
    if username.is_empty() {
        return Err(Error::invalid("username must not be empty"));
    }
    if username.starts_with('#') {
        return Err(Error::invalid("username must not start with `#`"));
    }
    if username.chars().any(|c| c == ':' || c.is_control()) {
        return Err(Error::invalid(format!(
            "username `{}` contains `:` or a control character",
            username.escape_debug()
        )));
    }
    Ok(())
}

impl CredentialRecord {
    /// Checks the salt and verifier lengths the scheme implies.
    pub fn validate(&self) -> Result<()> {
        validate_username(&self.username)?;
        if self.salt.len() != self.scheme.salt_len() {
            return Err(Error::invalid(format!(
                "{} record for `{}` has a {}-byte salt",
                self.scheme.tag(),
                self.username,
                self.salt.len()
            )));
        }
        match self.scheme.verifier_len() {
            Some(n) if n != self.verifier.len() => Err(Error::invalid(format!(
                "{} record for `{}` has a {}-byte verifier, expected {n}",
                self.scheme.tag(),
                self.username,
                self.verifier.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Recomputes the verifier from `password` and compares.
    pub fn check(&self, password: &[u8]) -> bool {
        match self.scheme.derive(password, &self.salt) {
            Ok(v) => crate::ct_eq(&v, &self.verifier),
            Err(_) => false,
        }
    }

    /// `username:scheme$params$salthex$verifierhex:created_at`
    pub fn to_line(&self) -> String {
        format!(
            "{}:{}${}${}${}:{}",
            self.username,
            self.scheme.tag(),
            self.scheme.params_field(),
            hex::encode(&self.salt),
            hex::encode(&self.verifier),
            self.created_at
        )
    }
}

fn strict_hex(field: &str, what: &str) -> Result<Vec<u8>> {
    if field.bytes().any(|b| b.is_ascii_uppercase()) {
        return Err(Error::parse(format!("{what} hex must be lowercase")));
    }
    hex::decode(field).map_err(|e| Error::parse(format!("{what}: {e}")))
}

impl FromStr for CredentialRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let (username, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("record line without `:`: {line}")))?;
        let (body, created_at) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::parse("record line missing created_at"))?;
        let fields: Vec<&str> = body.split('$').collect();
        let [tag, params, salt, verifier] = fields[..] else {
            return Err(Error::parse(format!(
                "expected scheme$params$salt$verifier, got `{body}`"
            )));
        };
        if created_at.is_empty() || !created_at.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad created_at `{created_at}`")));
        }
        let record = CredentialRecord {
            username: username.to_string(),
            scheme: Scheme::from_parts(tag, params)?,
            salt: strict_hex(salt, "salt")?,
            verifier: strict_hex(verifier, "verifier")?,
            created_at: created_at
                .parse()
                .map_err(|_| Error::parse("created_at out of range"))?,
        };
        record.validate().map_err(|e| Error::parse(e.to_string()))?;
        if record.to_line() != line {
            return Err(Error::parse(format!("non-canonical record line: {line}")));
        }
        Ok(record)
    }
}
