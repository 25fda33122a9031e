use std::fmt;
use std::str::FromStr;

use crate::bcrypt::{bcrypt_hash, CostParameter};
use crate::error::{Error, Result};
use crate::mfcrypt::{mfcrypt, MfParams};
use crate::primitives::Sha1;

/// Salt length for every salted scheme: 128 bits.
pub const SALT_LEN: usize = 16;

/// How a vault turns a password into a verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// The password itself. Exists only as the insecure baseline.
    Plain,
    /// `sha1(password)`, no salt.
    Sha1,
    /// `sha1(salt || password)` with a 16-byte salt.
    Sha1Salted,
    Bcrypt(CostParameter),
    Mfcrypt(MfParams),
}

impl Scheme {
    pub fn tag(&self) -> &'static str {
        match self {
            Scheme::Plain => "plain",
            Scheme::Sha1 => "sha1",
            Scheme::Sha1Salted => "sha1-salted",
            Scheme::Bcrypt(_) => "bcrypt",
            Scheme::Mfcrypt(_) => "mfcrypt",
        }
    }

    /// Parameter field of the record line; empty for the SHA-1 schemes.
    pub fn params_field(&self) -> String {
        match self {
            Scheme::Plain | Scheme::Sha1 | Scheme::Sha1Salted => String::new(),
            Scheme::Bcrypt(cost) => format!("cost={}", cost.get()),
            Scheme::Mfcrypt(p) => format!("N={},p={},dk={}", p.log_n(), p.p(), p.dk_len()),
        }
    }

    pub fn from_parts(tag: &str, params: &str) -> Result<Self> {
        let no_params = |s: Scheme| {
            if params.is_empty() {
                Ok(s)
            } else {
                Err(Error::parse(format!("scheme `{tag}` takes no parameters")))
            }
        };
        match tag {
            "plain" => no_params(Scheme::Plain),
            "sha1" => no_params(Scheme::Sha1),
            "sha1-salted" => no_params(Scheme::Sha1Salted),
            "bcrypt" => {
                let cost = params
                    .strip_prefix("cost=")
                    .and_then(|c| c.parse::<u8>().ok())
                    .ok_or_else(|| Error::parse(format!("bad bcrypt params `{params}`")))?;
                Ok(Scheme::Bcrypt(
                    CostParameter::new(cost).map_err(|e| Error::parse(e.to_string()))?,
                ))
            }
            "mfcrypt" => {
                let mut fields = [None::<u64>; 3];
                for kv in params.split(',') {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::parse(format!("bad mfcrypt param `{kv}`")))?;
                    let slot = match k {
                        "N" => 0,
                        "p" => 1,
                        "dk" => 2,
                        _ => return Err(Error::parse(format!("unknown mfcrypt param `{k}`"))),
                    };
                    fields[slot] = Some(
                        v.parse()
                            .map_err(|_| Error::parse(format!("bad value `{kv}`")))?,
                    );
                }
                let [Some(n), Some(p), Some(dk)] = fields else {
                    return Err(Error::parse("mfcrypt params need N, p and dk"));
                };
                let params = MfParams::new(
                    u8::try_from(n).map_err(|_| Error::parse("N out of range"))?,
                    u32::try_from(p).map_err(|_| Error::parse("p out of range"))?,
                    usize::try_from(dk).map_err(|_| Error::parse("dk out of range"))?,
                )
                .map_err(|e| Error::parse(e.to_string()))?;
                Ok(Scheme::Mfcrypt(params))
            }
            other => Err(Error::parse(format!("unknown scheme tag `{other}`"))),
        }
    }

    pub fn is_salted(&self) -> bool {
        self.salt_len() > 0
    }

    pub fn salt_len(&self) -> usize {
        match self {
            Scheme::Plain | Scheme::Sha1 => 0,
            _ => SALT_LEN,
        }
    }

    /// Verifier length, or `None` when it follows the password (plain).
    pub fn verifier_len(&self) -> Option<usize> {
        match self {
            Scheme::Plain => None,
            Scheme::Sha1 | Scheme::Sha1Salted => Some(20),
            Scheme::Bcrypt(_) => Some(crate::bcrypt::VERIFIER_LEN),
            Scheme::Mfcrypt(p) => Some(p.dk_len()),
        }
    }

    /// Computes the verifier for `password` under `salt`.
    pub fn derive(&self, password: &[u8], salt: &[u8]) -> Result<Vec<u8>> {
        if salt.len() != self.salt_len() {
            return Err(Error::invalid(format!(
                "scheme {} needs a {}-byte salt, got {}",
                self.tag(),
                self.salt_len(),
                salt.len()
            )));
        }
        Ok(match self {
            Scheme::Plain => password.to_vec(),
            Scheme::Sha1 | Scheme::Sha1Salted => {
                let mut h = Sha1::new();
                h.update(salt);
                h.update(password);
                h.finalize().0.to_vec()
            }
            Scheme::Bcrypt(cost) => bcrypt_hash(password, salt.try_into().unwrap(), *cost)?
                .verifier
                .to_vec(),
            Scheme::Mfcrypt(params) => mfcrypt(password, salt, params)?,
        })
    }
}

/// `tag` or `tag$params`, as used in the vault header.
impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params_field();
        if params.is_empty() {
            f.write_str(self.tag())
        } else {
            write!(f, "{}${params}", self.tag())
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, params) = s.split_once('$').unwrap_or((s, ""));
        Scheme::from_parts(tag, params)
    }
}
