use std::fmt;
use std::str::FromStr;

use super::blowfish::MAX_KEY_LEN;
use super::eks::{eksblowfish_setup, CostParameter};
use crate::error::{Error, Result};

pub const SALT_LEN: usize = 16;
pub const VERIFIER_LEN: usize = 23;

const MAGIC_TEXT: &[u8; 24] = b"OrpheanBeholderScryDoubt";
const PREFIX: &str = "$2x$";

/// A bcrypt hash: cost, 16-byte salt and the 23-byte verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BcryptRecord {
    pub cost: CostParameter,
    pub salt: [u8; SALT_LEN],
    pub verifier: [u8; VERIFIER_LEN],
}

/// The Blowfish key bcrypt derives from a password: the password bytes and a
/// NUL terminator, capped at 72 bytes.
pub fn bcrypt_key(password: &[u8]) -> Result<Vec<u8>> {
    if password.is_empty() || password.len() > MAX_KEY_LEN {
        return Err(Error::invalid(format!(
            "bcrypt passwords must be 1..={MAX_KEY_LEN} bytes, got {}",
            password.len()
        )));
    }
    let mut key = Vec::with_capacity(password.len() + 1);
    key.extend_from_slice(password);
    key.push(0);
    key.truncate(MAX_KEY_LEN);
    Ok(key)
}

pub fn bcrypt_hash(
    password: &[u8],
    salt: &[u8; SALT_LEN],
    cost: CostParameter,
) -> Result<BcryptRecord> {
    let key = bcrypt_key(password)?;
    let state = eksblowfish_setup(cost, salt, &key)?;

    let mut words = [0u32; 6];
    for (w, chunk) in words.iter_mut().zip(MAGIC_TEXT.chunks_exact(4)) {
        *w = u32::from_be_bytes(chunk.try_into().unwrap());
    }
    for _ in 0..64 {
        for pair in words.chunks_exact_mut(2) {
            let (l, r) = state.encrypt_words(pair[0], pair[1]);
            pair[0] = l;
            pair[1] = r;
        }
    }
    let mut full = [0u8; 24];
    for (chunk, w) in full.chunks_exact_mut(4).zip(words) {
        chunk.copy_from_slice(&w.to_be_bytes());
    }
    let mut verifier = [0u8; VERIFIER_LEN];
    verifier.copy_from_slice(&full[..VERIFIER_LEN]);
    Ok(BcryptRecord {
        cost,
        salt: *salt,
        verifier,
    })
}

/// Recomputes the verifier and compares without early exit. Passwords that
/// bcrypt cannot hash never verify.
pub fn bcrypt_verify(password: &[u8], record: &BcryptRecord) -> bool {
    match bcrypt_hash(password, &record.salt, record.cost) {
        Ok(fresh) => crate::ct_eq(&fresh.verifier, &record.verifier),
        Err(_) => false,
    }
}

impl fmt::Display for BcryptRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{PREFIX}{:02}${}{}",
            self.cost.get(),
            hex::encode(self.salt),
            hex::encode(self.verifier)
        )
    }
}

impl FromStr for BcryptRecord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix(PREFIX)
            .ok_or_else(|| Error::parse(format!("bcrypt record must start with {PREFIX}")))?;
        let (cost, body) = rest
            .split_once('$')
            .ok_or_else(|| Error::parse("bcrypt record missing cost separator"))?;
        if cost.len() != 2 || !cost.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse("bcrypt cost must be two decimal digits"));
        }
        let cost =
            CostParameter::new(cost.parse().unwrap()).map_err(|e| Error::parse(e.to_string()))?;
        if body.len() != 2 * (SALT_LEN + VERIFIER_LEN)
            || !body.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
        {
            return Err(Error::parse("bcrypt body must be 78 lowercase hex digits"));
        }
        let bytes = hex::decode(body).map_err(|e| Error::parse(e.to_string()))?;
        Ok(BcryptRecord {
            cost,
            salt: bytes[..SALT_LEN].try_into().unwrap(),
            verifier: bytes[SALT_LEN..].try_into().unwrap(),
        })
    }
}
