//! A password-storage and password-cracking laboratory.
//!
//! The crate pairs the defender's side of password storage with the
//! attacker's side, so that the security arguments for salting and for
//! cost-tunable key derivation can be run as experiments:
//!
//! - [`primitives`]: SHA-1 (padding, 512-bit blocks, compression), HMAC-SHA1
//!   and PBKDF2-HMAC-SHA1.
//! - [`rainbow`]: rainbow tables with per-column reduction, endpoint-only
//!   storage and the chain-walking lookup.
//! - [`bcrypt`]: Blowfish, the EksBlowfish expensive key schedule and a
//!   bcrypt-style password hash.
//! - [`mfcrypt`]: the MFcrypt pipeline around a sequential memory-hard ROMix.
//! - [`vault`]: a credential store with pluggable schemes and a breach dump.
//! - [`attack`]: dictionary and rainbow attacks, benchmarks and the
//!   experiments that measure each argument.
//!
//! ```
//! use hashvault::primitives::sha1_digest;
//!
//! let digest = sha1_digest(b"01123456");
//! assert_eq!(digest.to_hex(), "5a44cf4f2b0f2bfc7da6f386481f6afbc8aff73f");
//! ```

pub mod attack;
pub mod bcrypt;
mod error;
pub mod mfcrypt;
pub mod primitives;
pub mod rainbow;
pub mod vault;

pub use error::{Error, Result};

/// Decodes a user-supplied octet string: `0x`-prefixed input is hex,
/// anything else is taken as UTF-8 text.
pub fn parse_octets(text: &str) -> Result<Vec<u8>> {
    match text.strip_prefix("0x") {
        Some(hex_part) => {
            hex::decode(hex_part).map_err(|e| Error::Parse(format!("invalid hex `{text}`: {e}")))
        }
        None => Ok(text.as_bytes().to_vec()),
    }
}

/// Constant-pattern comparison of two verifiers.
pub(crate) fn ct_eq(a: &[u8], b: &[u8]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().zip(b).fold(0u8, |acc, (x, y)| acc | (x ^ y)) == 0
}
