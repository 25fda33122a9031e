//! Hash substrate shared by every other module: SHA-1, HMAC-SHA1 and
//! PBKDF2-HMAC-SHA1.
//!
//! Everything here is a pure function over its inputs. The streaming
//! [`Sha1`] state is single-owner.

mod hmac;
mod pbkdf2;
mod sha1;

pub use self::hmac::{hmac_sha1, HmacSha1};
pub use self::pbkdf2::pbkdf2_sha1;
pub use self::sha1::{
    compress, pad_message, sha1_digest, Digest, MessageBlockStream, Sha1, BLOCK_LEN, DIGEST_LEN, IV,
};
