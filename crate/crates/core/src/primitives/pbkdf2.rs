use super::hmac::HmacSha1;
use super::sha1::DIGEST_LEN;
use crate::error::{Error, Result};

/// PBKDF2 with HMAC-SHA1 as the PRF.
///
/// Rejects `iterations == 0` and `dk_len == 0`.
pub fn pbkdf2_sha1(
    password: &[u8],
    salt: &[u8],
    iterations: u32,
    dk_len: usize,
) -> Result<Vec<u8>> {
    if iterations == 0 {
        return Err(Error::invalid("pbkdf2 iterations must be at least 1"));
    }
    if dk_len == 0 {
        return Err(Error::invalid("pbkdf2 output length must be at least 1"));
    }

    let prf = HmacSha1::new(password);
    let mut out = Vec::with_capacity(dk_len);
    for (i, _) in (1u32..).zip(0..dk_len.div_ceil(DIGEST_LEN)) {
        let mut u = prf.mac_parts(&[salt, &i.to_be_bytes()]);
        let mut t = u.0;
        for _ in 1..iterations {
            u = prf.mac(u.as_bytes());
            for (acc, b) in t.iter_mut().zip(u.0) {
                *acc ^= b;
            }
        }
        let take = (dk_len - out.len()).min(DIGEST_LEN);
        out.extend_from_slice(&t[..take]);
    }
    Ok(out)
}
