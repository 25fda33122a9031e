use super::sha1::{sha1_digest, Digest, Sha1, BLOCK_LEN};

/// HMAC-SHA1 with a precomputed key schedule, so that repeated PRF calls
/// under one key (PBKDF2) hash the padded key only once.
#[derive(Clone)]
pub struct HmacSha1 {
    inner: Sha1,
    outer: Sha1,
}

impl HmacSha1 {
    pub fn new(key: &[u8]) -> Self {
        let mut block = [0u8; BLOCK_LEN];
        if key.len() > BLOCK_LEN {
            block[..20].copy_from_slice(sha1_digest(key).as_bytes());
        } else {
            block[..key.len()].copy_from_slice(key);
        }

        let mut ipad = [0x36u8; BLOCK_LEN];
        let mut opad = [0x5cu8; BLOCK_LEN];
        for ((i, o), k) in ipad.iter_mut().zip(opad.iter_mut()).zip(block) {
            *i ^= k;
            *o ^= k;
        }
        let mut inner = Sha1::new();
        inner.update(&ipad);
        let mut outer = Sha1::new();
        outer.update(&opad);
        HmacSha1 { inner, outer }
    }

    pub fn mac(&self, message: &[u8]) -> Digest {
        self.mac_parts(&[message])
    }

    /// MAC over the concatenation of `parts`.
    pub fn mac_parts(&self, parts: &[&[u8]]) -> Digest {
        let mut inner = self.inner.clone();
        for part in parts {
            inner.update(part);
        }
        let mut outer = self.outer.clone();
        outer.update(inner.finalize().as_bytes());
        outer.finalize()
    }
}

/// HMAC-SHA1 of `message` under `key`.
pub fn hmac_sha1(key: &[u8], message: &[u8]) -> Digest {
    HmacSha1::new(key).mac(message)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_key_empty_message() {
        // Python hmac.new(b"\0" * 64, b"", "sha1")
        assert_eq!(
            hmac_sha1(&[0u8; 64], b"").to_hex(),
            "fbdb1d1b18aa6c08324b7d64b71fb76370690e1d"
        );
    }

    #[test]
    fn rfc2202_case_1_and_long_key() {
        assert_eq!(
            hmac_sha1(&[0x0b; 20], b"Hi There").to_hex(),
            "b617318655057264e28bc0b6fb378c8ef146be00"
        );
        // RFC 2202 test case 6: 80-byte key is hashed first.
        assert_eq!(
            hmac_sha1(
                &[0xaa; 80],
                b"Test Using Larger Than Block-Size Key - Hash Key First"
            )
            .to_hex(),
            "aa4ae5e15272d00e95705637ce8a3b55ed402112"
        );
    }

    #[test]
    fn key_identities() {
        let k = b"secret key";
        let m = b"message";
        let mut padded = k.to_vec();
        padded.extend_from_slice(b"");
        assert_eq!(hmac_sha1(k, m), hmac_sha1(&padded, m));
        assert_ne!(hmac_sha1(b"key one", m), hmac_sha1(b"key two", m));
    }

    #[test]
    fn parts_equal_concatenation() {
        let h = HmacSha1::new(b"k");
        assert_eq!(h.mac_parts(&[b"ab", b"", b"cd"]), h.mac(b"abcd"));
    }
}
