use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::primitives::Digest;

/// Fixed-length plaintexts over an ordered charset. Plaintext `i` is `i`
/// written in base `|charset|`, most significant character first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionDomain {
    charset: Vec<u8>,
    length: u8,
    size: u64,
}

impl ReductionDomain {
    pub fn new(charset: impl Into<Vec<u8>>, length: u8) -> Result<Self> {
        let charset = charset.into();
        if charset.is_empty() {
            return Err(Error::invalid("charset must not be empty"));
        }
        if charset.len() > usize::from(u8::MAX) {
            return Err(Error::invalid("charset holds at most 255 characters"));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = charset.iter().find(|c| !seen.insert(**c)) {
            return Err(Error::invalid(format!(
                "duplicate charset character {:?}",
                char::from(*dup)
            )));
        }
        if length == 0 {
            return Err(Error::invalid("plaintext length must be at least 1"));
        }
        let size = (charset.len() as u64)
            .checked_pow(u32::from(length))
            .ok_or_else(|| Error::invalid("domain size overflows a 64-bit counter"))?;
        Ok(ReductionDomain {
            charset,
            length,
            size,
        })
    }

    /// Decimal digits, `length` characters.
    pub fn digits(length: u8) -> Result<Self> {
        Self::new(b"0123456789".to_vec(), length)
    }

    pub fn charset(&self) -> &[u8] {
        &self.charset
    }

    pub fn length(&self) -> u8 {
        self.length
    }

    pub fn plaintext_len(&self) -> usize {
        usize::from(self.length)
    }

    /// Number of plaintexts, `|charset|^length`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn plaintext_at(&self, index: u64) -> Vec<u8> {
        let mut out = vec![0u8; self.plaintext_len()];
        self.write_plaintext(index, &mut out);
        out
    }

    /// Writes plaintext `index mod size` into `out` (which must be `length`
    /// bytes).
    pub fn write_plaintext(&self, index: u64, out: &mut [u8]) {
        debug_assert_eq!(out.len(), self.plaintext_len());
        let radix = self.charset.len() as u64;
        let mut rest = index % self.size;
        for slot in out.iter_mut().rev() {
            *slot = self.charset[(rest % radix) as usize];
            rest /= radix;
        }
    }

    pub fn index_of(&self, plaintext: &[u8]) -> Option<u64> {
        if plaintext.len() != self.plaintext_len() {
            return None;
        }
        let radix = self.charset.len() as u64;
        plaintext.iter().try_fold(0u64, |acc, c| {
            let digit = self.charset.iter().position(|x| x == c)? as u64;
            Some(acc * radix + digit)
        })
    }

    pub fn contains(&self, plaintext: &[u8]) -> bool {
        self.index_of(plaintext).is_some()
    }
}

/// Column-`step` reduction: the first 8 digest bytes as a big-endian
/// integer, plus `step`, modulo the domain size.
pub fn reduce(digest: &Digest, step: u32, domain: &ReductionDomain) -> Vec<u8> {
    domain.plaintext_at(reduce_index(digest, step, domain))
}

pub(crate) fn reduce_index(digest: &Digest, step: u32, domain: &ReductionDomain) -> u64 {
    let head = u64::from_be_bytes(digest.0[..8].try_into().unwrap());
    head.wrapping_add(u64::from(step)) % domain.size()
}
