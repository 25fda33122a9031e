use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// SHA-1 block size in bytes.
pub const BLOCK_LEN: usize = 64;
/// SHA-1 digest size in bytes.
pub const DIGEST_LEN: usize = 20;

/// Initial hash value H(0).
pub const IV: [u32; 5] = [0x67452301, 0xefcdab89, 0x98badcfe, 0x10325476, 0xc3d2e1f0];

const K: [u32; 4] = [0x5a827999, 0x6ed9eba1, 0x8f1bbcdc, 0xca62c1d6];

/// A 160-bit SHA-1 message digest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; DIGEST_LEN]);

impl Digest {
    pub fn as_bytes(&self) -> &[u8; DIGEST_LEN] {
        &self.0
    }

    /// Lowercase hex, 40 characters.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let arr: [u8; DIGEST_LEN] = bytes
            .try_into()
            .map_err(|_| Error::parse(format!("digest must be 20 bytes, got {}", bytes.len())))?;
        Ok(Digest(arr))
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl FromStr for Digest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::parse(format!("bad digest hex: {e}")))?;
        Digest::from_slice(&bytes)
    }
}

impl AsRef<[u8]> for Digest {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// A message after SHA-1 padding: `message || 0x80 || 0* || bitlen_be64`,
/// a whole number of 64-byte blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageBlockStream {
    padded: Vec<u8>,
    message_len: usize,
}

impl MessageBlockStream {
    pub fn blocks(&self) -> impl ExactSizeIterator<Item = &[u8; BLOCK_LEN]> + '_ {
        self.padded
            .chunks_exact(BLOCK_LEN)
            .map(|c| c.try_into().expect("chunks are block sized"))
    }

    pub fn block_count(&self) -> usize {
        self.padded.len() / BLOCK_LEN
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.padded
    }

    pub fn message_len(&self) -> usize {
        self.message_len
    }

    /// Strips the padding again, recovering the original message from the
    /// length field.
    pub fn unpad(&self) -> Result<&[u8]> {
        let n = self.padded.len();
        if n == 0 || !n.is_multiple_of(BLOCK_LEN) {
            return Err(Error::parse(
                "padded length is not a whole number of blocks",
            ));
        }
        let bits = u64::from_be_bytes(self.padded[n - 8..].try_into().unwrap());
        if bits % 8 != 0 {
            return Err(Error::parse("bit length is not a whole number of octets"));
        }
        let len = usize::try_from(bits / 8).map_err(|_| Error::parse("length overflow"))?;
        if len + 9 > n || self.padded[len] != 0x80 {
            return Err(Error::parse("padding marker missing"));
        }
        Ok(&self.padded[..len])
    }
}

/// Pads `message` as FIPS 180-4 prescribes.
pub fn pad_message(message: &[u8]) -> MessageBlockStream {
    let total = (message.len() + 9).div_ceil(BLOCK_LEN) * BLOCK_LEN;
    let mut padded = Vec::with_capacity(total);
    padded.extend_from_slice(message);
    padded.push(0x80);
    padded.resize(total - 8, 0);
    padded.extend_from_slice(&((message.len() as u64).wrapping_mul(8)).to_be_bytes());
    MessageBlockStream {
        padded,
        message_len: message.len(),
    }
}

/// The SHA-1 compression function: folds one 512-bit block into `state`.
pub fn compress(state: &mut [u32; 5], block: &[u8; BLOCK_LEN]) {
    let mut w = [0u32; 80];
    for (t, word) in block.chunks_exact(4).enumerate() {
        w[t] = u32::from_be_bytes(word.try_into().unwrap());
    }
    for t in 16..80 {
        w[t] = (w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16]).rotate_left(1);
    }

    let [mut a, mut b, mut c, mut d, mut e] = *state;
    for (t, &wt) in w.iter().enumerate() {
        let (f, k) = match t {
            0..=19 => ((b & c) | (!b & d), K[0]),
            20..=39 => (b ^ c ^ d, K[1]),
            40..=59 => ((b & c) | (b & d) | (c & d), K[2]),
            _ => (b ^ c ^ d, K[3]),
        };
        let temp = a
            .rotate_left(5)
            .wrapping_add(f)
            .wrapping_add(e)
            .wrapping_add(k)
            .wrapping_add(wt);
        e = d;
        d = c;
        c = b.rotate_left(30);
        b = a;
        a = temp;
    }

    state[0] = state[0].wrapping_add(a);
    state[1] = state[1].wrapping_add(b);
    state[2] = state[2].wrapping_add(c);
    state[3] = state[3].wrapping_add(d);
    state[4] = state[4].wrapping_add(e);
}

/// Streaming SHA-1.
#[derive(Clone)]
pub struct Sha1 {
    state: [u32; 5],
    buffer: [u8; BLOCK_LEN],
    buffered: usize,
    length: u64,
}

impl Default for Sha1 {
    fn default() -> Self {
        Self::new()
    }
}

impl Sha1 {
    pub fn new() -> Self {
        Sha1 {
            state: IV,
            buffer: [0; BLOCK_LEN],
            buffered: 0,
            length: 0,
        }
    }

    pub fn update(&mut self, mut data: &[u8]) {
        self.length = self.length.wrapping_add(data.len() as u64);

        if self.buffered > 0 {
            let take = (BLOCK_LEN - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered < BLOCK_LEN {
                return;
            }
            let block = self.buffer;
            compress(&mut self.state, &block);
            self.buffered = 0;
        }

        let mut chunks = data.chunks_exact(BLOCK_LEN);
        for block in &mut chunks {
            compress(&mut self.state, block.try_into().unwrap());
        }
        let rest = chunks.remainder();
        self.buffer[..rest.len()].copy_from_slice(rest);
        self.buffered = rest.len();
    }

    pub fn finalize(mut self) -> Digest {
        let bit_len = self.length.wrapping_mul(8);
        self.buffer[self.buffered] = 0x80;
        self.buffer[self.buffered + 1..].fill(0);
        if self.buffered >= BLOCK_LEN - 8 {
            let block = self.buffer;
            compress(&mut self.state, &block);
            self.buffer = [0; BLOCK_LEN];
        }
        self.buffer[BLOCK_LEN - 8..].copy_from_slice(&bit_len.to_be_bytes());
        let block = self.buffer;
        compress(&mut self.state, &block);

        let mut out = [0u8; DIGEST_LEN];
        for (chunk, word) in out.chunks_exact_mut(4).zip(self.state) {
            chunk.copy_from_slice(&word.to_be_bytes());
        }
        Digest(out)
    }
}

/// One-shot SHA-1 of `message`.
pub fn sha1_digest(message: &[u8]) -> Digest {
    let mut h = Sha1::new();
    h.update(message);
    h.finalize()
}
