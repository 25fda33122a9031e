use super::consts::{INIT_P, INIT_S};
use crate::error::{Error, Result};

pub const BLOCK_LEN: usize = 8;
/// Longest key the Blowfish schedule accepts, in bytes.
pub const MAX_KEY_LEN: usize = 72;

/// Blowfish key schedule: eighteen subkeys and four 256-entry S-boxes.
#[derive(Clone, PartialEq, Eq)]
pub struct BlowfishState {
    p: [u32; 18],
    s: [[u32; 256]; 4],
}

impl std::fmt::Debug for BlowfishState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlowfishState")
            .field("p", &self.p)
            .finish_non_exhaustive()
    }
}

impl Default for BlowfishState {
    fn default() -> Self {
        Self::init()
    }
}

/// Cycles through `data` as big-endian 32-bit words, wrapping at the end.
struct WordStream<'a> {
    data: &'a [u8],
    pos: usize,
}

impl WordStream<'_> {
    fn next_word(&mut self) -> u32 {
        let mut w = 0u32;
        for _ in 0..4 {
            if self.pos >= self.data.len() {
                self.pos = 0;
            }
            w = (w << 8) | u32::from(self.data[self.pos]);
            self.pos += 1;
        }
        w
    }
}

impl BlowfishState {
    /// The initial state: hexadecimal digits of pi.
    pub fn init() -> Self {
        BlowfishState {
            p: INIT_P,
            s: INIT_S,
        }
    }

    /// Standard Blowfish key setup: `init` followed by an unsalted
    /// expansion.
    pub fn with_key(key: &[u8]) -> Result<Self> {
        let mut state = Self::init();
        state.expand_key(&[0; 16], key)?;
        Ok(state)
    }

    pub fn p_array(&self) -> &[u32; 18] {
        &self.p
    }

    pub fn s_boxes(&self) -> &[[u32; 256]; 4] {
        &self.s
    }

    #[inline(always)]
    fn round(&self, x: u32) -> u32 {
        let [a, b, c, d] = x.to_be_bytes();
        (self.s[0][usize::from(a)].wrapping_add(self.s[1][usize::from(b)])
            ^ self.s[2][usize::from(c)])
        .wrapping_add(self.s[3][usize::from(d)])
    }

    pub fn encrypt_words(&self, mut l: u32, mut r: u32) -> (u32, u32) {
        for i in (0..16).step_by(2) {
            l ^= self.p[i];
            r ^= self.round(l);
            r ^= self.p[i + 1];
            l ^= self.round(r);
        }
        l ^= self.p[16];
        r ^= self.p[17];
        (r, l)
    }

    pub fn decrypt_words(&self, mut l: u32, mut r: u32) -> (u32, u32) {
        for i in (2..=16).rev().step_by(2) {
            l ^= self.p[i + 1];
            r ^= self.round(l);
            r ^= self.p[i];
            l ^= self.round(r);
        }
        l ^= self.p[1];
        r ^= self.p[0];
        (r, l)
    }

    pub fn encrypt_block(&self, block: [u8; BLOCK_LEN]) -> [u8; BLOCK_LEN] {
        let (l, r) = split(block);
        join(self.encrypt_words(l, r))
    }

    pub fn decrypt_block(&self, block: [u8; BLOCK_LEN]) -> [u8; BLOCK_LEN] {
        let (l, r) = split(block);
        join(self.decrypt_words(l, r))
    }

    /// Salted key expansion. The key is XORed cyclically into the subkeys,
    /// then every subkey and S-box entry is rewritten by encrypting a running
    /// block that absorbs the salt halves in turn. An all-zero salt gives the
    /// plain Blowfish key schedule.
    pub fn expand_key(&mut self, salt: &[u8; 16], key: &[u8]) -> Result<()> {
        if key.is_empty() || key.len() > MAX_KEY_LEN {
            return Err(Error::invalid(format!(
                "blowfish key must be 1..={MAX_KEY_LEN} bytes, got {}",
                key.len()
            )));
        }
        let mut key_words = WordStream { data: key, pos: 0 };
        for p in self.p.iter_mut() {
            *p ^= key_words.next_word();
        }

        let mut salt_words = WordStream { data: salt, pos: 0 };
        let (mut l, mut r) = (0u32, 0u32);
        for i in (0..18).step_by(2) {
            l ^= salt_words.next_word();
            r ^= salt_words.next_word();
            (l, r) = self.encrypt_words(l, r);
            self.p[i] = l;
            self.p[i + 1] = r;
        }
        for sbox in 0..4 {
            for i in (0..256).step_by(2) {
                l ^= salt_words.next_word();
                r ^= salt_words.next_word();
                (l, r) = self.encrypt_words(l, r);
                self.s[sbox][i] = l;
                self.s[sbox][i + 1] = r;
            }
        }
        Ok(())
    }
}

fn split(block: [u8; BLOCK_LEN]) -> (u32, u32) {
    (
        u32::from_be_bytes(block[..4].try_into().unwrap()),
        u32::from_be_bytes(block[4..].try_into().unwrap()),
    )
}

fn join((l, r): (u32, u32)) -> [u8; BLOCK_LEN] {
    let mut out = [0u8; BLOCK_LEN];
    out[..4].copy_from_slice(&l.to_be_bytes());
    out[4..].copy_from_slice(&r.to_be_bytes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h8(s: &str) -> [u8; 8] {
        hex::decode(s).unwrap().try_into().unwrap()
    }

    #[test]
    fn init_state_is_pi() {
        let s = BlowfishState::init();
        assert_eq!(
            &s.p_array()[..4],
            &[0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344]
        );
        assert_eq!(&s.p_array()[16..], &[0x9216d5d9, 0x8979fb1b]);
        assert_eq!(s.s_boxes()[0][0], 0xd1310ba6);
        assert_eq!(s.s_boxes()[3][255], 0x3ac372e6);
        assert_eq!(
            18 + s.s_boxes().iter().map(|b| b.len()).sum::<usize>(),
            1042
        );
    }

    // Eric Young's published Blowfish ECB vectors.
    #[test]
    fn reference_vectors() {
        let cases = [
            ("0000000000000000", "0000000000000000", "4ef997456198dd78"),
            ("ffffffffffffffff", "ffffffffffffffff", "51866fd5b85ecb8a"),
            ("3000000000000000", "1000000000000001", "7d856f9a613063f2"),
            ("0123456789abcdef", "1111111111111111", "61f9c3802281b096"),
            ("fedcba9876543210", "0123456789abcdef", "0aceab0fc6a0a28d"),
        ];
        for (key, plain, cipher) in cases {
            let st = BlowfishState::with_key(&hex::decode(key).unwrap()).unwrap();
            assert_eq!(st.encrypt_block(h8(plain)), h8(cipher), "key {key}");
            assert_eq!(st.decrypt_block(h8(cipher)), h8(plain), "key {key}");
        }
    }

    #[test]
    fn key_length_bounds() {
        let mut st = BlowfishState::init();
        assert!(st.expand_key(&[0; 16], b"").is_err());
        assert!(st.expand_key(&[0; 16], &[1; 73]).is_err());
        assert!(st.expand_key(&[0; 16], &[1; 72]).is_ok());
    }

    #[test]
    fn expansion_is_progressive() {
        let mut once = BlowfishState::init();
        once.expand_key(&[0; 16], b"key").unwrap();
        let mut twice = once.clone();
        twice.expand_key(&[0; 16], b"key").unwrap();
        assert_ne!(once, twice);
    }

    #[test]
    fn salt_changes_schedule() {
        let mut a = BlowfishState::init();
        let mut b = BlowfishState::init();
        a.expand_key(&[0; 16], b"key").unwrap();
        let mut salt = [0u8; 16];
        salt[15] = 1;
        b.expand_key(&salt, b"key").unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn distinct_blocks_distinct_ciphertexts() {
        let st = BlowfishState::with_key(b"some key").unwrap();
        assert_ne!(
            st.encrypt_block(*b"block-01"),
            st.encrypt_block(*b"block-02")
        );
    }
}
