//! MFcrypt: PBKDF2 pre-hash into `p` blocks, a memory-hard ROMix over each
//! block with cost `N`, and a PBKDF2 post-hash keyed by the password and
//! salted with the mixed blocks.
//!
//! The mixer is a SHA-1 compression based [`block_mix`] rather than
//! Salsa20/8, so outputs are not interchangeable with published scrypt
//! vectors.

mod romix;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primitives::pbkdf2_sha1;

pub use romix::{block_mix, romix, romix_instrumented, MixBlock, RomixStats, MF_LEN};

/// Largest accepted `log2 N`.
pub const MAX_LOG_N: u8 = 24;
/// Default memory cap for one MFcrypt evaluation: 2 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 2 << 30;

/// MFcrypt cost parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MfParams {
    log_n: u8,
    p: u32,
    dk_len: usize,
    memory_cap: u64,
}

impl MfParams {
    pub fn new(log_n: u8, p: u32, dk_len: usize) -> Result<Self> {
        if log_n == 0 || log_n > MAX_LOG_N {
            return Err(Error::invalid(format!(
                "log2 N must be in 1..={MAX_LOG_N}, got {log_n}"
            )));
        }
        if p == 0 {
            return Err(Error::invalid("parallelism p must be at least 1"));
        }
        if dk_len == 0 {
            return Err(Error::invalid("dk_len must be at least 1"));
        }
        Ok(MfParams {
            log_n,
            p,
            dk_len,
            memory_cap: DEFAULT_MEMORY_CAP,
        })
    }

    pub fn with_memory_cap(mut self, cap: u64) -> Self {
        self.memory_cap = cap;
        self
    }

    pub fn log_n(&self) -> u8 {
        self.log_n
    }

    /// `N`, the number of blocks stored per ROMix.
    pub fn n(&self) -> u64 {
        1 << self.log_n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dk_len(&self) -> usize {
        self.dk_len
    }

    pub fn memory_cap(&self) -> u64 {
        self.memory_cap
    }

    /// Table memory if all `p` mixes run at once.
    pub fn memory_required(&self) -> u64 {
        self.n() * MF_LEN as u64 * u64::from(self.p)
    }

    fn check_budget(&self) -> Result<()> {
        if self.memory_required() > self.memory_cap {
            return Err(Error::MemoryBudget {
                needed: self.memory_required(),
                cap: self.memory_cap,
            });
        }
        Ok(())
    }
}

/// First pipeline step: `PBKDF2(P, S, 1, p * MF_LEN)` split into blocks.
pub fn prehash(password: &[u8], salt: &[u8], params: &MfParams) -> Result<Vec<MixBlock>> {
    let bytes = pbkdf2_sha1(password, salt, 1, params.p as usize * MF_LEN)?;
    Ok(bytes
        .chunks_exact(MF_LEN)
        .map(|c| MixBlock::from_slice(c).unwrap())
        .collect())
}

/// Last pipeline step: `PBKDF2(P, B0 || ... || Bp-1, 1, dk_len)`.
pub fn posthash(password: &[u8], blocks: &[MixBlock], dk_len: usize) -> Result<Vec<u8>> {
    let salt: Vec<u8> = blocks.iter().flat_map(|b| b.0).collect();
    pbkdf2_sha1(password, &salt, 1, dk_len)
}

pub fn mfcrypt(password: &[u8], salt: &[u8], params: &MfParams) -> Result<Vec<u8>> {
    mfcrypt_instrumented(password, salt, params).map(|(dk, _)| dk)
}

/// [`mfcrypt`] that also returns the ROMix counters, summed over the `p`
/// blocks except for the per-mix peaks, which are maxima.
pub fn mfcrypt_instrumented(
    password: &[u8],
    salt: &[u8],
    params: &MfParams,
) -> Result<(Vec<u8>, RomixStats)> {
    params.check_budget()?;
    let mut blocks = prehash(password, salt, params)?;
    let n = params.n();
    let stats = blocks
        .par_iter_mut()
        .map(|b| {
            let mut stats = RomixStats::default();
            *b = romix_instrumented(b, n, &mut stats);
            stats
        })
        .reduce(RomixStats::default, |a, b| RomixStats {
            stored_blocks: a.stored_blocks.max(b.stored_blocks),
            peak_live_blocks: a.peak_live_blocks.max(b.peak_live_blocks),
            phase1_mix_calls: a.phase1_mix_calls + b.phase1_mix_calls,
            phase2_mix_calls: a.phase2_mix_calls + b.phase2_mix_calls,
        });
    Ok((posthash(password, &blocks, params.dk_len)?, stats))
}

/// A stored MFcrypt hash: `$mfc$N=<log2 N>,p=<p>$<hex salt>$<hex dk>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MfcryptRecord {
    pub log_n: u8,
    pub p: u32,
    pub salt: Vec<u8>,
    pub dk: Vec<u8>,
}

impl MfcryptRecord {
    pub fn create(password: &[u8], salt: &[u8], params: &MfParams) -> Result<Self> {
        Ok(MfcryptRecord {
            log_n: params.log_n,
            p: params.p,
            salt: salt.to_vec(),
            dk: mfcrypt(password, salt, params)?,
        })
    }

    pub fn params(&self) -> Result<MfParams> {
        MfParams::new(self.log_n, self.p, self.dk.len())
    }

    pub fn verify(&self, password: &[u8]) -> bool {
        match self
            .params()
            .and_then(|p| mfcrypt(password, &self.salt, &p))
        {
            Ok(dk) => crate::ct_eq(&dk, &self.dk),
            Err(_) => false,
        }
    }
}

impl fmt::Display for MfcryptRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "$mfc$N={},p={}${}${}",
            self.log_n,
            self.p,
            hex::encode(&self.salt),
            hex::encode(&self.dk)
        )
    }
}

impl FromStr for MfcryptRecord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix("$mfc$")
            .ok_or_else(|| Error::parse("mfcrypt record must start with $mfc$"))?;
        let mut parts = rest.split('$');
        let (Some(params), Some(salt), Some(dk), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::parse(
                "mfcrypt record needs params, salt and key fields",
            ));
        };
        let (log_n, p) = parse_np(params)?;
        let salt = hex::decode(salt).map_err(|e| Error::parse(format!("salt: {e}")))?;
        let dk = hex::decode(dk).map_err(|e| Error::parse(format!("key: {e}")))?;
        MfParams::new(log_n, p, dk.len()).map_err(|e| Error::parse(e.to_string()))?;
        Ok(MfcryptRecord { log_n, p, salt, dk })
    }
}

fn parse_np(text: &str) -> Result<(u8, u32)> {
    let (n, p) = text
        .split_once(',')
        .ok_or_else(|| Error::parse("expected N=<log2 N>,p=<p>"))?;
    let log_n = n
        .strip_prefix("N=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::parse(format!("bad N field `{n}`")))?;
    let p = p
        .strip_prefix("p=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::parse(format!("bad p field `{p}`")))?;
    Ok((log_n, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(MfParams::new(0, 1, 32).is_err());
        assert!(MfParams::new(25, 1, 32).is_err());
        assert!(MfParams::new(24, 1, 32).is_ok());
        assert!(MfParams::new(4, 0, 32).is_err());
        assert!(MfParams::new(4, 1, 0).is_err());
        assert_eq!(MfParams::new(10, 1, 32).unwrap().n(), 1024);
    }

    #[test]
    fn memory_guard() {
        let params = MfParams::new(10, 2, 16)
            .unwrap()
            .with_memory_cap(1024 * 128);
        assert!(matches!(
            mfcrypt(b"pw", b"salt", &params),
            Err(Error::MemoryBudget {
                needed: 262_144,
                cap: 131_072
            })
        ));
        let ok = params.with_memory_cap(2 * 1024 * 128);
        assert!(mfcrypt(b"pw", b"salt", &ok).is_ok());
    }

    #[test]
    fn pinned_vectors() {
        // tests/oracle/oracles.py
        let p1 = MfParams::new(1, 1, 16).unwrap();
        assert_eq!(
            hex::encode(mfcrypt(b"password", b"salt", &p1).unwrap()),
            "61619877225d8271c9fcb3cca2009964"
        );
        let p2 = MfParams::new(10, 2, 64).unwrap();
        assert_eq!(
            hex::encode(mfcrypt(b"pleaseletmein", b"SodiumChloride", &p2).unwrap()),
            "f255d79f3126e16fe1a33c55dd447d4e1c2505ba85786bddf1f271905d0f11be\
             2adc0ded292a5e18934e35ce167390a937f2c8ff30662e4f833a3e5e0caad7d2"
        );
    }

    #[test]
    fn p1_hand_unrolled() {
        let params = MfParams::new(1, 1, 16).unwrap();
        let b = pbkdf2_sha1(b"pw", b"na", 1, MF_LEN).unwrap();
        let mixed = romix(&MixBlock::from_slice(&b).unwrap(), 2);
        let want = pbkdf2_sha1(b"pw", &mixed.0, 1, 16).unwrap();
        assert_eq!(mfcrypt(b"pw", b"na", &params).unwrap(), want);
    }

    #[test]
    fn dk_len_only_slices() {
        let long = mfcrypt(b"pw", b"salt", &MfParams::new(4, 2, 64).unwrap()).unwrap();
        let short = mfcrypt(b"pw", b"salt", &MfParams::new(4, 2, 32).unwrap()).unwrap();
        assert_eq!(&long[..32], &short[..]);
    }

    #[test]
    fn record_round_trip() {
        let params = MfParams::new(4, 1, 32).unwrap();
        let rec = MfcryptRecord::create(b"123456", &[7; 16], &params).unwrap();
        let text = rec.to_string();
        assert!(text.starts_with("$mfc$N=4,p=1$0707"));
        let back: MfcryptRecord = text.parse().unwrap();
        assert_eq!(back, rec);
        assert!(back.verify(b"123456"));
        assert!(!back.verify(b"123457"));
    }

    #[test]
    fn malformed_records() {
        for bad in [
            "$mfc$N=4$00$00",
            "$mfc$N=4,p=1$00",
            "$mfc$N=x,p=1$00$00",
            "$mfc$N=4,p=0$00$00",
            "$mfc$N=4,p=1$0g$00",
            "$mfc$N=4,p=1$00$",
            "$scrypt$N=4,p=1$00$00",
        ] {
            assert!(bad.parse::<MfcryptRecord>().is_err(), "{bad}");
        }
    }
}
