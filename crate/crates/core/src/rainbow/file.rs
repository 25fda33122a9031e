//! `RBT1` table files, little-endian:
//!
//! ```text
//! magic "RBT1" | version u16 | charset_len u8 | charset | plaintext_len u8
//! | chain_length u32 | chain_count u64 | salt_len u8 | salt
//! | chain_count x (start, end) | crc32 u32
//! ```
//!
//! Records are sorted by endpoint. The CRC covers every preceding byte.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use super::domain::ReductionDomain;
use super::table::{ChainRecord, RainbowTable, TableParams};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"RBT1";
pub const FORMAT_VERSION: u16 = 1;

impl RainbowTable {
    pub fn to_bytes(&self) -> Vec<u8> {
        let params = self.params();
        let domain = &params.domain;
        let mut out = Vec::with_capacity(
            32 + domain.charset().len() + params.salt.len() + self.table_memory_cost() as usize,
        );
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.push(domain.charset().len() as u8);
        out.extend_from_slice(domain.charset());
        out.push(domain.length());
        out.extend_from_slice(&params.chain_length.to_le_bytes());
        out.extend_from_slice(&(self.chain_count() as u64).to_le_bytes());
        out.push(params.salt.len() as u8);
        out.extend_from_slice(&params.salt);
        for chain in self.chains() {
            out.extend_from_slice(&chain.start);
            out.extend_from_slice(&chain.end);
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> io::Result<()> {
        writer.write_all(&self.to_bytes())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    /// Parses a table file, rejecting bad magic, version, CRC, record order
    /// or out-of-domain plaintexts.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 {
            return Err(Error::CorruptTable("file too short".into()));
        }
        let (body, crc_bytes) = bytes.split_at(bytes.len() - 4);
        let mut cur = Cursor { buf: body, pos: 0 };

        if cur.take(4)? != MAGIC {
            return Err(Error::CorruptTable("bad magic".into()));
        }
        let stored_crc = u32::from_le_bytes(crc_bytes.try_into().unwrap());
        if crc32fast::hash(body) != stored_crc {
            return Err(Error::CorruptTable("CRC mismatch".into()));
        }
        let version = u16::from_le_bytes(cur.take(2)?.try_into().unwrap());
        if version != FORMAT_VERSION {
            return Err(Error::CorruptTable(format!(
                "unsupported version {version}"
            )));
        }
        let charset_len = usize::from(cur.take(1)?[0]);
        let charset = cur.take(charset_len)?.to_vec();
        let plaintext_len = cur.take(1)?[0];
        let chain_length = u32::from_le_bytes(cur.take(4)?.try_into().unwrap());
        let chain_count = u64::from_le_bytes(cur.take(8)?.try_into().unwrap());
        let salt_len = usize::from(cur.take(1)?[0]);
        let salt = cur.take(salt_len)?.to_vec();

        let domain = ReductionDomain::new(charset, plaintext_len)
            .map_err(|e| Error::CorruptTable(e.to_string()))?;
        let params = TableParams::with_salt(domain, chain_length, salt)
            .map_err(|e| Error::CorruptTable(e.to_string()))?;

        let width = usize::from(plaintext_len);
        let expected = chain_count
            .checked_mul(2 * width as u64)
            .filter(|&n| n == cur.remaining() as u64)
            .ok_or_else(|| Error::CorruptTable("record section has the wrong size".into()))?;
        let mut chains = Vec::with_capacity((expected / (2 * width as u64)) as usize);
        for _ in 0..chain_count {
            let start = cur.take(width)?.to_vec();
            let end = cur.take(width)?.to_vec();
            if !params.domain.contains(&start) || !params.domain.contains(&end) {
                return Err(Error::CorruptTable(
                    "record outside the table domain".into(),
                ));
            }
            if chains
                .last()
                .is_some_and(|prev: &ChainRecord| prev.end > end)
            {
                return Err(Error::CorruptTable("records not sorted by endpoint".into()));
            }
            chains.push(ChainRecord { start, end });
        }
        Ok(RainbowTable::from_sorted(params, chains))
    }

    pub fn read_from<R: Read>(mut reader: R) -> Result<Self> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| Error::CorruptTable("truncated file".into()))?;
        let slice = &self.buf[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }
}
