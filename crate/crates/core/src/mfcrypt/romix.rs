use std::ops::BitXorAssign;

use crate::primitives::{compress, BLOCK_LEN, IV};

/// Width of one mixed block in bytes.
pub const MF_LEN: usize = 128;
const HALF: usize = MF_LEN / 2;

/// One `MF_LEN`-byte block of the memory-hard mix.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MixBlock(pub [u8; MF_LEN]);

impl MixBlock {
    pub fn zeroed() -> Self {
        MixBlock([0; MF_LEN])
    }

    pub fn from_slice(bytes: &[u8]) -> Option<Self> {
        bytes.try_into().ok().map(MixBlock)
    }

    pub fn as_bytes(&self) -> &[u8; MF_LEN] {
        &self.0
    }

    /// Little-endian integer from the last 8 bytes.
    pub fn integerify(&self) -> u64 {
        u64::from_le_bytes(self.0[MF_LEN - 8..].try_into().unwrap())
    }
}

impl std::fmt::Debug for MixBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MixBlock({})", hex::encode(self.0))
    }
}

impl BitXorAssign<&MixBlock> for MixBlock {
    fn bitxor_assign(&mut self, rhs: &MixBlock) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a ^= b;
        }
    }
}

/// 64 bytes to 64 bytes: four SHA-1 compressions of the chunk under IVs
/// that differ in their first word, concatenated and cut to 64 bytes.
fn wide_hash(chunk: &[u8; BLOCK_LEN]) -> [u8; HALF] {
    let mut wide = [0u8; 80];
    for (k, out) in wide.chunks_exact_mut(20).enumerate() {
        let mut state = IV;
        state[0] ^= k as u32;
        compress(&mut state, chunk);
        for (dst, word) in out.chunks_exact_mut(4).zip(state) {
            dst.copy_from_slice(&word.to_be_bytes());
        }
    }
    wide[..HALF].try_into().unwrap()
}

fn xor_half(a: &[u8], b: &[u8]) -> [u8; HALF] {
    let mut out = [0u8; HALF];
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x ^ y;
    }
    out
}

/// The wide-block mixer used as `H` inside ROMix.
///
/// With halves `B0 || B1`: `Y0 = h(B1 ^ B0)`, `Y1 = h(Y0 ^ B1)`, output
/// `Y0 || Y1`, where `h` is the SHA-1-compression based 64-byte hash.
pub fn block_mix(block: &MixBlock) -> MixBlock {
    let (b0, b1) = block.0.split_at(HALF);
    let y0 = wide_hash(&xor_half(b1, b0));
    let y1 = wide_hash(&xor_half(&y0, b1));
    let mut out = [0u8; MF_LEN];
    out[..HALF].copy_from_slice(&y0);
    out[HALF..].copy_from_slice(&y1);
    MixBlock(out)
}

/// Counters collected by [`romix_instrumented`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RomixStats {
    /// Blocks written to the lookup table in phase 1.
    pub stored_blocks: u64,
    /// Most blocks alive at once: the table plus the running block.
    pub peak_live_blocks: u64,
    pub phase1_mix_calls: u64,
    pub phase2_mix_calls: u64,
}

/// Sequential memory-hard mix over `n` stored blocks. `n` must be a power
/// of two.
pub fn romix(block: &MixBlock, n: u64) -> MixBlock {
    romix_instrumented(block, n, &mut RomixStats::default())
}

pub fn romix_instrumented(block: &MixBlock, n: u64, stats: &mut RomixStats) -> MixBlock {
    assert!(n.is_power_of_two(), "romix cost must be a power of two");
    let mut table: Vec<MixBlock> = Vec::with_capacity(n as usize);
    let mut x = *block;
    for _ in 0..n {
        table.push(x);
        x = block_mix(&x);
        stats.phase1_mix_calls += 1;
    }
    stats.stored_blocks = stats.stored_blocks.max(table.len() as u64);
    stats.peak_live_blocks = stats.peak_live_blocks.max(table.len() as u64 + 1);

    let mask = n - 1;
    for _ in 0..n {
        let j = (x.integerify() & mask) as usize;
        x ^= &table[j];
        x = block_mix(&x);
        stats.phase2_mix_calls += 1;
    }
    x
}
