//! MFcrypt: derived keys, stored records and ROMix memory use as N grows.
//!
//!     cargo run --example mfcrypt_memory

use std::time::Instant;

use hashvault::mfcrypt::{mfcrypt_instrumented, MfParams, MfcryptRecord};

fn main() -> hashvault::Result<()> {
    let record = MfcryptRecord::create(
        b"pleaseletmein",
        b"SodiumChloride",
        &MfParams::new(10, 2, 64)?,
    )?;
    println!("{record}");

    println!("log_n,stored_blocks,bytes,phase2_mix_calls,seconds");
    for log_n in [8u8, 10, 12, 14] {
        let params = MfParams::new(log_n, 1, 32)?;
        let start = Instant::now();
        let (_, stats) = mfcrypt_instrumented(b"123456", b"salt", &params)?;
        println!(
            "{log_n},{},{},{},{:.4}",
            stats.stored_blocks,
            params.memory_required(),
            stats.phase2_mix_calls,
            start.elapsed().as_secs_f64()
        );
    }

    let capped = MfParams::new(20, 1, 32)?.with_memory_cap(64 << 20);
    println!(
        "N=2^20 under a 64 MiB cap: {}",
        mfcrypt_instrumented(b"x", b"y", &capped).unwrap_err()
    );
    Ok(())
}
