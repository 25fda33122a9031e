//! Single-core hashes per second for each storage scheme.
//! `HASHVAULT_BENCH_SECONDS` sets the time per scheme (default 1).
//!
//!     cargo run --release --example throughput

use hashvault::attack::{throughput_bench, BenchConfig};
use hashvault::bcrypt::CostParameter;
use hashvault::mfcrypt::MfParams;
use hashvault::vault::Scheme;

fn main() -> hashvault::Result<()> {
    let config = BenchConfig::from_env()?;
    let schemes = [
        Scheme::Sha1,
        Scheme::Sha1Salted,
        Scheme::Bcrypt(CostParameter::new(8)?),
        Scheme::Bcrypt(CostParameter::new(10)?),
        Scheme::Mfcrypt(MfParams::new(10, 1, 32)?),
        Scheme::Mfcrypt(MfParams::new(14, 1, 32)?),
    ];
    println!("scheme,hashes_per_second");
    for s in &schemes {
        let r = throughput_bench(s, config)?;
        println!("{s},{:.2}", r.median_rate);
    }
    Ok(())
}
