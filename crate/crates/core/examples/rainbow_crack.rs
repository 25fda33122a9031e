//! Build a rainbow table over 4-digit PINs, save it, load it back and
//! crack a dump of unsalted SHA-1 PIN hashes.
//!
//!     cargo run --example rainbow_crack -- [chain_length] [chains]

use hashvault::attack::rainbow_attack;
use hashvault::primitives::sha1_digest;
use hashvault::rainbow::{build_table, RainbowTable, ReductionDomain, TableParams};
use hashvault::vault::{DumpOptions, Scheme, Vault};

fn main() -> hashvault::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args
        .next()
        .map_or(100, |a| a.parse().expect("chain length"));
    let m: u64 = args.next().map_or(200, |a| a.parse().expect("chain count"));

    let domain = ReductionDomain::digits(4)?;
    let table = build_table(TableParams::new(domain.clone(), n)?, m, 1)?;
    let path = std::env::temp_dir().join("pins.rbt");
    table.save(&path)?;
    let table = RainbowTable::load(&path)?;
    println!(
        "n={n} m={m} file_bytes={} distinct_endpoints={} coverage={:.4}",
        table.to_bytes().len(),
        table.distinct_endpoints(),
        table.coverage()
    );

    let r = table.lookup(&sha1_digest(b"2017"));
    println!(
        "lookup 2017: {:?} after {} steps, {} false alarms",
        r.plaintext
            .map(|p| String::from_utf8_lossy(&p).into_owned()),
        r.steps_examined,
        r.false_alarms
    );

    let mut vault = Vault::new(Scheme::Sha1, Some(1));
    for i in 0..200u64 {
        vault.enroll(
            &format!("u{i}"),
            &domain.plaintext_at(i * 37 % 10_000),
            &Scheme::Sha1,
        )?;
    }
    let report = rainbow_attack(&vault.export_breach_dump(DumpOptions::default())?, &table)?;
    print!("{}", report.to_key_value());
    Ok(())
}
