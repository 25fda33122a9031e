//! A vault file: enroll, verify, migrate a user from SHA-1 to bcrypt and
//! export the breach dump an attacker would see.
//!
//!     cargo run --example vault_migration

use hashvault::bcrypt::CostParameter;
use hashvault::vault::{DumpOptions, Scheme, Vault};

fn main() -> hashvault::Result<()> {
    let path = std::env::temp_dir().join("hashvault-example.txt");
    let mut vault = Vault::new(Scheme::Sha1Salted, Some(7));
    vault.enroll("alice", b"123456", &Scheme::Sha1)?;
    vault.enroll("bob", b"123456", &Scheme::Sha1)?;
    vault.enroll("carol", b"123456", &Scheme::Sha1Salted)?;
    vault.save(&path)?;

    let mut vault = Vault::load(&path, Some(8))?;
    println!("alice/123456: {}", vault.verify("alice", b"123456"));
    println!("alice/letmein: {}", vault.verify("alice", b"letmein"));

    vault.migrate("alice", b"123456", &Scheme::Bcrypt(CostParameter::new(8)?))?;
    if let Err(e) = vault.migrate("bob", b"wrong", &Scheme::Sha1Salted) {
        println!("bob not migrated: {e}");
    }
    vault.save(&path)?;
    print!("{}", std::fs::read_to_string(&path)?);

    let dump = vault.export_breach_dump(DumpOptions {
        anonymize: true,
        ..DumpOptions::default()
    })?;
    print!("{}", dump.render());
    Ok(())
}
