//! Popular passwords leak through unsalted verifiers: the multiplicity
//! histogram of a dump mirrors the password popularity of a Zipf corpus.
//!
//!     cargo run --example zipf_duplicates -- [users] [exponent]

use hashvault::attack::{
    dictionary_attack, duplicate_analysis, AttackLimits, ZipfCorpus, ZipfSpec,
};
use hashvault::vault::{DumpOptions, Scheme, Vault};

fn main() -> hashvault::Result<()> {
    let mut args = std::env::args().skip(1);
    let users = args
        .next()
        .map_or(10_000, |a| a.parse().expect("user count"));
    let exponent = args.next().map_or(1.0, |a| a.parse().expect("exponent"));
    let corpus = ZipfCorpus::generate(ZipfSpec {
        users,
        exponent,
        seed: 1,
        ..ZipfSpec::default()
    })?;

    for scheme in [Scheme::Sha1, Scheme::Sha1Salted] {
        let mut vault = Vault::new(scheme, Some(1));
        for (user, pw) in &corpus.users {
            vault.enroll(user, pw.as_bytes(), &scheme)?;
        }
        let dump = vault.export_breach_dump(DumpOptions::default())?;
        let h = duplicate_analysis(&dump);
        println!(
            "{scheme}: {} distinct verifiers, top multiplicity {}",
            h.distinct_verifiers(),
            h.top_multiplicity()
        );
        let top10 = corpus.wordlist_top(10)?;
        let report = dictionary_attack(&dump, &top10, AttackLimits::unlimited());
        println!(
            "  top-10 wordlist cracks {} users with {} hashes",
            report.cracked_count(),
            report.hash_ops
        );
        if scheme == Scheme::Sha1 {
            let buckets: Vec<_> = h.buckets.iter().rev().take(5).collect();
            println!("  largest buckets (multiplicity, verifiers): {buckets:?}");
        }
    }
    let (top, count) = corpus.top_password();
    println!(
        "generator: `{top}` chosen by {count} users, {} distinct passwords",
        corpus.distinct_passwords()
    );
    Ok(())
}
