//! One runnable experiment per storage argument, each reporting its
//! measurements as `key=value` lines and a pass flag.
//!
//! Keys starting with `time.` hold machine-dependent values; every other
//! line is a pure function of the options.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use super::analysis::{duplicate_analysis, salt_blowup_experiment, SaltBlowupConfig};
use super::bench::{cost_scaling_experiment, throughput_bench, BenchConfig};
use super::corpus::{Wordlist, ZipfCorpus, ZipfSpec};
use super::cracking::{dictionary_attack, rainbow_attack, AttackLimits};
use crate::bcrypt::{eksblowfish_setup_observed, CostParameter};
use crate::error::{Error, Result};
use crate::mfcrypt::{mfcrypt, romix, romix_instrumented, MfParams, MixBlock, RomixStats, MF_LEN};
use crate::primitives::{pbkdf2_sha1, sha1_digest, Sha1};
use crate::rainbow::{build_table, ReductionDomain, TableParams};
use crate::vault::{DumpOptions, Scheme, Vault};

pub const NAMES: &[&str] = &[
    "golden",
    "rainbow-oracle",
    "endpoint-law",
    "salt-blowup",
    "cost-law",
    "memory-law",
    "pipeline",
    "throughput",
    "duplicates",
    "breach-drill",
];

#[derive(Clone, Debug)]
pub struct ExperimentOptions {
    pub seed: u64,
    pub bench: BenchConfig,
    /// Time budget of the bcrypt attack in the breach drill.
    pub drill_budget: Duration,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            seed: 2017,
            bench: BenchConfig::default(),
            drill_budget: Duration::from_secs(20),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub values: Vec<(String, String)>,
    pub passed: bool,
}

impl Outcome {
    fn new(name: &'static str) -> Self {
        Outcome {
            name,
            values: Vec::new(),
            passed: true,
        }
    }

    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push((key.into(), value.to_string()));
    }

    fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_key_value(&self) -> String {
        let mut out = format!("experiment={}\n", self.name);
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k}={v}");
        }
        let _ = writeln!(out, "passed={}", self.passed);
        out
    }
}

pub fn run(name: &str, options: &ExperimentOptions) -> Result<Outcome> {
    match name {
        "golden" => golden(),
        "rainbow-oracle" => rainbow_oracle(options.seed),
        "endpoint-law" => endpoint_law(options.seed),
        "salt-blowup" => salt_blowup(options.seed),
        "cost-law" => cost_law(),
        "memory-law" => memory_law(),
        "pipeline" => pipeline(),
        "throughput" => throughput(options.bench),
        "duplicates" => duplicates(options.seed),
        "breach-drill" => breach_drill(options.seed, options.drill_budget),
        other => Err(Error::invalid(format!(
            "unknown experiment `{other}` (expected one of {})",
            NAMES.join(", ")
        ))),
    }
}

const GOLDEN: [(&str, &str); 4] = [
    ("01", "5a44cf4f2b0f2bfc7da6f386481f6afbc8aff73f"),
    ("10", "ac0e191df76d3714cb4e2c2659d51753775662d6"),
    ("11", "3cf621ead5cc3885a4a5caef840aad7404bdee81"),
    ("00", "b388959b842429b18180899f7b101cf7ed8667db"),
];

/// Salted SHA-1 of `"123456"` under the four two-character salts.
pub fn golden() -> Result<Outcome> {
    let mut out = Outcome::new("golden");
    for (salt, expected) in GOLDEN {
        let mut h = Sha1::new();
        h.update(salt.as_bytes());
        h.update(b"123456");
        let got = h.finalize().to_hex();
        out.require(got == expected);
        out.put(format!("sha1.{salt}"), got);
    }
    Ok(out)
}

/// Every plaintext of the 4-digit domain is hashed and looked up; the
/// cracked set must equal the plaintexts lying on some stored chain.
pub fn rainbow_oracle(seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new("rainbow-oracle");
    let domain = ReductionDomain::digits(4)?;
    let params = TableParams::new(domain.clone(), 50)?;
    let table = build_table(params, 400, seed)?;
    let predicted = table.covered_plaintexts();

    let mut cracked: HashSet<Vec<u8>> = HashSet::new();
    let mut false_alarms = 0;
    for i in 0..domain.size() {
        let pw = domain.plaintext_at(i);
        let r = table.lookup(&sha1_digest(&pw));
        false_alarms += r.false_alarms;
        if let Some(found) = r.plaintext {
            if sha1_digest(&found) == sha1_digest(&pw) {
                cracked.insert(pw);
            }
        }
    }
    let size = domain.size() as f64;
    let predicted_cov = predicted.len() as f64 / size;
    let lookup_cov = cracked.len() as f64 / size;

    // a seeded user population attacked through a breach dump
    let mut vault = Vault::new(Scheme::Sha1, Some(seed));
    let mut rng_state = seed;
    for u in 0..500 {
        rng_state = rng_state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let pw = domain.plaintext_at((rng_state >> 33) % domain.size());
        vault.enroll(&format!("user{u}"), &pw, &Scheme::Sha1)?;
    }
    let dump = vault.export_breach_dump(DumpOptions::default())?;
    let report = rainbow_attack(&dump, &table)?;

    out.put("chains", table.chain_count());
    out.put("chain_length", table.chain_length());
    out.put("predicted_covered", predicted.len());
    out.put("lookup_cracked", cracked.len());
    out.put("false_alarms", false_alarms);
    out.put("coverage.predicted", format!("{predicted_cov:.4}"));
    out.put("coverage.lookup", format!("{lookup_cov:.4}"));
    out.put(
        "dump.cracked_fraction",
        format!("{:.4}", report.cracked_fraction()),
    );
    out.require(cracked == predicted);
    out.require((report.cracked_fraction() - predicted_cov).abs() <= 0.10);
    Ok(out)
}

/// File size at a fixed chain count for chain lengths 10, 100 and 1000.
pub fn endpoint_law(seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new("endpoint-law");
    let domain = ReductionDomain::digits(6)?;
    let chains = 1000;
    let mut sizes = Vec::new();
    for n in [10u32, 100, 1000] {
        let table = build_table(TableParams::new(domain.clone(), n)?, chains, seed)?;
        let size = table.to_bytes().len();
        out.put(format!("file_bytes.n{n}"), size);
        out.put(format!("covered.n{n}"), table.covered_plaintexts().len());
        sizes.push(size);
    }
    let min = *sizes.iter().min().unwrap() as f64;
    let max = *sizes.iter().max().unwrap() as f64;
    let spread = (max - min) / min;
    out.put("chains", chains);
    out.put("relative_spread", format!("{spread:.6}"));
    out.require(spread < 0.05);
    Ok(out)
}

/// Chains needed to match the unsalted coverage with 0, 1, 2 and 4 salt bits.
pub fn salt_blowup(seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new("salt-blowup");
    let config = SaltBlowupConfig {
        seed,
        ..SaltBlowupConfig::default()
    };
    let rows = salt_blowup_experiment(&[0, 1, 2, 4], &config)?;
    out.put("target_covered", rows[0].target_covered);
    for r in &rows {
        out.put(format!("chains.b{}", r.salt_bits), r.chains_needed);
        out.put(
            format!("factor.b{}", r.salt_bits),
            format!("{:.3}", r.factor),
        );
        let ok = match r.salt_bits {
            0 => r.factor == 1.0,
            2 => (3.0..=5.0).contains(&r.factor),
            4 => (12.0..=20.0).contains(&r.factor),
            _ => true,
        };
        out.require(ok);
    }
    Ok(out)
}

/// Exact key-expansion counts, then bcrypt timing for costs 8 to 12.
pub fn cost_law() -> Result<Outcome> {
    let mut out = Outcome::new("cost-law");
    for cost in [4u8, 6, 8] {
        let c = CostParameter::new(cost)?;
        let mut calls = 0u64;
        eksblowfish_setup_observed(c, &[7; 16], b"123456\0", || calls += 1)?;
        let expected = 1 + (1u64 << (cost + 1));
        out.put(format!("expand_key.cost{cost}"), calls);
        out.require(calls == expected);
    }
    let rows = cost_scaling_experiment(8..=12, 5)?;
    for pair in rows.windows(2) {
        let r = pair[1].ratio.expect("later rows have a ratio");
        out.put(
            format!("time.ratio.cost{}", pair[1].cost),
            format!("{r:.3}"),
        );
        out.require((1.7..=2.4).contains(&r));
        out.require(pair[1].median_time > pair[0].median_time);
    }
    for r in &rows {
        out.put(
            format!("time.median_seconds.cost{}", r.cost),
            format!("{:.6}", r.median_time.as_secs_f64()),
        );
    }
    Ok(out)
}

/// ROMix stored blocks and phase-two mix calls for N = 2^10 .. 2^14.
pub fn memory_law() -> Result<Outcome> {
    let mut out = Outcome::new("memory-law");
    let input = MixBlock::from_slice(&[0x5a; MF_LEN]).unwrap();
    let mut prev: Option<RomixStats> = None;
    for log_n in 10..=14u32 {
        let n = 1u64 << log_n;
        let mut stats = RomixStats::default();
        romix_instrumented(&input, n, &mut stats);
        out.put(format!("stored_blocks.log_n{log_n}"), stats.stored_blocks);
        out.put(
            format!("phase2_mix_calls.log_n{log_n}"),
            stats.phase2_mix_calls,
        );
        out.require(stats.stored_blocks == n);
        if let Some(p) = prev {
            out.require(stats.phase2_mix_calls == 2 * p.phase2_mix_calls);
        }
        prev = Some(stats);
    }
    Ok(out)
}

/// The pipeline against its unrolled definition for p = 2, N = 2.
pub fn pipeline() -> Result<Outcome> {
    let mut out = Outcome::new("pipeline");
    let (password, salt) = (b"password".as_slice(), b"salt".as_slice());
    let dk = mfcrypt(password, salt, &MfParams::new(1, 2, 32)?)?;

    let b = pbkdf2_sha1(password, salt, 1, 2 * MF_LEN)?;
    let b0 = romix(&MixBlock::from_slice(&b[..MF_LEN]).unwrap(), 2);
    let b1 = romix(&MixBlock::from_slice(&b[MF_LEN..]).unwrap(), 2);
    let unrolled = pbkdf2_sha1(password, &[b0.0, b1.0].concat(), 1, 32)?;

    out.put("mfcrypt", hex::encode(&dk));
    out.put("unrolled", hex::encode(&unrolled));
    out.require(dk == unrolled);
    Ok(out)
}

/// Hash rates for SHA-1, bcrypt at costs 10 and 12, and MFcrypt at
/// N = 2^10, 2^12, 2^14.
pub fn throughput(config: BenchConfig) -> Result<Outcome> {
    let mut out = Outcome::new("throughput");
    let bcrypt = |c| Ok::<_, Error>(Scheme::Bcrypt(CostParameter::new(c)?));
    let mf = |log_n| Ok::<_, Error>(Scheme::Mfcrypt(MfParams::new(log_n, 1, 32)?));
    let schemes = [
        Scheme::Sha1,
        bcrypt(10)?,
        bcrypt(12)?,
        mf(10)?,
        mf(12)?,
        mf(14)?,
    ];
    let mut rates = Vec::new();
    for s in &schemes {
        let r = throughput_bench(s, config)?;
        out.put(format!("time.rate.{s}"), format!("{:.3}", r.median_rate));
        rates.push(r.median_rate);
    }
    let sha1_over_bcrypt10 = rates[0] / rates[1];
    out.put(
        "time.ratio.sha1_over_bcrypt10",
        format!("{sha1_over_bcrypt10:.1}"),
    );
    out.require(sha1_over_bcrypt10 >= 1e3);
    out.require(rates[1] >= rates[2]);
    out.require(rates[3] > rates[4] && rates[4] > rates[5]);
    Ok(out)
}

/// Unsalted versus salted storage of a seeded 10^4-user Zipf corpus.
pub fn duplicates(seed: u64) -> Result<Outcome> {
    let mut out = Outcome::new("duplicates");
    let corpus = ZipfCorpus::generate(ZipfSpec {
        users: 10_000,
        seed,
        ..ZipfSpec::default()
    })?;
    let mut plain = Vault::new(Scheme::Sha1, Some(seed));
    let mut salted = Vault::new(Scheme::Sha1Salted, Some(seed));
    for (user, pw) in &corpus.users {
        plain.enroll(user, pw.as_bytes(), &Scheme::Sha1)?;
        salted.enroll(user, pw.as_bytes(), &Scheme::Sha1Salted)?;
    }
    let plain_dump = plain.export_breach_dump(DumpOptions::default())?;
    let salted_dump = salted.export_breach_dump(DumpOptions::default())?;
    let hp = duplicate_analysis(&plain_dump);
    let hs = duplicate_analysis(&salted_dump);
    let (top, top_count) = corpus.top_password();

    let top_only = Wordlist::from_words([top])?;
    let attack = dictionary_attack(&plain_dump, &top_only, AttackLimits::unlimited());
    let salted_attack = dictionary_attack(&salted_dump, &top_only, AttackLimits::unlimited());

    out.put("users", corpus.users.len());
    out.put("distinct_passwords", corpus.distinct_passwords());
    out.put("unsalted.distinct_verifiers", hp.distinct_verifiers());
    out.put("unsalted.top_multiplicity", hp.top_multiplicity());
    out.put("salted.distinct_verifiers", hs.distinct_verifiers());
    out.put("salted.top_multiplicity", hs.top_multiplicity());
    out.put("top_password", top);
    out.put("top_password.users", top_count);
    out.put("unsalted.cracked", attack.cracked_count());
    out.put("unsalted.hash_ops", attack.hash_ops);
    out.put("salted.cracked", salted_attack.cracked_count());
    out.put("salted.hash_ops", salted_attack.hash_ops);
    out.require(hp.distinct_verifiers() == corpus.distinct_passwords());
    out.require(hp.top_multiplicity() == top_count);
    out.require(hs.distinct_verifiers() == corpus.users.len());
    out.require(attack.cracked_count() == top_count && attack.hash_ops == 1);
    Ok(out)
}

/// Breach of an unsalted vault, migration to bcrypt(10), and the same
/// wordlist attack against the new dump under a time budget.
pub fn breach_drill(seed: u64, budget: Duration) -> Result<Outcome> {
    let mut out = Outcome::new("breach-drill");
    let corpus = ZipfCorpus::generate(ZipfSpec {
        users: 1000,
        seed,
        ..ZipfSpec::default()
    })?;
    let wordlist = corpus.wordlist_top(100)?;
    let mut vault = Vault::new(Scheme::Sha1, Some(seed));
    for (user, pw) in &corpus.users {
        vault.enroll(user, pw.as_bytes(), &Scheme::Sha1)?;
    }
    let before = dictionary_attack(
        &vault.export_breach_dump(DumpOptions::default())?,
        &wordlist,
        AttackLimits::unlimited(),
    );

    let credentials: Vec<(String, Vec<u8>)> = corpus
        .users
        .iter()
        .map(|(u, p)| (u.clone(), p.as_bytes().to_vec()))
        .collect();
    let bcrypt = Scheme::Bcrypt(CostParameter::new(10)?);
    let started = Instant::now();
    let migrated = vault.migrate_many(&credentials, &bcrypt)?;
    let migrate_time = started.elapsed();
    let after = dictionary_attack(
        &vault.export_breach_dump(DumpOptions::default())?,
        &wordlist,
        AttackLimits::time_budget(budget),
    );

    let ratio = before.crack_rate() / after.crack_rate();
    out.put("users", corpus.users.len());
    out.put("wordlist", wordlist.len());
    out.put("sha1.cracked", before.cracked_count());
    out.put(
        "sha1.cracked_fraction",
        format!("{:.4}", before.cracked_fraction()),
    );
    out.put("migrated", migrated);
    out.put(
        "time.migrate_seconds",
        format!("{:.3}", migrate_time.as_secs_f64()),
    );
    out.put(
        "time.sha1.crack_rate",
        format!("{:.3}", before.crack_rate()),
    );
    out.put("time.bcrypt.cracked", after.cracked_count());
    out.put("time.bcrypt.hash_ops", after.hash_ops);
    out.put(
        "time.bcrypt.crack_rate",
        format!("{:.3}", after.crack_rate()),
    );
    out.put("time.crack_rate_ratio", format!("{ratio:.1}"));
    out.require(before.cracked_fraction() >= 0.60);
    out.require(migrated == corpus.users.len());
    out.require(ratio >= 100.0);
    Ok(out)
}
