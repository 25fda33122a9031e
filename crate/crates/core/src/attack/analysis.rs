//! Salt blowup for precomputation and duplicate-verifier analysis.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::report::Table;
use crate::error::{Error, Result};
use crate::rainbow::{build_table, ReductionDomain, StartSequence, TableParams};
use crate::vault::BreachDump;

#[derive(Clone, Debug, PartialEq)]
pub struct SaltBlowupConfig {
    pub domain: ReductionDomain,
    pub chain_length: u32,
    /// Chains in the unsalted reference table; its coverage is the target.
    pub baseline_chains: u64,
    pub seed: u64,
}

impl Default for SaltBlowupConfig {
    fn default() -> Self {
        SaltBlowupConfig {
            domain: ReductionDomain::digits(4).expect("valid domain"),
            chain_length: 100,
            baseline_chains: 200,
            seed: 2017,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SaltBlowupRow {
    pub salt_bits: u8,
    pub salt_values: usize,
    /// Chains summed over all per-salt tables.
    pub chains_needed: u64,
    /// `chains_needed` over the unsalted requirement.
    pub factor: f64,
    /// Covered plaintexts each table had to reach.
    pub target_covered: usize,
}

/// The `2^bits` salts of width `bits`, written as ASCII `'0'`/`'1'`
/// strings (`"00"`, `"01"`, `"10"`, `"11"` for two bits).
pub fn salt_values(bits: u8) -> Vec<Vec<u8>> {
    (0..1u32 << bits)
        .map(|v| {
            (0..bits)
                .rev()
                .map(|i| if v >> i & 1 == 1 { b'1' } else { b'0' })
                .collect()
        })
        .collect()
}

/// Smallest prefix of the start sequence whose chains cover `target`
/// distinct plaintexts.
fn chains_to_cover(params: &TableParams, seed: u64, target: usize) -> Result<u64> {
    let mut hasher = params.hasher();
    let mut covered: HashSet<u64> = HashSet::new();
    let mut chains = 0u64;
    for start in StartSequence::new(seed, &params.domain) {
        if covered.len() >= target {
            break;
        }
        chains += 1;
        let mut p = start;
        for column in 0..params.chain_length {
            covered.insert(p);
            p = hasher.step(p, column);
        }
    }
    if covered.len() < target {
        return Err(Error::invalid("target coverage unreachable in this domain"));
    }
    Ok(chains)
}

/// For each salt width, grows one table per salt value until it matches the
/// unsalted table's coverage, and reports the total chain count against
/// the unsalted requirement.
pub fn salt_blowup_experiment(
    salt_bits: &[u8],
    config: &SaltBlowupConfig,
) -> Result<Vec<SaltBlowupRow>> {
    if let Some(b) = salt_bits.iter().find(|&&b| b > 4) {
        return Err(Error::invalid(format!(
            "salt width {b} bits exceeds the 4-bit limit"
        )));
    }
    let unsalted = TableParams::new(config.domain.clone(), config.chain_length)?;
    let reference = build_table(unsalted.clone(), config.baseline_chains, config.seed)?;
    let target = reference.covered_plaintexts().len();
    let baseline = chains_to_cover(&unsalted, config.seed, target)?;

    salt_bits
        .iter()
        .map(|&bits| {
            let salts = salt_values(bits);
            let mut total = 0u64;
            for (i, salt) in salts.iter().enumerate() {
                let params = TableParams::with_salt(
                    config.domain.clone(),
                    config.chain_length,
                    salt.clone(),
                )?;
                total += chains_to_cover(&params, config.seed.wrapping_add(i as u64), target)?;
            }
            Ok(SaltBlowupRow {
                salt_bits: bits,
                salt_values: salts.len(),
                chains_needed: total,
                factor: total as f64 / baseline as f64,
                target_covered: target,
            })
        })
        .collect()
}

pub fn salt_rows_table(rows: &[SaltBlowupRow]) -> Table {
    let mut t = Table::new([
        "salt_bits",
        "salt_values",
        "chains_needed",
        "factor",
        "target_covered",
    ]);
    for r in rows {
        t.push([
            r.salt_bits.to_string(),
            r.salt_values.to_string(),
            r.chains_needed.to_string(),
            format!("{:.3}", r.factor),
            r.target_covered.to_string(),
        ]);
    }
    t
}

/// How often each stored verifier occurs in a dump.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DuplicateHistogram {
    /// multiplicity -> number of distinct verifiers with that multiplicity
    pub buckets: BTreeMap<usize, usize>,
    pub records: usize,
}

impl DuplicateHistogram {
    pub fn distinct_verifiers(&self) -> usize {
        self.buckets.values().sum()
    }

    pub fn top_multiplicity(&self) -> usize {
        self.buckets.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["multiplicity", "verifiers"]);
        for (m, n) in &self.buckets {
            t.push([m.to_string(), n.to_string()]);
        }
        t
    }
}

/// Verifier multiplicities. For an unsalted dump this is exactly the
/// password popularity histogram.
pub fn duplicate_analysis(dump: &BreachDump) -> DuplicateHistogram {
    let mut counts: HashMap<(String, &[u8]), usize> = HashMap::new();
    for e in &dump.entries {
        *counts
            .entry((e.scheme.to_string(), &e.verifier))
            .or_default() += 1;
    }
    let mut buckets = BTreeMap::new();
    for m in counts.into_values() {
        *buckets.entry(m).or_default() += 1;
    }
    DuplicateHistogram {
        buckets,
        records: dump.entries.len(),
    }
}
