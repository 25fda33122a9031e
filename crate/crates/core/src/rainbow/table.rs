use std::collections::{HashMap, HashSet};
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::domain::{reduce_index, ReductionDomain};
use crate::error::{Error, Result};
use crate::primitives::{Digest, Sha1};

/// Everything that determines a chain: the plaintext domain, the number of
/// hash/reduce steps per chain, and the salt prefix (empty when unsalted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableParams {
    pub domain: ReductionDomain,
    pub chain_length: u32,
    pub salt: Vec<u8>,
}

impl TableParams {
    pub fn new(domain: ReductionDomain, chain_length: u32) -> Result<Self> {
        Self::with_salt(domain, chain_length, Vec::new())
    }

    pub fn with_salt(domain: ReductionDomain, chain_length: u32, salt: Vec<u8>) -> Result<Self> {
        if chain_length == 0 {
            return Err(Error::invalid("chain length must be at least 1"));
        }
        if salt.len() > usize::from(u8::MAX) {
            return Err(Error::invalid("table salt holds at most 255 bytes"));
        }
        Ok(TableParams {
            domain,
            chain_length,
            salt,
        })
    }

    pub fn is_salted(&self) -> bool {
        !self.salt.is_empty()
    }

    pub(crate) fn hasher(&self) -> ChainHasher<'_> {
        let mut prefix = Sha1::new();
        prefix.update(&self.salt);
        ChainHasher {
            params: self,
            prefix,
            buf: vec![0; self.domain.plaintext_len()],
        }
    }
}

/// Hashes `salt || plaintext` and reduces, reusing one plaintext buffer.
pub(crate) struct ChainHasher<'a> {
    params: &'a TableParams,
    prefix: Sha1,
    buf: Vec<u8>,
}

impl ChainHasher<'_> {
    pub(crate) fn hash(&self, plaintext: &[u8]) -> Digest {
        let mut h = self.prefix.clone();
        h.update(plaintext);
        h.finalize()
    }

    fn hash_index(&mut self, index: u64) -> Digest {
        self.params.domain.write_plaintext(index, &mut self.buf);
        let mut h = self.prefix.clone();
        h.update(&self.buf);
        h.finalize()
    }

    /// One chain step from plaintext index `index` at column `column`.
    pub(crate) fn step(&mut self, index: u64, column: u32) -> u64 {
        let digest = self.hash_index(index);
        reduce_index(&digest, column, &self.params.domain)
    }

    /// Walks `steps` steps from column 0.
    pub(crate) fn walk(&mut self, start: u64, steps: u32) -> u64 {
        (0..steps).fold(start, |p, column| self.step(p, column))
    }
}

/// A stored chain: its first and last plaintext.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainRecord {
    pub start: Vec<u8>,
    pub end: Vec<u8>,
}

/// Outcome of a single lookup.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrackResult {
    pub found: bool,
    pub plaintext: Option<Vec<u8>>,
    /// Hash/reduce steps spent walking candidate columns to an endpoint.
    pub steps_examined: u64,
    /// Endpoint matches whose regenerated chain did not contain a preimage.
    pub false_alarms: u64,
}

/// Deterministic, duplicate-free sequence of chain start indices.
///
/// The first `m` items are the same for every `m`, so growing a table one
/// chain at a time reproduces `build_table` with the larger count.
pub struct StartSequence {
    rng: ChaCha20Rng,
    seen: HashSet<u64>,
    size: u64,
}

impl StartSequence {
    pub fn new(seed: u64, domain: &ReductionDomain) -> Self {
        StartSequence {
            rng: ChaCha20Rng::seed_from_u64(seed),
            seen: HashSet::new(),
            size: domain.size(),
        }
    }
}

impl Iterator for StartSequence {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.seen.len() as u64 >= self.size {
            return None;
        }
        loop {
            let candidate = self.rng.gen_range(0..self.size);
            if self.seen.insert(candidate) {
                return Some(candidate);
            }
        }
    }
}

/// Precomputed chains, sorted by endpoint, with an index from endpoint to
/// the run of chains sharing it.
#[derive(Clone, Debug)]
pub struct RainbowTable {
    params: TableParams,
    chains: Vec<ChainRecord>,
    endpoint_index: HashMap<Vec<u8>, Range<usize>>,
}

impl PartialEq for RainbowTable {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.chains == other.chains
    }
}

impl Eq for RainbowTable {}

impl RainbowTable {
    /// Assembles a table from records. Records are put into canonical
    /// `(end, start)` order; every plaintext must lie in the domain.
    pub fn from_chains(params: TableParams, mut chains: Vec<ChainRecord>) -> Result<Self> {
        for c in &chains {
            if !params.domain.contains(&c.start) || !params.domain.contains(&c.end) {
                return Err(Error::invalid("chain plaintext outside the table domain"));
            }
        }
        chains.sort_unstable_by(|a, b| (&a.end, &a.start).cmp(&(&b.end, &b.start)));
        Ok(Self::from_sorted(params, chains))
    }

    pub(crate) fn from_sorted(params: TableParams, chains: Vec<ChainRecord>) -> Self {
        let mut endpoint_index: HashMap<Vec<u8>, Range<usize>> = HashMap::new();
        let mut i = 0;
        while i < chains.len() {
            let j = i + chains[i..]
                .iter()
                .take_while(|c| c.end == chains[i].end)
                .count();
            endpoint_index.insert(chains[i].end.clone(), i..j);
            i = j;
        }
        RainbowTable {
            params,
            chains,
            endpoint_index,
        }
    }

    /// A table with no chains; every lookup misses.
    pub fn empty(params: TableParams) -> Self {
        Self::from_sorted(params, Vec::new())
    }

    pub fn params(&self) -> &TableParams {
        &self.params
    }

    pub fn domain(&self) -> &ReductionDomain {
        &self.params.domain
    }

    pub fn chain_length(&self) -> u32 {
        self.params.chain_length
    }

    pub fn salt(&self) -> &[u8] {
        &self.params.salt
    }

    pub fn chains(&self) -> &[ChainRecord] {
        &self.chains
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    pub fn distinct_endpoints(&self) -> usize {
        self.endpoint_index.len()
    }

    /// Chains whose endpoint is shared with an earlier chain.
    pub fn duplicate_endpoints(&self) -> usize {
        self.chains.len() - self.endpoint_index.len()
    }

    pub fn chains_ending_at(&self, end: &[u8]) -> &[ChainRecord] {
        match self.endpoint_index.get(end) {
            Some(range) => &self.chains[range.clone()],
            None => &[],
        }
    }

    /// Bytes of chain storage: two plaintexts per chain, nothing per step.
    pub fn table_memory_cost(&self) -> u64 {
        2 * self.chains.len() as u64 * self.params.domain.plaintext_len() as u64
    }

    /// Approximate in-memory size of the endpoint index, reported apart from
    /// the chain storage.
    pub fn index_overhead(&self) -> u64 {
        let per_entry =
            self.params.domain.plaintext_len() + std::mem::size_of::<(Vec<u8>, Range<usize>)>();
        (self.endpoint_index.len() * per_entry) as u64
    }

    /// Worst-case hash/reduce steps for one lookup: `n(n+1)/2`.
    pub fn lookup_work_bound(&self) -> u64 {
        let n = u64::from(self.params.chain_length);
        n * (n + 1) / 2
    }

    /// Every plaintext the table can invert, found by regenerating all chains
    /// column by column (`P0..P(n-1)` of each chain).
    pub fn covered_plaintexts(&self) -> HashSet<Vec<u8>> {
        let domain = &self.params.domain;
        let per_chain: Vec<Vec<u64>> = self
            .chains
            .par_iter()
            .map(|chain| {
                let mut hasher = self.params.hasher();
                let mut p = domain.index_of(&chain.start).expect("validated start");
                let mut seen = Vec::with_capacity(self.params.chain_length as usize);
                for column in 0..self.params.chain_length {
                    seen.push(p);
                    p = hasher.step(p, column);
                }
                seen
            })
            .collect();
        per_chain
            .into_iter()
            .flatten()
            .map(|i| domain.plaintext_at(i))
            .collect()
    }

    /// Fraction of the domain covered by the table.
    pub fn coverage(&self) -> f64 {
        self.covered_plaintexts().len() as f64 / self.params.domain.size() as f64
    }

    pub fn lookup(&self, digest: &Digest) -> CrackResult {
        lookup(digest, self)
    }
}

/// Applies `steps` hash-then-reduce steps to `start`, using columns
/// `0..steps`.
pub fn walk_chain(start: &[u8], steps: u32, params: &TableParams) -> Result<Vec<u8>> {
    let index = params
        .domain
        .index_of(start)
        .ok_or_else(|| Error::invalid("chain start outside the table domain"))?;
    if steps > params.chain_length {
        return Err(Error::invalid(format!(
            "cannot walk {steps} steps in a chain of length {}",
            params.chain_length
        )));
    }
    let end = params.hasher().walk(index, steps);
    Ok(params.domain.plaintext_at(end))
}

/// Builds `chain_count` chains from distinct starts drawn by
/// [`StartSequence`] under `seed`. Chains are computed in parallel and put
/// in canonical order, so the result does not depend on the worker count.
pub fn build_table(params: TableParams, chain_count: u64, seed: u64) -> Result<RainbowTable> {
    if chain_count == 0 {
        return Err(Error::invalid("chain count must be at least 1"));
    }
    if chain_count > params.domain.size() {
        return Err(Error::invalid(format!(
            "domain of {} plaintexts cannot supply {chain_count} distinct starts",
            params.domain.size()
        )));
    }
    let starts: Vec<u64> = StartSequence::new(seed, &params.domain)
        .take(chain_count as usize)
        .collect();
    let chains: Vec<ChainRecord> = starts
        .par_iter()
        .map_init(
            || params.hasher(),
            |hasher, &start| {
                let end = hasher.walk(start, params.chain_length);
                ChainRecord {
                    start: params.domain.plaintext_at(start),
                    end: params.domain.plaintext_at(end),
                }
            },
        )
        .collect();
    RainbowTable::from_chains(params, chains)
}

/// Searches the table for a preimage of `digest`.
///
/// For each column `j` from last to first, assumes the digest sits at column
/// `j`, walks to an endpoint and, on an index hit, regenerates the candidate
/// chains from their starts to confirm a preimage by hashing.
pub fn lookup(digest: &Digest, table: &RainbowTable) -> CrackResult {
    let mut result = CrackResult::default();
    if table.chains.is_empty() {
        return result;
    }
    let params = &table.params;
    let domain = &params.domain;
    let n = params.chain_length;
    let mut hasher = params.hasher();
    let mut end = vec![0u8; domain.plaintext_len()];

    for column in (0..n).rev() {
        let mut p = reduce_index(digest, column, domain);
        result.steps_examined += 1;
        for k in column + 1..n {
            p = hasher.step(p, k);
            result.steps_examined += 1;
        }
        domain.write_plaintext(p, &mut end);
        for chain in table.chains_ending_at(&end) {
            let start = domain.index_of(&chain.start).expect("validated start");
            let candidate = domain.plaintext_at(hasher.walk(start, column));
            if hasher.hash(&candidate) == *digest {
                result.found = true;
                result.plaintext = Some(candidate);
                return result;
            }
            result.false_alarms += 1;
        }
    }
    result
}
