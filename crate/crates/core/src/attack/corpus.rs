//! Synthetic password corpora with Zipf-distributed popularity, and
//! wordlists.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Zipf};

use crate::error::{Error, Result};

/// Fixed head of every synthetic vocabulary, most popular first.
const COMMON: &[&str] = &[
    "123456",
    "qwertyuiop",
    "password",
    "123456789",
    "12345678",
    "12345",
    "1234567",
    "111111",
    "sunshine",
    "qwerty",
    "iloveyou",
    "princess",
    "admin",
    "welcome",
    "666666",
    "abc123",
    "football",
    "123123",
    "monkey",
    "654321",
    "charlie",
    "aa123456",
    "donald",
    "password1",
    "qwerty123",
    "letmein",
    "dragon",
    "baseball",
    "master",
    "shadow",
];

/// Parameters of a synthetic corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipfSpec {
    pub exponent: f64,
    pub vocabulary: usize,
    pub users: usize,
    pub seed: u64,
}

impl Default for ZipfSpec {
    fn default() -> Self {
        ZipfSpec {
            exponent: 1.0,
            vocabulary: 1000,
            users: 1000,
            seed: 0,
        }
    }
}

/// Users and their passwords drawn from a Zipf popularity law over a ranked
/// vocabulary.
#[derive(Clone, Debug, PartialEq)]
pub struct ZipfCorpus {
    pub spec: ZipfSpec,
    /// Candidate passwords, rank 0 most popular.
    pub vocabulary: Vec<String>,
    /// `(username, password)` per user.
    pub users: Vec<(String, String)>,
    /// How many users drew each vocabulary rank.
    pub counts: Vec<usize>,
}

impl ZipfCorpus {
    pub fn generate(spec: ZipfSpec) -> Result<Self> {
        if spec.vocabulary == 0 || spec.users == 0 {
            return Err(Error::invalid(
                "corpus needs a non-empty vocabulary and user set",
            ));
        }
        if !(spec.exponent > 0.0 && spec.exponent.is_finite()) {
            return Err(Error::invalid("Zipf exponent must be positive"));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
        let vocabulary = build_vocabulary(spec.vocabulary, &mut rng);
        let zipf = Zipf::new(spec.vocabulary as u64, spec.exponent)
            .map_err(|e| Error::invalid(format!("zipf: {e}")))?;

        let mut counts = vec![0usize; spec.vocabulary];
        let users = (0..spec.users)
            .map(|i| {
                let rank = (zipf.sample(&mut rng) as usize - 1).min(spec.vocabulary - 1);
                counts[rank] += 1;
                (format!("user{i:05}"), vocabulary[rank].clone())
            })
            .collect();
        Ok(ZipfCorpus {
            spec,
            vocabulary,
            users,
            counts,
        })
    }

    /// Most frequently drawn password and its count.
    pub fn top_password(&self) -> (&str, usize) {
        let (rank, &count) = self
            .counts
            .iter()
            .enumerate()
            .max_by_key(|&(rank, c)| (c, std::cmp::Reverse(rank)))
            .expect("non-empty vocabulary");
        (&self.vocabulary[rank], count)
    }

    pub fn distinct_passwords(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// The `k` most popular vocabulary entries, as an attacker's wordlist.
    pub fn wordlist_top(&self, k: usize) -> Result<Wordlist> {
        Wordlist::new(
            self.vocabulary
                .iter()
                .take(k)
                .map(|w| w.as_bytes().to_vec())
                .collect(),
            WordlistSource::Synthetic {
                spec: self.spec,
                top: k,
            },
        )
    }
}

fn build_vocabulary(size: usize, rng: &mut ChaCha20Rng) -> Vec<String> {
    const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789";
    let mut seen: HashSet<String> = HashSet::new();
    let mut words = Vec::with_capacity(size);
    for w in COMMON.iter().take(size) {
        seen.insert(w.to_string());
        words.push(w.to_string());
    }
    while words.len() < size {
        let len = rng.gen_range(6..=10);
        let w: String = (0..len)
            .map(|_| char::from(ALPHABET[rng.gen_range(0..ALPHABET.len())]))
            .collect();
        if seen.insert(w.clone()) {
            words.push(w);
        }
    }
    words
}

#[derive(Clone, Debug, PartialEq)]
pub enum WordlistSource {
    File(PathBuf),
    Synthetic { spec: ZipfSpec, top: usize },
    Inline,
}

/// Ordered candidate passwords.
#[derive(Clone, Debug, PartialEq)]
pub struct Wordlist {
    entries: Vec<Vec<u8>>,
    source: WordlistSource,
}

impl Wordlist {
    pub fn new(entries: Vec<Vec<u8>>, source: WordlistSource) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("wordlist must not be empty"));
        }
        Ok(Wordlist { entries, source })
    }

    pub fn from_words<S: AsRef<[u8]>>(words: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(
            words.into_iter().map(|w| w.as_ref().to_vec()).collect(),
            WordlistSource::Inline,
        )
    }

    /// One candidate per line; blank lines are skipped.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read(path.as_ref())?;
        let entries = text
            .split(|&b| b == b'\n')
            .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
            .filter(|l| !l.is_empty())
            .map(<[u8]>::to_vec)
            .collect();
        Self::new(entries, WordlistSource::File(path.as_ref().to_path_buf()))
    }

    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn source(&self) -> &WordlistSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
