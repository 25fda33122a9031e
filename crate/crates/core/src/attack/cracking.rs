//! Dictionary and rainbow-table attacks against breach dumps.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::corpus::Wordlist;
use super::report::AttackReport;
use crate::error::{Error, Result};
use crate::primitives::Digest;
use crate::rainbow::RainbowTable;
use crate::vault::{BreachDump, CredentialRecord, Scheme};

/// Optional wall-clock budget for an attack.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AttackLimits {
    pub time_budget: Option<Duration>,
}

impl AttackLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn time_budget(budget: Duration) -> Self {
        AttackLimits {
            time_budget: Some(budget),
        }
    }
}

/// Verifier -> indices of the records storing it.
type VerifierIndex<'a> = HashMap<&'a [u8], Vec<usize>>;

fn scheme_label(entries: &[CredentialRecord]) -> String {
    let mut tags = entries.iter().map(|e| e.scheme.to_string());
    match tags.next() {
        None => "none".into(),
        Some(first) if tags.all(|t| t == first) => first,
        Some(_) => "mixed".into(),
    }
}

fn peak_blocks(entries: &[CredentialRecord]) -> u64 {
    entries
        .iter()
        .filter_map(|e| match e.scheme {
            Scheme::Mfcrypt(p) => Some(p.n()),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

/// Tries every wordlist candidate against every record.
///
/// Unsalted records (`plain`, `sha1`) are indexed by verifier, so each
/// candidate is hashed once no matter how many accounts share it. Salted
/// records force one derivation per (candidate, record) pair. Records are
/// skipped once cracked. Every reported crack is re-verified.
pub fn dictionary_attack(
    dump: &BreachDump,
    wordlist: &Wordlist,
    limits: AttackLimits,
) -> AttackReport {
    let started = Instant::now();
    let deadline = limits.time_budget.map(|b| started + b);
    let expired = || deadline.is_some_and(|d| Instant::now() >= d);

    let entries = &dump.entries;
    let mut report = AttackReport {
        attack: "dictionary".into(),
        scheme: scheme_label(entries),
        records: entries.len(),
        peak_memory_blocks: peak_blocks(entries),
        ..Default::default()
    };

    // verifier index per unsalted scheme
    let mut unsalted: HashMap<Scheme, VerifierIndex> = HashMap::new();
    let mut salted: Vec<usize> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if e.scheme.is_salted() {
            salted.push(i);
        } else {
            unsalted
                .entry(e.scheme)
                .or_default()
                .entry(&e.verifier)
                .or_default()
                .push(i);
        }
    }
    let mut unsalted: Vec<(Scheme, VerifierIndex)> = unsalted.into_iter().collect();
    unsalted.sort_by_key(|(s, _)| s.tag());

    let mut solved: Vec<Option<Vec<u8>>> = vec![None; entries.len()];
    let hash_ops = AtomicU64::new(0);

    for candidate in wordlist.entries() {
        if expired() {
            report.truncated = true;
            break;
        }
        for (scheme, index) in unsalted.iter_mut() {
            if index.is_empty() {
                continue;
            }
            let Ok(verifier) = scheme.derive(candidate, &[]) else {
                continue;
            };
            hash_ops.fetch_add(1, Ordering::Relaxed);
            if let Some(hits) = index.remove(verifier.as_slice()) {
                for i in hits {
                    solved[i] = Some(candidate.clone());
                }
            }
        }

        salted.retain(|&i| solved[i].is_none());
        let hits: Vec<usize> = salted
            .par_iter()
            .filter(|&&i| {
                if expired() {
                    return false;
                }
                let e = &entries[i];
                match e.scheme.derive(candidate, &e.salt) {
                    Ok(v) => {
                        hash_ops.fetch_add(1, Ordering::Relaxed);
                        crate::ct_eq(&v, &e.verifier)
                    }
                    Err(_) => false,
                }
            })
            .copied()
            .collect();
        for i in hits {
            solved[i] = Some(candidate.clone());
        }
        if expired() {
            report.truncated = true;
            report.candidates_tried += 1;
            break;
        }
        report.candidates_tried += 1;
    }

    report.hash_ops = hash_ops.into_inner();
    report.cracked = collect_verified(entries, solved);
    report.finish(started.elapsed());
    report
}

fn collect_verified(
    entries: &[CredentialRecord],
    solved: Vec<Option<Vec<u8>>>,
) -> Vec<(String, Vec<u8>)> {
    entries
        .iter()
        .zip(solved)
        .filter_map(|(e, pw)| pw.map(|pw| (e, pw)))
        .filter(|(e, pw)| e.check(pw))
        .map(|(e, pw)| (e.username.clone(), pw))
        .collect()
}

/// Looks every record up in a rainbow table.
///
/// An unsalted table accepts only `sha1` records; a salted table only
/// `sha1-salted` records carrying exactly the table's salt. `hash_ops`
/// counts chain steps walked during lookups.
pub fn rainbow_attack(dump: &BreachDump, table: &RainbowTable) -> Result<AttackReport> {
    let started = Instant::now();
    let entries = &dump.entries;
    for e in entries {
        let ok = if table.params().is_salted() {
            e.scheme == Scheme::Sha1Salted && e.salt == table.salt()
        } else {
            e.scheme == Scheme::Sha1
        };
        if !ok {
            return Err(Error::SchemeMismatch(format!(
                "record `{}` ({}) cannot be attacked with a {} table",
                e.username,
                e.scheme.tag(),
                if table.params().is_salted() {
                    "salted"
                } else {
                    "unsalted"
                }
            )));
        }
    }

    let mut distinct: Vec<Digest> = entries
        .iter()
        .map(|e| Digest::from_slice(&e.verifier))
        .collect::<Result<_>>()?;
    distinct.sort_unstable();
    distinct.dedup();
    let results: HashMap<Digest, crate::rainbow::CrackResult> =
        distinct.par_iter().map(|d| (*d, table.lookup(d))).collect();

    let mut report = AttackReport {
        attack: "rainbow".into(),
        scheme: scheme_label(entries),
        records: entries.len(),
        candidates_tried: distinct.len() as u64,
        ..Default::default()
    };
    for r in results.values() {
        report.hash_ops += r.steps_examined;
        report.false_alarms += r.false_alarms;
    }
    let solved = entries
        .iter()
        .map(|e| {
            let d = Digest::from_slice(&e.verifier).expect("checked above");
            results[&d].plaintext.clone()
        })
        .collect();
    report.cracked = collect_verified(entries, solved);
    report.finish(started.elapsed());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcrypt::CostParameter;
    use crate::rainbow::{build_table, ReductionDomain, TableParams};
    use crate::vault::{DumpOptions, Vault};

    fn dump_of(users: &[(&str, &str)], scheme: Scheme) -> BreachDump {
        let mut v = Vault::new(scheme, Some(5));
        for (u, p) in users {
            v.enroll(u, p.as_bytes(), &scheme).unwrap();
        }
        v.export_breach_dump(DumpOptions::default()).unwrap()
    }

    #[test]
    fn direct_hit() {
        let dump = dump_of(&[("alice", "123456")], Scheme::Sha1);
        let words = Wordlist::from_words(["password", "123456"]).unwrap();
        let r = dictionary_attack(&dump, &words, AttackLimits::unlimited());
        assert_eq!(r.cracked, vec![("alice".to_string(), b"123456".to_vec())]);
        assert_eq!(r.hash_ops, 2);
    }

    #[test]
    fn unsalted_shared_password_costs_one_hash() {
        let users: Vec<(String, &str)> = (0..7).map(|i| (format!("u{i}"), "123456")).collect();
        let users: Vec<(&str, &str)> = users.iter().map(|(u, p)| (u.as_str(), *p)).collect();
        let words = Wordlist::from_words(["123456"]).unwrap();

        let r = dictionary_attack(
            &dump_of(&users, Scheme::Sha1),
            &words,
            AttackLimits::unlimited(),
        );
        assert_eq!(r.cracked.len(), 7);
        assert_eq!(r.hash_ops, 1);

        let r = dictionary_attack(
            &dump_of(&users, Scheme::Sha1Salted),
            &words,
            AttackLimits::unlimited(),
        );
        assert_eq!(r.cracked.len(), 7);
        assert_eq!(r.hash_ops, 7);
    }

    #[test]
    fn salted_misses_cost_candidates_times_records() {
        let dump = dump_of(&[("a", "x1"), ("b", "x2"), ("c", "x3")], Scheme::Sha1Salted);
        let words = Wordlist::from_words(["p1", "p2", "p3", "p4"]).unwrap();
        let r = dictionary_attack(&dump, &words, AttackLimits::unlimited());
        assert!(r.cracked.is_empty());
        assert_eq!(r.candidates_tried, 4);
        assert_eq!(r.hash_ops, 12);
    }

    #[test]
    fn mixed_schemes() {
        let mut v = Vault::new(Scheme::Sha1, Some(1));
        v.enroll("a", b"123456", &Scheme::Sha1).unwrap();
        v.enroll(
            "b",
            b"123456",
            &Scheme::Bcrypt(CostParameter::new(4).unwrap()),
        )
        .unwrap();
        v.enroll("c", b"zzz", &Scheme::Sha1Salted).unwrap();
        let dump = v.export_breach_dump(DumpOptions::default()).unwrap();
        let r = dictionary_attack(
            &dump,
            &Wordlist::from_words(["123456"]).unwrap(),
            AttackLimits::unlimited(),
        );
        assert_eq!(r.scheme, "mixed");
        let names: Vec<_> = r.cracked.iter().map(|(u, _)| u.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
        assert_eq!(r.hash_ops, 3);
    }

    #[test]
    fn time_budget_truncates() {
        let slow = Scheme::Bcrypt(CostParameter::new(8).unwrap());
        let dump = dump_of(&[("a", "secret")], slow);
        let words: Vec<String> = (0..10_000).map(|i| format!("guess{i}")).collect();
        let r = dictionary_attack(
            &dump,
            &Wordlist::from_words(&words).unwrap(),
            AttackLimits::time_budget(Duration::from_millis(100)),
        );
        assert!(r.truncated);
        assert!(r.candidates_tried < 10_000);
    }

    #[test]
    fn rainbow_preconditions() {
        let params = TableParams::new(ReductionDomain::digits(4).unwrap(), 20).unwrap();
        let table = build_table(params, 50, 1).unwrap();
        let salted = dump_of(&[("a", "1234")], Scheme::Sha1Salted);
        assert!(matches!(
            rainbow_attack(&salted, &table),
            Err(Error::SchemeMismatch(_))
        ));
        let empty = rainbow_attack(&BreachDump::default(), &table).unwrap();
        assert_eq!(empty.records, 0);
        assert!(empty.cracked.is_empty());
    }

    #[test]
    fn rainbow_cracks_covered_records() {
        let params = TableParams::new(ReductionDomain::digits(3).unwrap(), 20).unwrap();
        let table = build_table(params, 40, 2).unwrap();
        let covered = table.covered_plaintexts();
        let users: Vec<(String, String)> = (0..1000)
            .step_by(7)
            .map(|i| (format!("u{i}"), format!("{i:03}")))
            .collect();
        let refs: Vec<(&str, &str)> = users
            .iter()
            .map(|(u, p)| (u.as_str(), p.as_str()))
            .collect();
        let dump = dump_of(&refs, Scheme::Sha1);
        let r = rainbow_attack(&dump, &table).unwrap();
        let expected = users
            .iter()
            .filter(|(_, p)| covered.contains(p.as_bytes()))
            .count();
        assert_eq!(r.cracked.len(), expected);
        for (user, pw) in &r.cracked {
            assert_eq!(
                &users.iter().find(|(u, _)| u == user).unwrap().1.as_bytes(),
                &pw.as_slice()
            );
        }
    }
}
