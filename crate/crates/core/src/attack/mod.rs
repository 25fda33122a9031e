//! The attacker's side: dictionary and rainbow attacks on breach dumps,
//! throughput benchmarks, and the experiments behind each storage argument.

mod analysis;
mod bench;
mod corpus;
mod cracking;
pub mod experiments;
mod report;

pub use analysis::{
    duplicate_analysis, salt_blowup_experiment, salt_rows_table, salt_values, DuplicateHistogram,
    SaltBlowupConfig, SaltBlowupRow,
};
pub use bench::{
    cost_rows_table, cost_scaling_experiment, throughput_bench, BenchConfig, BenchResult, CostRow,
    BENCH_SECONDS_ENV,
};
pub use corpus::{Wordlist, WordlistSource, ZipfCorpus, ZipfSpec};
pub use cracking::{dictionary_attack, rainbow_attack, AttackLimits};
pub use report::{AttackReport, Table, TIMING_PREFIX};
