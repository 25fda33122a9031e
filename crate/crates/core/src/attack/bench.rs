//! Hash throughput and bcrypt cost scaling measurements.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use super::report::Table;
use crate::bcrypt::{bcrypt_hash, CostParameter};
use crate::error::{Error, Result};
use crate::vault::Scheme;

/// Environment variable that overrides the bench duration, in seconds.
pub const BENCH_SECONDS_ENV: &str = "HASHVAULT_BENCH_SECONDS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    /// Total measuring time, split evenly across runs.
    pub duration: Duration,
    pub runs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            duration: Duration::from_secs(1),
            runs: 3,
        }
    }
}

impl BenchConfig {
    /// Default config with the duration taken from `HASHVAULT_BENCH_SECONDS`
    /// when set.
    pub fn from_env() -> Result<Self> {
        let mut config = Self::default();
        if let Ok(value) = std::env::var(BENCH_SECONDS_ENV) {
            let secs: f64 = value.trim().parse().map_err(|_| {
                Error::invalid(format!("{BENCH_SECONDS_ENV}={value} is not a number"))
            })?;
            if !secs.is_finite() || secs < 0.0 {
                return Err(Error::invalid(format!(
                    "{BENCH_SECONDS_ENV} must be non-negative"
                )));
            }
            config.duration = Duration::from_secs_f64(secs);
        }
        Ok(config)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub scheme: Scheme,
    /// Hashes per second, one per run.
    pub rates: Vec<f64>,
    pub median_rate: f64,
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Single-threaded password hashes per second under `scheme`: median over
/// `runs` timed runs after one untimed warm-up hash.
pub fn throughput_bench(scheme: &Scheme, config: BenchConfig) -> Result<BenchResult> {
    if config.duration < Duration::from_secs(1) {
        return Err(Error::invalid("bench duration must be at least 1 s"));
    }
    if config.runs < 3 {
        return Err(Error::invalid("bench needs at least 3 runs"));
    }
    let salt = vec![0x42u8; scheme.salt_len()];
    let password = b"123456";
    std::hint::black_box(scheme.derive(password, &salt)?);

    let slice = config.duration / config.runs as u32;
    let mut rates = Vec::with_capacity(config.runs);
    for _ in 0..config.runs {
        let start = Instant::now();
        let mut ops = 0u64;
        loop {
            std::hint::black_box(scheme.derive(std::hint::black_box(password), &salt)?);
            ops += 1;
            if start.elapsed() >= slice {
                break;
            }
        }
        rates.push(ops as f64 / start.elapsed().as_secs_f64());
    }
    let median_rate = median(&mut rates.clone());
    Ok(BenchResult {
        scheme: *scheme,
        rates,
        median_rate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostRow {
    pub cost: u8,
    pub median_time: Duration,
    /// `median_time(cost) / median_time(cost - 1)`; absent on the first row.
    pub ratio: Option<f64>,
}

/// Median bcrypt hash time per cost over `repeats` runs, with the ratio to
/// the previous cost.
pub fn cost_scaling_experiment(costs: RangeInclusive<u8>, repeats: usize) -> Result<Vec<CostRow>> {
    if repeats == 0 {
        return Err(Error::invalid("need at least one repeat"));
    }
    let costs: Vec<CostParameter> = costs.map(CostParameter::new).collect::<Result<_>>()?;
    let salt = [0x24u8; 16];
    let mut rows: Vec<CostRow> = Vec::with_capacity(costs.len());
    for cost in costs {
        let mut times: Vec<f64> = (0..repeats)
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(bcrypt_hash(b"123456", &salt, cost).expect("valid input"));
                start.elapsed().as_secs_f64()
            })
            .collect();
        let median_time = Duration::from_secs_f64(median(&mut times));
        let ratio = rows
            .last()
            .map(|prev| median_time.as_secs_f64() / prev.median_time.as_secs_f64());
        rows.push(CostRow {
            cost: cost.get(),
            median_time,
            ratio,
        });
    }
    Ok(rows)
}

pub fn cost_rows_table(rows: &[CostRow]) -> Table {
    let mut t = Table::new(["cost", "time.median_seconds", "time.ratio"]);
    for r in rows {
        t.push([
            r.cost.to_string(),
            format!("{:.6}", r.median_time.as_secs_f64()),
            r.ratio.map(|x| format!("{x:.3}")).unwrap_or_default(),
        ]);
    }
    t
}
