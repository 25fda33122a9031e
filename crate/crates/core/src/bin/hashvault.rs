//! Command-line front end for the hashvault library.
//!
//! Exit status: 0 on success, 1 on a domain error (wrong password, scheme
//! mismatch, corrupt file, failed experiment), 2 on a usage error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use hashvault::attack::experiments::{self, ExperimentOptions, NAMES};
use hashvault::attack::{
    dictionary_attack, rainbow_attack, throughput_bench, AttackLimits, AttackReport, BenchConfig,
    Wordlist, ZipfCorpus, ZipfSpec,
};
use hashvault::bcrypt::CostParameter;
use hashvault::mfcrypt::MfParams;
use hashvault::primitives::Sha1;
use hashvault::rainbow::{build_table, RainbowTable, ReductionDomain, TableParams};
use hashvault::vault::{BreachDump, DumpOptions, Scheme, Vault};
use hashvault::Error;

#[derive(Parser)]
#[command(
    name = "hashvault",
    version,
    about = "Password storage and cracking lab"
)]
struct Cli {
    /// Seed for every random choice (salts, table starts, corpora).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads. Never changes output.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hex verifier of a password under a scheme.
    Hash {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Salt as hex. Defaults to a seeded random salt for salted schemes.
        #[arg(long)]
        salt: Option<String>,
        #[command(flatten)]
        password: PasswordArgs,
    },
    /// Add a user to a vault file, creating the file if needed.
    Enroll {
        #[arg(long)]
        vault: PathBuf,
        #[arg(long)]
        user: String,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        password: PasswordArgs,
    },
    /// Check a password; exits 1 when it does not match.
    Verify {
        #[arg(long)]
        vault: PathBuf,
        #[arg(long)]
        user: String,
        #[command(flatten)]
        password: PasswordArgs,
    },
    /// Re-enroll a user under a new scheme after verifying the password.
    Migrate {
        #[arg(long)]
        vault: PathBuf,
        #[arg(long)]
        user: String,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        password: PasswordArgs,
    },
    /// Export what a breach of the vault would expose.
    Dump {
        #[arg(long)]
        vault: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rename users to user1..userN.
        #[arg(long)]
        anonymize: bool,
        /// Permit `plain` records in the dump.
        #[arg(long)]
        allow_plaintext: bool,
    },
    /// Build a rainbow table file.
    TableBuild {
        #[arg(long)]
        out: PathBuf,
        /// Plaintext alphabet.
        #[arg(long, default_value = "0123456789")]
        charset: String,
        /// Plaintext length.
        #[arg(long, default_value_t = 4)]
        length: u8,
        /// Chain length n.
        #[arg(long, default_value_t = 100)]
        chain_length: u32,
        /// Number of chains m.
        #[arg(long, default_value_t = 200)]
        chains: u64,
        /// Table salt as hex, prepended to every plaintext.
        #[arg(long)]
        salt: Option<String>,
    },
    /// Attack a breach dump with a rainbow table or a wordlist.
    Crack {
        #[arg(long)]
        dump: PathBuf,
        #[arg(long, conflicts_with_all = ["wordlist", "zipf_top"])]
        table: Option<PathBuf>,
        /// One candidate per line.
        #[arg(long, conflicts_with = "zipf_top")]
        wordlist: Option<PathBuf>,
        /// Use the K most popular words of the seeded synthetic corpus.
        #[arg(long, value_name = "K")]
        zipf_top: Option<usize>,
        /// Stop the wordlist attack after this many seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Measure single-core hashes per second (HASHVAULT_BENCH_SECONDS sets
    /// the duration).
    Bench {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 3)]
        runs: usize,
    },
    /// Run a named experiment, or `all`; exits 1 if any fails.
    Experiment {
        #[arg(value_parser = experiment_name)]
        name: String,
        /// Time budget of the bcrypt attack in breach-drill, in seconds.
        #[arg(long, default_value_t = 20.0)]
        drill_budget: f64,
    },
}

fn experiment_name(s: &str) -> Result<String, String> {
    if s == "all" || NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected `all` or one of: {}", NAMES.join(", ")))
    }
}

#[derive(Args)]
struct SchemeArgs {
    /// plain, sha1, sha1-salted, bcrypt or mfcrypt; a full `tag$params`
    /// string is also accepted.
    #[arg(long, default_value = "bcrypt")]
    scheme: String,
    /// bcrypt cost (4..=31).
    #[arg(long, default_value_t = 10)]
    cost: u8,
    /// MFcrypt log2 N.
    #[arg(long, default_value_t = 14)]
    log_n: u8,
    /// MFcrypt parallelism.
    #[arg(long, default_value_t = 1)]
    p: u32,
    /// MFcrypt derived key length in bytes.
    #[arg(long, default_value_t = 32)]
    dk_len: usize,
}

impl SchemeArgs {
    fn scheme(&self) -> hashvault::Result<Scheme> {
        if self.scheme.contains('$') {
            return self.scheme.parse();
        }
        match self.scheme.as_str() {
            "bcrypt" => Ok(Scheme::Bcrypt(CostParameter::new(self.cost)?)),
            "mfcrypt" => Ok(Scheme::Mfcrypt(MfParams::new(
                self.log_n,
                self.p,
                self.dk_len,
            )?)),
            tag => Scheme::from_parts(tag, ""),
        }
    }
}

#[derive(Args)]
struct PasswordArgs {
    /// The password itself.
    #[arg(conflicts_with_all = ["password_file", "password_stdin"])]
    password: Option<String>,
    /// Read the password from a file (one trailing newline is dropped).
    #[arg(long, conflicts_with = "password_stdin")]
    password_file: Option<PathBuf>,
    /// Read the password from standard input.
    #[arg(long)]
    password_stdin: bool,
}

impl PasswordArgs {
    fn read(&self) -> Result<Vec<u8>, Failure> {
        let mut bytes = if let Some(p) = &self.password {
            return Ok(p.as_bytes().to_vec());
        } else if let Some(path) = &self.password_file {
            fs::read(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?
        } else if self.password_stdin {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::Domain(e.to_string()))?;
            buf
        } else {
            return Err(Failure::Usage(
                "a password is required (argument, --password-file or --password-stdin)".into(),
            ));
        };
        if bytes.ends_with(b"\n") {
            bytes.pop();
            if bytes.ends_with(b"\r") {
                bytes.pop();
            }
        }
        Ok(bytes)
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command, cli.seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn hex_arg(text: &str, what: &str) -> Result<Vec<u8>, Failure> {
    hex::decode(text).map_err(|e| Failure::Usage(format!("{what} must be hex: {e}")))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => {
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn open_vault(path: &Path, seed: Option<u64>) -> Result<Vault, Failure> {
    Ok(Vault::load(path, seed)?)
}

fn run(command: Command, seed: Option<u64>) -> CliResult {
    match command {
        Command::Hash {
            scheme,
            salt,
            password,
        } => {
            let scheme = scheme.scheme()?;
            let pw = password.read()?;
            let salt = match salt {
                Some(s) => hex_arg(&s, "--salt")?,
                None => {
                    let mut s = vec![0u8; scheme.salt_len()];
                    match seed {
                        Some(seed) => ChaCha20Rng::seed_from_u64(seed).fill_bytes(&mut s),
                        None => ChaCha20Rng::from_entropy().fill_bytes(&mut s),
                    }
                    s
                }
            };
            // SHA-1 takes a salt of any length, prepended to the password.
            let verifier = match scheme {
                Scheme::Sha1 | Scheme::Sha1Salted => {
                    let mut h = Sha1::new();
                    h.update(&salt);
                    h.update(&pw);
                    h.finalize().as_bytes().to_vec()
                }
                _ => scheme.derive(&pw, &salt)?,
            };
            println!("{}", hex::encode(verifier));
        }
        Command::Enroll {
            vault,
            user,
            scheme,
            password,
        } => {
            let scheme = scheme.scheme()?;
            let mut v = if vault.exists() {
                open_vault(&vault, seed)?
            } else {
                Vault::new(scheme, seed)
            };
            let record = v.enroll(&user, &password.read()?, &scheme)?;
            v.save(&vault)?;
            println!("enrolled={} scheme={}", record.username, record.scheme);
        }
        Command::Verify {
            vault,
            user,
            password,
        } => {
            let v = open_vault(&vault, seed)?;
            if v.verify(&user, &password.read()?) {
                println!("verified={user}");
            } else {
                return Err(Failure::Domain(format!("verification failed for `{user}`")));
            }
        }
        Command::Migrate {
            vault,
            user,
            scheme,
            password,
        } => {
            let scheme = scheme.scheme()?;
            let mut v = open_vault(&vault, seed)?;
            let record = v.migrate(&user, &password.read()?, &scheme)?;
            v.save(&vault)?;
            println!("migrated={} scheme={}", record.username, record.scheme);
        }
        Command::Dump {
            vault,
            out,
            anonymize,
            allow_plaintext,
        } => {
            let v = open_vault(&vault, seed)?;
            let dump = v.export_breach_dump(DumpOptions {
                allow_plaintext,
                anonymize,
            })?;
            write_out(out.as_deref(), &dump.render())?;
        }
        Command::TableBuild {
            out,
            charset,
            length,
            chain_length,
            chains,
            salt,
        } => {
            let domain = ReductionDomain::new(charset.into_bytes(), length)?;
            let params = match salt {
                Some(s) => TableParams::with_salt(domain, chain_length, hex_arg(&s, "--salt")?)?,
                None => TableParams::new(domain, chain_length)?,
            };
            let table = build_table(params, chains, seed.unwrap_or(0))?;
            table.save(&out)?;
            println!("chains={}", table.chain_count());
            println!("chain_length={}", table.chain_length());
            println!("distinct_endpoints={}", table.distinct_endpoints());
            println!("covered={}", table.covered_plaintexts().len());
            println!("coverage={:.6}", table.coverage());
            println!("file_bytes={}", table.to_bytes().len());
        }
        Command::Crack {
            dump,
            table,
            wordlist,
            zipf_top,
            time_budget,
            csv,
        } => {
            let dump = BreachDump::load(&dump)?;
            let report: AttackReport = if let Some(t) = table {
                rainbow_attack(&dump, &RainbowTable::load(&t)?)?
            } else {
                let words = match (wordlist, zipf_top) {
                    (Some(path), _) => Wordlist::load(&path)?,
                    (None, Some(k)) => ZipfCorpus::generate(ZipfSpec {
                        seed: seed.unwrap_or(0),
                        ..ZipfSpec::default()
                    })?
                    .wordlist_top(k)?,
                    (None, None) => {
                        return Err(Failure::Usage(
                            "crack needs --table, --wordlist or --zipf-top".into(),
                        ))
                    }
                };
                let limits = match time_budget {
                    Some(s) if s.is_finite() && s >= 0.0 => {
                        AttackLimits::time_budget(Duration::from_secs_f64(s))
                    }
                    Some(_) => return Err(Failure::Usage("--time-budget must be >= 0".into())),
                    None => AttackLimits::unlimited(),
                };
                dictionary_attack(&dump, &words, limits)
            };
            print!("{}", report.to_key_value());
            if let Some(path) = csv {
                write_out(Some(&path), &report.to_csv())?;
            }
        }
        Command::Bench { scheme, runs } => {
            let scheme = scheme.scheme()?;
            let config = BenchConfig {
                runs,
                ..BenchConfig::from_env()?
            };
            let r = throughput_bench(&scheme, config)?;
            println!("scheme={scheme}");
            println!("runs={}", r.rates.len());
            for (i, rate) in r.rates.iter().enumerate() {
                println!("time.rate.run{i}={rate:.3}");
            }
            println!("time.rate.median={:.3}", r.median_rate);
        }
        Command::Experiment { name, drill_budget } => {
            if !(drill_budget.is_finite() && drill_budget > 0.0) {
                return Err(Failure::Usage("--drill-budget must be positive".into()));
            }
            let options = ExperimentOptions {
                seed: seed.unwrap_or(ExperimentOptions::default().seed),
                bench: BenchConfig::from_env()?,
                drill_budget: Duration::from_secs_f64(drill_budget),
            };
            let names: Vec<&str> = if name == "all" {
                NAMES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut failed = Vec::new();
            for n in names {
                let outcome = experiments::run(n, &options)?;
                print!("{}", outcome.to_key_value());
                let _ = io::stdout().flush();
                if !outcome.passed {
                    failed.push(n);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Domain(format!("failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}
