//! The full drill: breach an unsalted vault, migrate everyone to bcrypt and
//! rerun the same wordlist attack. Takes a couple of minutes.
//!
//!     cargo run --release --example breach_drill -- [budget_seconds]

use std::time::Duration;

use hashvault::attack::experiments::{breach_drill, ExperimentOptions};

fn main() -> hashvault::Result<()> {
    let budget = std::env::args()
        .nth(1)
        .map_or(20.0, |a| a.parse::<f64>().expect("seconds"));
    let outcome = breach_drill(
        ExperimentOptions::default().seed,
        Duration::from_secs_f64(budget),
    )?;
    print!("{}", outcome.to_key_value());
    Ok(())
}
