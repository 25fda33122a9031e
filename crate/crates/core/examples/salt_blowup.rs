//! How many chains an attacker needs to match the unsalted coverage once
//! 1, 2 or 4 bits of salt are in play.
//!
//!     cargo run --example salt_blowup

use hashvault::attack::{salt_blowup_experiment, salt_rows_table, SaltBlowupConfig};

fn main() -> hashvault::Result<()> {
    let rows = salt_blowup_experiment(&[0, 1, 2, 4], &SaltBlowupConfig::default())?;
    print!("{}", salt_rows_table(&rows).to_csv());
    Ok(())
}
