//! bcrypt records and the doubling of work per cost step.
//!
//!     cargo run --example bcrypt_cost -- [max_cost]

use hashvault::attack::{cost_rows_table, cost_scaling_experiment};
use hashvault::bcrypt::{
    bcrypt_hash, bcrypt_verify, eksblowfish_setup_observed, BcryptRecord, CostParameter,
};

fn main() -> hashvault::Result<()> {
    let max: u8 = std::env::args()
        .nth(1)
        .map_or(11, |a| a.parse().expect("cost"));

    let record = bcrypt_hash(b"123456", &[0x71; 16], CostParameter::new(6)?)?;
    println!("{record}");
    let parsed: BcryptRecord = record.to_string().parse()?;
    println!("verify 123456: {}", bcrypt_verify(b"123456", &parsed));
    println!("verify 654321: {}", bcrypt_verify(b"654321", &parsed));

    for cost in [4u8, 5, 6] {
        let mut expansions = 0;
        eksblowfish_setup_observed(CostParameter::new(cost)?, &[0; 16], b"pw\0", || {
            expansions += 1
        })?;
        println!("cost {cost}: {expansions} key expansions");
    }

    let rows = cost_scaling_experiment(6..=max, 3)?;
    print!("{}", cost_rows_table(&rows).to_csv());
    Ok(())
}
