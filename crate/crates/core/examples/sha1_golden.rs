//! Salted SHA-1 of "123456" under the four two-character salts, plus the
//! padded block layout of one message.
//!
//!     cargo run --example sha1_golden

use hashvault::primitives::{pad_message, Sha1};

fn main() {
    for salt in ["01", "10", "11", "00"] {
        let mut h = Sha1::new();
        h.update(salt.as_bytes());
        h.update(b"123456");
        println!("({}, {salt}123456)", h.finalize());
    }

    let padded = pad_message(b"01123456");
    println!(
        "blocks={} message_len={}",
        padded.block_count(),
        padded.message_len()
    );
    for block in padded.blocks() {
        println!("{}", hex::encode(block));
    }
}
