//! Blowfish, the EksBlowfish expensive key schedule, and a bcrypt-style
//! password hash on top of it.
//!
//! Records use the project-local text form
//! `$2x$<cost>$<32 hex salt><46 hex verifier>`. The verifier bytes are the
//! same 23 bytes a `$2b$` hash carries, so only the encoding differs.

mod blowfish;
mod consts;
mod eks;
mod record;

pub use blowfish::{BlowfishState, BLOCK_LEN, MAX_KEY_LEN};
pub use eks::{eksblowfish_setup, eksblowfish_setup_observed, CostParameter};
pub use record::{bcrypt_hash, bcrypt_key, bcrypt_verify, BcryptRecord, SALT_LEN, VERIFIER_LEN};
