//! Rainbow tables: chains of alternating hash and per-column reduction
//! steps, of which only the first and last plaintext are stored.
//!
//! A chain of length `n` starting at `P0` is
//!
//! ```text
//! P0 -hash-> C0 -reduce(.,0)-> P1 -hash-> C1 -> ... -reduce(.,n-1)-> Pn
//! ```
//!
//! and the table keeps `(P0, Pn)` only. The plaintexts a table can invert
//! are `P0..P(n-1)` of every chain.

mod domain;
mod file;
mod table;

pub use domain::{reduce, ReductionDomain};
pub use file::{FORMAT_VERSION, MAGIC};
pub use table::{
    build_table, lookup, walk_chain, ChainRecord, CrackResult, RainbowTable, StartSequence,
    TableParams,
};
