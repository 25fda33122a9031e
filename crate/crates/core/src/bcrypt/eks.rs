use super::blowfish::BlowfishState;
use crate::error::{Error, Result};

/// The bcrypt work factor: key expansion repeats `2^cost` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CostParameter(u8);

impl CostParameter {
    pub const MIN: u8 = 4;
    pub const MAX: u8 = 31;

    pub fn new(cost: u8) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&cost) {
            return Err(Error::invalid(format!(
                "bcrypt cost must be in {}..={}, got {cost}",
                Self::MIN,
                Self::MAX
            )));
        }
        Ok(CostParameter(cost))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn iterations(self) -> u64 {
        1u64 << self.0
    }
}

impl TryFrom<u8> for CostParameter {
    type Error = Error;

    fn try_from(cost: u8) -> Result<Self> {
        Self::new(cost)
    }
}

/// EksBlowfish setup: one salted expansion, then `2^cost` rounds of
/// unsalted expansion with the key and then the salt.
pub fn eksblowfish_setup(
    cost: CostParameter,
    salt: &[u8; 16],
    key: &[u8],
) -> Result<BlowfishState> {
    eksblowfish_setup_observed(cost, salt, key, || {})
}

/// [`eksblowfish_setup`] that calls `on_expand` once per key expansion.
pub fn eksblowfish_setup_observed(
    cost: CostParameter,
    salt: &[u8; 16],
    key: &[u8],
    mut on_expand: impl FnMut(),
) -> Result<BlowfishState> {
    const ZERO: [u8; 16] = [0; 16];

    let mut state = BlowfishState::init();
    state.expand_key(salt, key)?;
    on_expand();
    for _ in 0..cost.iterations() {
        state.expand_key(&ZERO, key)?;
        on_expand();
        state.expand_key(&ZERO, salt)?;
        on_expand();
    }
    Ok(state)
}
