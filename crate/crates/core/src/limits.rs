//! Resource guards for enumerations and pairwise sweeps.

use crate::error::{Error, Result};

/// Largest number of polynomials an enumeration may materialize by default.
pub const MAX_ENUMERATION: u128 = 1 << 26;

/// Largest number of codeword pairs a brute-force distance sweep may visit.
pub const MAX_PAIRS: u128 = 10_000_000;

pub const OVERRIDE_ENV: &str = "FORMCODE_CAPACITY_OVERRIDE";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub unlimited: bool,
}

impl Limits {
    pub fn guarded() -> Self {
        Limits { unlimited: false }
    }

    pub fn unlimited() -> Self {
        Limits { unlimited: true }
    }

    /// Guarded unless `FORMCODE_CAPACITY_OVERRIDE=1`.
    pub fn from_env() -> Self {
        Limits {
            unlimited: std::env::var(OVERRIDE_ENV).is_ok_and(|v| v.trim() == "1"),
        }
    }

    pub fn check_enumeration(&self, requested: u128) -> Result<()> {
        self.check(requested, MAX_ENUMERATION)
    }

    pub fn check_pairs(&self, requested: u128) -> Result<()> {
        self.check(requested, MAX_PAIRS)
    }

    fn check(&self, requested: u128, limit: u128) -> Result<()> {
        if self.unlimited || requested <= limit {
            Ok(())
        } else {
            Err(Error::Capacity { requested, limit })
        }
    }
}
