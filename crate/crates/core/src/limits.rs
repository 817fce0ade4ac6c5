//! Size caps shared by every exhaustive computation.
//!
//! Exceeding a cap is reported as [`Error::SizeCap`]; nothing is silently
//! truncated.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_CARRIER: usize = 4096;
pub const DEFAULT_MAX_EVALUATIONS: u64 = 10_000_000;

/// Constructed algebras up to this size are re-validated before they are
/// returned. Validation is cubic in the carrier size.
pub const SELF_CHECK_MAX_SIZE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier any constructed or searched algebra may have.
    pub max_carrier: usize,
    /// Largest number of assignments a single exhaustive check may visit.
    pub max_evaluations: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: DEFAULT_MAX_CARRIER,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }
}

impl Limits {
    pub fn with_max_carrier(mut self, cap: usize) -> Self {
        self.max_carrier = cap;
        self
    }

    pub fn with_max_evaluations(mut self, cap: u64) -> Self {
        self.max_evaluations = cap;
        self
    }

    pub(crate) fn check_carrier(&self, what: &'static str, size: u128) -> Result<()> {
        if size > self.max_carrier as u128 {
            return Err(Error::SizeCap {
                what,
                needed: size,
                cap: self.max_carrier as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_evaluations(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.max_evaluations as u128 {
            return Err(Error::SizeCap {
                what,
                needed: count,
                cap: self.max_evaluations as u128,
            });
        }
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn checked_power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
