//! Resource guards shared by every module.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::dense_symbols`].
pub const DENSE_BUDGET_ENV: &str = "UHJP_DENSE_BUDGET";

/// Guards that turn resource exhaustion into explicit errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of symbols materialized densely, and maximum fan-out
    /// of a derived coloring evaluation.
    pub dense_symbols: u64,
    /// Maximum number of decimal digits kept exactly in a [`crate::Magnitude`].
    pub digit_guard: u64,
    /// Maximum number of base-oracle queries spent verifying one class of an
    /// intermediate result. Classes beyond it are recorded as unchecked.
    pub verify_cost: u64,
    /// Maximum number of Cayley table entries a constructed group may have.
    pub table_entries: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dense_symbols: 1_000_000,
            digit_guard: 10_000,
            verify_cost: 100_000,
            table_entries: 4_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with the dense budget read from `UHJP_DENSE_BUDGET` if set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(DENSE_BUDGET_ENV) {
            limits.dense_symbols = raw.trim().parse().map_err(|_| {
                Error::InvalidInput(format!(
                    "{DENSE_BUDGET_ENV} must be a decimal integer, got {raw:?}"
                ))
            })?;
        }
        Ok(limits)
    }

    pub fn with_dense_symbols(mut self, n: u64) -> Self {
        self.dense_symbols = n;
        self
    }

    pub fn with_digit_guard(mut self, n: u64) -> Self {
        self.digit_guard = n;
        self
    }

    pub fn with_verify_cost(mut self, n: u64) -> Self {
        self.verify_cost = n;
        self
    }

    /// Bit length corresponding to the digit guard.
    pub fn guard_bits(&self) -> u64 {
        // log2(10) < 3.33
        self.digit_guard.saturating_mul(333) / 100 + 1
    }
}
