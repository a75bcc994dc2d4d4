//! Resource caps shared by the Gröbner engine and the minor enumerator.

use crate::error::{Error, Result};

/// Name of the environment variable that overrides the default caps.
///
/// The value is a comma-separated list of `key=value` pairs with keys
/// `max_degree`, `max_basis`, `max_minors` and `max_pairs`, for example
/// `TORUSJUMP_CAPS=max_degree=40,max_basis=500`.
pub const CAPS_ENV: &str = "TORUSJUMP_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree allowed for any intermediate polynomial.
    pub max_degree: u32,
    /// Largest number of elements in a Gröbner basis under construction.
    pub max_basis: usize,
    /// Largest number of minors a determinantal ideal may enumerate.
    pub max_minors: usize,
    /// Largest number of S-pairs processed by a single Buchberger run.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 64,
            max_basis: 2_000,
            max_minors: 100_000,
            max_pairs: 200_000,
        }
    }
}

impl Limits {
    /// Applies overrides of the form `key=value,key=value`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("cap override {item:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("cap value in {item:?} is not an integer")))?;
            match key.trim() {
                "max_degree" => self.max_degree = value.min(u32::MAX as u64) as u32,
                "max_basis" => self.max_basis = value as usize,
                "max_minors" => self.max_minors = value as usize,
                "max_pairs" => self.max_pairs = value as usize,
                other => return Err(Error::Invalid(format!("unknown cap {other:?}"))),
            }
        }
        Ok(self)
    }

    /// Default caps with `TORUSJUMP_CAPS` applied when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Limits::default().with_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }
}
