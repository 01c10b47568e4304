//! Resource caps shared by the group-theoretic computations.

use std::str::FromStr;

use thiserror::Error;

pub const DEFAULT_GROUP_ORDER: usize = 24;
pub const DEFAULT_COCHAIN_DIM: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted by `group_from_spec`.
    pub group_order: usize,
    /// Largest `|G|^n · rank(M)` accepted by the bar complex in degree `n`.
    pub cochain_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { group_order: DEFAULT_GROUP_ORDER, cochain_dim: DEFAULT_COCHAIN_DIM }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad limits entry '{0}' (expected group_order=<n> or cochain_dim=<n>)")]
pub struct LimitsParseError(pub String);

impl Limits {
    /// Applies comma-separated `key=value` overrides on top of `self`.
    pub fn with_overrides(mut self, text: &str) -> Result<Self, LimitsParseError> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || LimitsParseError(item.to_string());
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "group_order" => self.group_order = value,
                "cochain_dim" => self.cochain_dim = value,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }
}

impl FromStr for Limits {
    type Err = LimitsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Limits::default().with_overrides(s)
    }
}
