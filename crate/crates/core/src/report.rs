//! Verification reports shared by the theorem checkers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorisation::EnumerationError;

/// Outcome of an exhaustive verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub lattice: String,
    pub counts: BTreeMap<String, usize>,
    pub bijection_ok: bool,
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>, lattice: impl Into<String>) -> Self {
        Self {
            theorem: theorem.into(),
            lattice: lattice.into(),
            counts: BTreeMap::new(),
            bijection_ok: true,
            witnesses: Vec::new(),
        }
    }

    pub fn count(mut self, key: &str, value: usize) -> Self {
        self.counts.insert(key.to_owned(), value);
        self
    }

    /// Adds `other`'s counts to this report's.
    pub fn absorb(&mut self, other: &VerificationReport) {
        for (k, v) in &other.counts {
            *self.counts.entry(k.clone()).or_default() += v;
        }
        self.bijection_ok &= other.bijection_ok;
        self.witnesses.extend(other.witnesses.iter().cloned());
    }

    /// Failed report for `err`.
    pub fn failed(theorem: impl Into<String>, lattice: impl Into<String>, err: &VerifyError) -> Self {
        let mut r = Self::new(theorem, lattice);
        r.bijection_ok = false;
        r.witnesses.push(err.to_string());
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("{check} fails: {witness}")]
    Failed { check: String, witness: String },
}

impl VerifyError {
    pub fn failed(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::Failed {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

/// `Err(VerifyError::Failed)` unless `cond` holds.
pub(crate) fn ensure(cond: bool, check: &str, witness: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(VerifyError::failed(check, witness()))
    }
}
