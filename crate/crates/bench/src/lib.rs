//! Shared fixtures for the benchmarks.

use permclass::{FiniteBasisClass, Perm};

pub fn perm(s: &str) -> Perm {
    s.parse().expect("fixture permutation")
}

pub fn class(items: &[&str]) -> FiniteBasisClass {
    FiniteBasisClass::new(items.iter().map(|s| perm(s)))
}

/// A length-`n` host with plenty of structure: the increasing oscillation,
/// flattened.
pub fn oscillation_host(n: usize) -> Perm {
    let values = permclass::families::increasing_oscillation().prefix(n);
    permclass::flatten(&values).expect("distinct terms")
}
