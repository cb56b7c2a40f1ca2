//! Finite permutations in one-line notation and the algebra on them:
//! flattening, direct sums, sum decomposition and one-point deletions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// allowed and is the identity for [`Perm::direct_sum`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm(Vec<u32>);

impl Perm {
    /// Validates that `values` is a rearrangement of `1..=n`.
    /// Duplicates are reported first; an out-of-range value is reported as
    /// the smallest value of `1..=n` it displaced.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        let mut out_of_range = None;
        for &v in &values {
            if v == 0 || v as usize > n {
                out_of_range.get_or_insert(v);
                continue;
            }
            if seen[v as usize] {
                return Err(Error::DuplicatedValue { value: v as u64 });
            }
            seen[v as usize] = true;
        }
        if let Some(v) = out_of_range {
            return Err(match (1..=n).find(|&i| !seen[i]) {
                Some(missing) if v != 0 => Error::MissingValue { value: missing as u64 },
                _ => Error::ValueOutOfRange { value: v as u64, len: n },
            });
        }
        Ok(Perm(values))
    }

    /// Caller guarantees `values` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Perm::new(values.clone()).is_ok(), "{values:?}");
        Perm(values)
    }

    pub fn empty() -> Self {
        Perm(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u32).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Perm((1..=n as u32).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    /// `α ⊕ β`: `self` followed by `other` shifted above it.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.len() as u32;
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.0);
        values.extend(other.0.iter().map(|&v| v + shift));
        Perm(values)
    }

    /// Splits into the finest list of indecomposable summands. The empty
    /// permutation yields an empty list.
    pub fn sum_components(&self) -> Vec<Perm> {
        let mut parts = Vec::new();
        let mut start = 0;
        let mut max = 0u32;
        for (i, &v) in self.0.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                let offset = start as u32;
                parts.push(Perm(self.0[start..=i].iter().map(|&x| x - offset).collect()));
                start = i + 1;
            }
        }
        parts
    }

    /// Positions `b` (1-based) such that the first `b` entries are exactly `1..=b`.
    pub fn component_boundaries(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut max = 0u32;
        for (i, &v) in self.0.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                out.push(i + 1);
            }
        }
        out
    }

    pub fn is_indecomposable(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        Ok(self.component_boundaries().len() == 1)
    }

    /// The permutation obtained by deleting the entry at 0-based `index`.
    pub fn delete(&self, index: usize) -> Perm {
        let removed = self.0[index];
        Perm(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// All one-point deletions, in position order, duplicates kept.
    pub fn deletions(&self) -> Vec<Perm> {
        (0..self.len()).map(|i| self.delete(i)).collect()
    }

    /// Inserts `value` (in `1..=n+1`) at 0-based `position`, shifting
    /// existing values `>= value` up by one.
    pub fn insert(&self, position: usize, value: u32) -> Perm {
        let mut values = Vec::with_capacity(self.len() + 1);
        for (i, &v) in self.0.iter().enumerate() {
            if i == position {
                values.push(value);
            }
            values.push(if v >= value { v + 1 } else { v });
        }
        if position == self.len() {
            values.push(value);
        }
        Perm(values)
    }

    /// Every permutation of length `n + 1` with `self` as a one-point deletion.
    pub fn one_point_extensions(&self) -> impl Iterator<Item = Perm> + '_ {
        let n = self.len();
        (0..=n).flat_map(move |pos| (1..=n as u32 + 1).map(move |val| self.insert(pos, val)))
    }

    /// `self` with the value `n + 1` inserted at every position.
    pub fn max_insertions(&self) -> impl Iterator<Item = Perm> + '_ {
        let top = self.len() as u32 + 1;
        (0..=self.len()).map(move |pos| self.insert(pos, top))
    }

    pub fn reverse(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Perm {
        let n = self.len() as u32 + 1;
        Perm(self.0.iter().map(|&v| n - v).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Perm(inv)
    }
}

/// The permutation order isomorphic to `seq`. Entries must be pairwise
/// distinct and mutually comparable (so NaN is rejected).
pub fn flatten<T: PartialOrd>(seq: &[T]) -> Result<Perm> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    let mut bad = None;
    order.sort_by(|&a, &b| match seq[a].partial_cmp(&seq[b]) {
        Some(o) => o,
        None => {
            bad.get_or_insert((a.min(b), a.max(b)));
            Ordering::Equal
        }
    });
    if let Some((first, second)) = bad {
        return Err(Error::IndistinctEntries { first: first + 1, second: second + 1 });
    }
    for w in order.windows(2) {
        if seq[w[0]].partial_cmp(&seq[w[1]]) != Some(Ordering::Less) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::IndistinctEntries { first: a + 1, second: b + 1 });
        }
    }
    let mut values = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Ok(Perm(values))
}

/// Flattens a sequence of integers already known to be distinct. Repeated
/// values produce a non-permutation (caught by a debug assertion).
pub(crate) fn flatten_distinct(seq: &[u64]) -> Perm {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut values = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Perm::from_vec_unchecked(values)
}

/// Direct sum of a list of permutations, left to right.
pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a Perm>) -> Perm {
    parts.into_iter().fold(Perm::empty(), |acc, p| acc.direct_sum(p))
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;
    fn try_from(values: Vec<u32>) -> Result<Self> {
        Perm::new(values)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let compact = self.len() <= 9;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Space- or comma-separated one-line notation ("3 1 4 2"), or the compact
/// digit form ("3142") for lengths up to 9. "ε" or "" is the empty permutation.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_err = |reason: String| Error::Parse { input: s.to_string(), reason };
        if t.is_empty() || t == "ε" || t == "e" {
            return Ok(Perm::empty());
        }
        let values: Vec<u32> = if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| w.parse::<u32>().map_err(|e| parse_err(format!("{w:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            if t.len() > 9 {
                return Err(parse_err("compact digit form only supports lengths up to 9".into()));
            }
            t.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| parse_err(format!("{c:?} is not a digit"))))
                .collect::<Result<_>>()?
        };
        Perm::new(values)
    }
}
