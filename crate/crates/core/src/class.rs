//! Finitely based classes `A(B)` and level-by-level enumeration of closed sets.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::involves;
use crate::perm::Perm;

/// Membership oracle for a closed (downward closed) set of permutations.
pub trait PatternClass: Sync {
    fn contains(&self, g: &Perm) -> bool;
}

/// Anything that can list its members length by length.
pub trait LevelSource {
    /// `levels[n]` holds the sorted members of length `n`, for `n <= max_n`.
    fn levels(&self, max_n: usize) -> Result<Vec<Vec<Perm>>>;
}

/// Iterator over the levels of a closed set. Each level is produced by
/// inserting the new maximum at every position of every member of the
/// previous level; closure guarantees nothing is missed and distinct
/// parents never produce the same child. A child with a deletion outside
/// the previous level cannot be a member, so the oracle is only consulted
/// for the others.
pub struct Levels<'a, C: ?Sized> {
    class: &'a C,
    next: Option<Vec<Perm>>,
}

impl<'a, C: PatternClass + ?Sized> Levels<'a, C> {
    pub fn new(class: &'a C) -> Self {
        let root = Perm::empty();
        let first = if class.contains(&root) { vec![root] } else { Vec::new() };
        Levels { class, next: Some(first) }
    }
}

impl<C: PatternClass + ?Sized> Iterator for Levels<'_, C> {
    type Item = Vec<Perm>;

    fn next(&mut self) -> Option<Vec<Perm>> {
        let current = self.next.take()?;
        let class = self.class;
        let known: HashSet<&Perm> = current.iter().collect();
        let mut children: Vec<Perm> = current
            .par_iter()
            .flat_map_iter(|g| {
                g.max_insertions()
                    .filter(|c| c.deletions().iter().all(|d| known.contains(d)) && class.contains(c))
                    .collect::<Vec<_>>()
            })
            .collect();
        children.par_sort_unstable();
        self.next = Some(children);
        Some(current)
    }
}

/// Levels `0..=max_n` of any closed set.
pub fn levels_of<C: PatternClass + ?Sized>(class: &C, max_n: usize) -> Vec<Vec<Perm>> {
    Levels::new(class).take(max_n + 1).collect()
}

/// The class of permutations avoiding every element of a finite basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteBasisClass {
    basis: Vec<Perm>,
    #[serde(skip)]
    max_len: usize,
}

#[derive(Deserialize)]
struct RawClass {
    basis: Vec<Perm>,
}

impl<'de> Deserialize<'de> for FiniteBasisClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawClass::deserialize(d).map(|raw| FiniteBasisClass::new(raw.basis))
    }
}

impl FiniteBasisClass {
    /// Builds `A(raw)`, discarding any element that involves another so the
    /// stored basis is an antichain. The basis is kept sorted.
    pub fn new(raw: impl IntoIterator<Item = Perm>) -> Self {
        let candidates: BTreeSet<Perm> = raw.into_iter().collect();
        let basis: Vec<Perm> = candidates
            .iter()
            .filter(|g| !candidates.iter().any(|h| h != *g && h.len() <= g.len() && involves(g, h)))
            .cloned()
            .collect();
        let max_len = basis.iter().map(Perm::len).max().unwrap_or(0);
        FiniteBasisClass { basis, max_len }
    }

    pub fn basis(&self) -> &[Perm] {
        &self.basis
    }

    /// Length of the longest basis element, 0 for the empty basis.
    pub fn max_basis_len(&self) -> usize {
        self.max_len
    }

    /// `A(B ∪ {extra})`.
    pub fn with_extra(&self, extra: Perm) -> Self {
        FiniteBasisClass::new(self.basis.iter().cloned().chain(std::iter::once(extra)))
    }

    pub fn members(&self, n: usize) -> Vec<Perm> {
        Levels::new(self).nth(n).unwrap_or_default()
    }

    /// `counts[n]` = number of members of length `n`, for `n` in `0..=max_n`.
    pub fn count_profile(&self, max_n: usize) -> Vec<usize> {
        Levels::new(self).take(max_n + 1).map(|l| l.len()).collect()
    }

    /// Closed under direct sums iff every basis element is indecomposable.
    pub fn is_sum_complete(&self) -> bool {
        self.first_decomposable().is_none()
    }

    pub fn first_decomposable(&self) -> Option<&Perm> {
        self.basis.iter().find(|b| b.sum_components().len() > 1)
    }

    pub fn final_components(&self) -> Result<FinalComponentSet> {
        if self.basis.is_empty() {
            return Err(Error::EmptyBasis);
        }
        Ok(FinalComponentSet::new(self.basis.iter().filter_map(|b| b.sum_components().pop())))
    }
}

impl PatternClass for FiniteBasisClass {
    fn contains(&self, g: &Perm) -> bool {
        self.basis.iter().all(|b| b.len() > g.len() || !involves(g, b))
    }
}

impl LevelSource for FiniteBasisClass {
    fn levels(&self, max_n: usize) -> Result<Vec<Vec<Perm>>> {
        Ok(levels_of(self, max_n))
    }
}

/// All patterns of a finite host sequence (the closed set `Sub(host)`).
#[derive(Clone, Debug)]
pub struct PrefixHost {
    host: Vec<u32>,
    /// `(first_limit, max_gap)` when every pattern is known to have an
    /// embedding of that shape; see [`crate::matching::embeds_within`].
    shape: Option<(usize, usize)>,
}

impl PrefixHost {
    pub fn new(host: &Perm) -> Self {
        PrefixHost { host: host.values().to_vec(), shape: None }
    }

    pub fn from_values(values: &[u64]) -> Self {
        PrefixHost { host: crate::perm::flatten_distinct(values).into_values(), shape: None }
    }

    /// Restricts the embedding search; sound only if every pattern of the
    /// host has an embedding starting before `first_limit` with gaps below
    /// `max_gap`.
    pub fn with_shape(mut self, first_limit: usize, max_gap: usize) -> Self {
        self.shape = Some((first_limit, max_gap));
        self
    }

    pub fn host(&self) -> &[u32] {
        &self.host
    }
}

impl PatternClass for PrefixHost {
    fn contains(&self, g: &Perm) -> bool {
        match self.shape {
            Some((first, gap)) => crate::matching::embeds_within(&self.host, g, first, gap),
            None => crate::matching::embeds(&self.host, g),
        }
    }
}

/// The set `C` of final sum components of basis elements. Every member is
/// indecomposable by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalComponentSet {
    components: Vec<Perm>,
}

impl FinalComponentSet {
    pub fn new(items: impl IntoIterator<Item = Perm>) -> Self {
        let set: BTreeSet<Perm> = items.into_iter().collect();
        debug_assert!(set.iter().all(|c| c.sum_components().len() == 1));
        FinalComponentSet { components: set.into_iter().collect() }
    }

    pub fn components(&self) -> &[Perm] {
        &self.components
    }

    /// `A(C)` with `C` normalized to an antichain.
    pub fn avoidance_class(&self) -> FiniteBasisClass {
        FiniteBasisClass::new(self.components.iter().cloned())
    }

    pub fn max_len(&self) -> usize {
        self.components.iter().map(Perm::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn class(items: &[&str]) -> FiniteBasisClass {
        FiniteBasisClass::new(items.iter().map(|s| p(s)))
    }

    fn brute_members(c: &FiniteBasisClass, n: usize) -> Vec<Perm> {
        // Heap-free: permutations of 1..n in lexicographic order, filtered.
        fn all(n: usize) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in all(n - 1) {
                for pos in 0..n {
                    let mut v = rest.clone();
                    v.insert(pos, n as u32);
                    out.push(v);
                }
            }
            out
        }
        let mut v: Vec<Perm> = all(n)
            .into_iter()
            .map(|v| Perm::new(v).unwrap())
            .filter(|g| c.basis().iter().all(|b| !involves(g, b)))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn contains_examples() {
        let two_seg = class(&["321", "3142", "2143"]);
        assert!(two_seg.contains(&p("1324")));
        assert!(!two_seg.contains(&p("2143")));
        assert!(class(&["21"]).contains(&p("123")));
        assert!(!class(&["21"]).contains(&p("132")));
    }

    #[test]
    fn members_examples() {
        let layered = class(&["231", "312"]);
        assert_eq!(layered.members(3), vec![p("123"), p("132"), p("213"), p("321")]);
        assert_eq!(layered.members(0), vec![Perm::empty()]);
        let two_seg = class(&["321", "3142", "2143"]);
        assert_eq!(two_seg.members(3).len(), 5);
        assert!(!two_seg.members(3).contains(&p("321")));
    }

    #[test]
    fn members_match_filtered_symmetric_group() {
        for c in [class(&["231", "312"]), class(&["321", "3142", "2143"]), class(&["123"]), class(&["2413", "3142"])] {
            for n in 0..=7 {
                assert_eq!(c.members(n), brute_members(&c, n));
            }
        }
    }

    #[test]
    fn count_profiles() {
        assert_eq!(class(&["231", "312"]).count_profile(6), vec![1, 1, 2, 4, 8, 16, 32]);
        assert_eq!(class(&["321", "3142", "2143"]).count_profile(5), vec![1, 1, 2, 5, 12, 27]);
        assert_eq!(class(&[]).count_profile(4), vec![1, 1, 2, 6, 24]);
        assert_eq!(class(&["1"]).count_profile(3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(class(&["21", "321"]).basis(), &[p("21")]);
        assert_eq!(class(&["321", "3142", "2143"]).basis(), &[p("2143"), p("3142"), p("321")]);
        assert!(class(&[]).basis().is_empty());
        assert_eq!(class(&["321", "3142", "2143"]).max_basis_len(), 4);
        assert_eq!(class(&[]).max_basis_len(), 0);
    }

    #[test]
    fn sum_completeness() {
        assert!(class(&["231", "312"]).is_sum_complete());
        assert!(!class(&["321", "3142", "2143"]).is_sum_complete());
        assert!(class(&[]).is_sum_complete());
    }

    #[test]
    fn final_component_examples() {
        let c = class(&["321", "3142", "2143"]).final_components().unwrap();
        assert_eq!(c.components(), &[p("21"), p("3142"), p("321")]);
        assert_eq!(class(&["21"]).final_components().unwrap().components(), &[p("21")]);
        assert_eq!(class(&["123"]).final_components().unwrap().components(), &[p("1")]);
        assert_eq!(class(&[]).final_components(), Err(Error::EmptyBasis));
    }

    #[test]
    fn deletions_stay_in_class() {
        let c = class(&["321", "2143"]);
        let levels = levels_of(&c, 7);
        for n in 1..=7 {
            let prev: BTreeSet<&Perm> = levels[n - 1].iter().collect();
            for g in &levels[n] {
                assert!(g.deletions().iter().all(|d| prev.contains(d)));
            }
        }
    }

    #[test]
    fn class_json() {
        let c: FiniteBasisClass =
            serde_json::from_str(r#"{"basis": [[3,2,1],[3,1,4,2],[2,1,4,3],[4,3,2,1]]}"#).unwrap();
        assert_eq!(c.basis().len(), 3);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"basis":[[2,1,4,3],[3,1,4,2],[3,2,1]]}"#);
    }
}
