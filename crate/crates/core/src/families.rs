//! Shipped example permutations and the explicit families built from them.

use crate::periodic::PeriodicPerm;
use crate::perm::{flatten_distinct, Perm};

/// `2 4 1 6 3 8 5 …`: every term after the first two is two more than the
/// term two places earlier.
pub fn increasing_oscillation() -> PeriodicPerm {
    PeriodicPerm::new(vec![2, 4, 1, 6, 3], 2, 2).expect("valid fixture")
}

/// `2 3 5 1 7 8 4 10 6 12 13 9 15 11 …`: an increasing oscillation whose
/// left maxima are doubled into adjacent increasing pairs every fifth term.
pub fn twin_oscillation() -> PeriodicPerm {
    PeriodicPerm::new(vec![2, 3, 5, 1, 7, 8, 4, 10, 6, 12, 13, 9, 15, 11], 5, 5).expect("valid fixture")
}

/// `4 2 6 1 8 3 10 5 …`: indecomposable, and its only `321` is `4 2 1`.
pub fn headed_oscillation() -> PeriodicPerm {
    PeriodicPerm::new(vec![4, 2, 6, 1], 3, 2).expect("valid fixture")
}

/// Generator prefix of the layered class: decreasing runs of sizes 1, 2, 3, 4, 4.
pub const LAYERED_PREFIX: [u64; 14] = [1, 3, 2, 6, 5, 4, 10, 9, 8, 7, 14, 13, 12, 11];

/// `1 | 3 2 | 6 5 4 | …`: decreasing runs of sizes `1, 2, …, layers`.
pub fn layered_prefix(layers: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut top = 0u64;
    for size in 1..=layers as u64 {
        top += size;
        out.extend((top - size + 1..=top).rev());
    }
    out
}

/// First `len` terms of `3 2 5 1 [7 8] 4 [10 11 12] 6 [14 … 17] 9 …`.
///
/// Block `j` is the increasing run `s_j ..= s_j + j` with `s_1 = 7` and
/// `s_{j+1} = s_j + j + 2`; it is followed by the single `g_j`, where
/// `g_1 = 4` and `g_j = s_{j-1} - 1`.
pub fn growing_block_prefix(len: usize) -> Vec<u64> {
    let mut out = vec![3, 2, 5, 1];
    let (mut start, mut prev_start) = (7u64, 0u64);
    let mut j = 1u64;
    while out.len() < len {
        out.extend(start..=start + j);
        out.push(if j == 1 { 4 } else { prev_start - 1 });
        prev_start = start;
        start += j + 2;
        j += 1;
    }
    out.truncate(len);
    out
}

/// 1-based positions of the singles `1, g_1, g_2, …` in the growing-block
/// prefix, i.e. the ends of its initial segments `ξ_i`.
pub fn growing_block_segment_ends(len: usize) -> Vec<usize> {
    let mut ends = vec![4];
    let mut j = 1;
    while let Some(&last) = ends.last() {
        let next = last + j + 2;
        if next > len {
            break;
        }
        ends.push(next);
        j += 1;
    }
    ends.retain(|&e| e <= len);
    ends
}

/// `β_n`, the length-`4n + 1` basis element of the twin oscillation's class:
/// take the increasing oscillation with `2n` left maxima and double its first
/// and last left maxima.
pub fn twin_basis_element(n: usize) -> Perm {
    assert!(n >= 1, "β_n is defined for n >= 1");
    let top = 2 * n as u64;
    let mut seq = vec![2];
    for t in 2..=top {
        seq.push(2 * t);
        seq.push(2 * t - 3);
    }
    let mut scaled = Vec::with_capacity(seq.len() + 2);
    for &x in &seq {
        scaled.push(2 * x);
        if x == 2 || x == 2 * top {
            scaled.push(2 * x + 1);
        }
    }
    flatten_distinct(&scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twin_family_matches_displayed_values() {
        assert_eq!(twin_basis_element(1), "23451".parse().unwrap());
        assert_eq!(twin_basis_element(2), "235174896".parse().unwrap());
        assert_eq!(twin_basis_element(3), "2 3 5 1 7 4 9 6 11 8 12 13 10".parse().unwrap());
        for n in 1..=10 {
            assert_eq!(twin_basis_element(n).len(), 4 * n + 1);
        }
    }

    #[test]
    fn growing_block_shape() {
        assert_eq!(growing_block_prefix(16), vec![3, 2, 5, 1, 7, 8, 4, 10, 11, 12, 6, 14, 15, 16, 17, 9]);
        assert_eq!(growing_block_segment_ends(16), vec![4, 7, 11, 16]);
        let p = growing_block_prefix(200);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 200);
    }

    #[test]
    fn layered_generator() {
        assert_eq!(layered_prefix(4), LAYERED_PREFIX[..10].to_vec());
    }

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(headed_oscillation().prefix(10), vec![4, 2, 6, 1, 8, 3, 10, 5, 12, 7]);
        assert_eq!(twin_oscillation().prefix(14), vec![2, 3, 5, 1, 7, 8, 4, 10, 6, 12, 13, 9, 15, 11]);
    }
}
