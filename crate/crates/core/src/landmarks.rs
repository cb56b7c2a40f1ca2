//! The landmarks `k`, `ℓ` of an ultimately periodic permutation relative to
//! a set `C` of indecomposable patterns, and the interleaved sequences
//! `u_1, u_2, …` and `v_1, v_2, …`.
//!
//! From a start `u_0 = r`, `v_i` is the position of the largest value among
//! positions `≤ u_{i-1}` and `u_i` is the last position whose value is at
//! most `π(v_i)`. Since `|π(j) − j| ≤ D`, that last position is at most
//! `π(v_i) + D`, so every step is a finite scan.

use serde::{Deserialize, Serialize};

use crate::class::FinalComponentSet;
use crate::error::{Error, Result};
use crate::matching::{last_end, last_start};
use crate::periodic::PeriodicPerm;
use crate::perm::{flatten_distinct, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landmarks {
    /// Last position at which an element of `C` begins.
    pub k: usize,
    /// Last position at which an element of `C` ends.
    pub l: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// Prefix length on which `k` and `l` were found to be settled.
    pub horizon: usize,
}

/// `N + 4 (b + 1) (P + 2D)`.
pub fn default_horizon(p: &PeriodicPerm, b: usize) -> usize {
    p.start() + 4 * (b + 1) * (p.period() + 2 * p.displacement() as usize)
}

fn last_positions(p: &PeriodicPerm, c: &FinalComponentSet, horizon: usize) -> Option<(usize, usize)> {
    let host = flatten_distinct(&p.prefix(horizon)).into_values();
    let k = c.components().iter().filter_map(|g| last_start(&host, g)).max()?;
    let l = c.components().iter().filter_map(|g| last_end(&host, g)).max()?;
    Some((k, l))
}

/// Computes `k` and `ℓ` on prefixes of length `horizon`, `2·horizon` and
/// `4·horizon`, accepting them once two consecutive lengths agree, then
/// `count` entries of the `u`/`v` sequences started from `ℓ`.
pub fn landmarks(p: &PeriodicPerm, c: &FinalComponentSet, horizon: usize, count: usize) -> Result<Landmarks> {
    let horizon = horizon.max(p.window().len());
    let tries = [horizon, 2 * horizon, 4 * horizon];
    let found: Vec<Option<(usize, usize)>> = tries.iter().map(|&h| last_positions(p, c, h)).collect();
    if found.iter().all(Option::is_none) {
        return Err(Error::NoComponentEmbedding);
    }
    let settled = (0..2).find(|&i| found[i].is_some() && found[i] == found[i + 1]);
    let Some(i) = settled else {
        return Err(Error::HorizonTooSmall { horizon: tries[2] });
    };
    let (k, l) = found[i].unwrap();
    let (u, v) = uv_sequences(p, l, count)?;
    Ok(Landmarks { k, l, u, v, horizon: tries[i] })
}

/// The first `count` entries of `U(r)` and `V(r)`, with the interleaving
/// inequalities checked before returning.
pub fn uv_sequences(p: &PeriodicPerm, r: usize, count: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    assert!(r >= 1, "positions are 1-based");
    // The prefix-max excess M(b) − b is P-periodic once b >= N + P − 1, so a
    // boundary at or after r shows up within one period past that point.
    let scan_to = r.max(p.start() + p.period()) + p.period();
    let mut max = 0;
    for b in 1..=scan_to {
        max = max.max(p.term(b));
        if b >= r && max == b as u64 {
            return Err(Error::FiniteComponent { position: r, boundary: b });
        }
    }

    let d = p.displacement() as usize;
    let (mut u, mut v) = (Vec::with_capacity(count), Vec::with_capacity(count));
    let (mut prev_u, mut best, mut best_at) = (r, 0u64, 0usize);
    let mut scanned = 0;
    for _ in 0..count {
        for j in scanned + 1..=prev_u {
            let t = p.term(j);
            if t > best {
                best = t;
                best_at = j;
            }
        }
        scanned = prev_u;
        let limit = best as usize + d;
        let next_u = (1..=limit).rev().find(|&j| p.term(j) <= best).expect("π(v_i) itself qualifies");
        if next_u <= prev_u {
            return Err(Error::FiniteComponent { position: r, boundary: prev_u });
        }
        v.push(best_at);
        u.push(next_u);
        prev_u = next_u;
    }
    check_interleaving(p, &u, &v)?;
    Ok((u, v))
}

/// `v_1 < v_2 < u_1 < v_3 < u_2 < …` and
/// `π(u_1) < π(v_1) < π(u_2) < π(v_2) < …`.
pub fn check_interleaving(p: &PeriodicPerm, u: &[usize], v: &[usize]) -> Result<()> {
    let fail = |index: usize, detail: String| Err(Error::Interleaving { index, detail });
    if v.len() >= 2 && v[0] >= v[1] {
        return fail(1, format!("v_1 = {} is not before v_2 = {}", v[0], v[1]));
    }
    for i in 0..u.len() {
        if i + 1 < v.len() && v[i + 1] >= u[i] {
            return fail(i + 1, format!("v_{} = {} is not before u_{} = {}", i + 2, v[i + 1], i + 1, u[i]));
        }
        if i + 2 < v.len() && u[i] >= v[i + 2] {
            return fail(i + 1, format!("u_{} = {} is not before v_{} = {}", i + 1, u[i], i + 3, v[i + 2]));
        }
        if p.term(u[i]) >= p.term(v[i]) {
            return fail(i + 1, format!("π(u_{0}) >= π(v_{0})", i + 1));
        }
        if i + 1 < u.len() && p.term(v[i]) >= p.term(u[i + 1]) {
            return fail(i + 1, format!("π(v_{}) >= π(u_{})", i + 1, i + 2));
        }
    }
    Ok(())
}

/// `σ(i)`: the flattened prefix `π(1) … π(u_i)`.
pub fn sigma(p: &PeriodicPerm, u_i: usize) -> Perm {
    flatten_distinct(&p.prefix(u_i))
}

/// `σ′(i)`: the flattened subsequence of all terms with value at most `π(v_i)`.
pub fn sigma_prime(p: &PeriodicPerm, v_i: usize) -> Perm {
    let cap = p.term(v_i);
    let terms: Vec<u64> =
        (1..=cap as usize + p.displacement() as usize).map(|j| p.term(j)).filter(|&t| t <= cap).collect();
    flatten_distinct(&terms)
}
