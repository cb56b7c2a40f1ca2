//! Minimal common superpatterns ("mergers") of two permutations.
//!
//! A permutation that is minimal among those involving both `a` and `b` is
//! covered by one embedding of each: any entry used by neither could be
//! deleted. So the candidates are exactly the ways of overlaying `a` and `b`,
//! described by a labelling of positions and a labelling of values with
//! `A`, `B` or `AB` (shared entry). Candidates are then reduced to the
//! involvement-minimal ones, which are those with no one-point deletion
//! still involving both.

use std::collections::BTreeSet;

use crate::matching::involves;
use crate::perm::Perm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Owner {
    A,
    B,
    Both,
}

fn labellings(only_a: usize, only_b: usize, both: usize) -> Vec<Vec<Owner>> {
    fn go(rest: [usize; 3], cur: &mut Vec<Owner>, out: &mut Vec<Vec<Owner>>) {
        if rest == [0, 0, 0] {
            out.push(cur.clone());
            return;
        }
        for (slot, owner) in [Owner::A, Owner::B, Owner::Both].into_iter().enumerate() {
            if rest[slot] > 0 {
                let mut next = rest;
                next[slot] -= 1;
                cur.push(owner);
                go(next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go([only_a, only_b, both], &mut Vec::new(), &mut out);
    out
}

/// Every overlay of `a` and `b` sharing exactly `shared` entries.
fn overlays(a: &Perm, b: &Perm, shared: usize, out: &mut BTreeSet<Perm>) {
    let (la, lb) = (a.len(), b.len());
    let m = la + lb - shared;
    let labels = labellings(la - shared, lb - shared, shared);
    for values in &labels {
        // rank_a[v] = the value (0-based rank in the merged permutation) of a's value v.
        let mut rank_a = vec![0usize; la + 1];
        let mut rank_b = vec![0usize; lb + 1];
        let (mut na, mut nb) = (0, 0);
        for (r, owner) in values.iter().enumerate() {
            if *owner != Owner::B {
                na += 1;
                rank_a[na] = r;
            }
            if *owner != Owner::A {
                nb += 1;
                rank_b[nb] = r;
            }
        }
        'positions: for positions in &labels {
            let mut merged = Vec::with_capacity(m);
            let (mut ia, mut ib) = (0, 0);
            for owner in positions {
                let r = match owner {
                    Owner::A => {
                        let r = rank_a[a.values()[ia] as usize];
                        ia += 1;
                        if values[r] != Owner::A {
                            continue 'positions;
                        }
                        r
                    }
                    Owner::B => {
                        let r = rank_b[b.values()[ib] as usize];
                        ib += 1;
                        if values[r] != Owner::B {
                            continue 'positions;
                        }
                        r
                    }
                    Owner::Both => {
                        let r = rank_a[a.values()[ia] as usize];
                        let s = rank_b[b.values()[ib] as usize];
                        ia += 1;
                        ib += 1;
                        if r != s || values[r] != Owner::Both {
                            continue 'positions;
                        }
                        r
                    }
                };
                merged.push(r as u32 + 1);
            }
            out.insert(Perm::from_vec_unchecked(merged));
        }
    }
}

/// The involvement-minimal permutations involving both `a` and `b`.
pub fn minimal_mergers(a: &Perm, b: &Perm) -> BTreeSet<Perm> {
    let mut candidates = BTreeSet::new();
    for shared in 0..=a.len().min(b.len()) {
        overlays(a, b, shared, &mut candidates);
    }
    candidates.into_iter().filter(|g| g.deletions().iter().all(|d| !(involves(d, a) && involves(d, b)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::FiniteBasisClass;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Perm> {
        items.iter().map(|s| p(s)).collect()
    }

    /// Filter all permutations of the admissible lengths; the oracle.
    pub(crate) fn brute_mergers(a: &Perm, b: &Perm) -> BTreeSet<Perm> {
        let all = FiniteBasisClass::new([]);
        let lo = a.len().max(b.len());
        let both: Vec<Perm> = (lo..=a.len() + b.len())
            .flat_map(|n| all.members(n))
            .filter(|g| involves(g, a) && involves(g, b))
            .collect();
        both.iter().filter(|g| !both.iter().any(|h| h.len() < g.len() && involves(g, h))).cloned().collect()
    }

    #[test]
    fn examples() {
        assert_eq!(minimal_mergers(&p("1"), &p("1")), set(&["1"]));
        assert_eq!(minimal_mergers(&p("12"), &p("21")), set(&["132", "213", "231", "312"]));
        assert_eq!(minimal_mergers(&p("21"), &p("21")), set(&["21"]));
        assert_eq!(minimal_mergers(&Perm::empty(), &p("21")), set(&["21"]));
    }

    #[test]
    fn oracle_on_frozen_pair() {
        assert_eq!(minimal_mergers(&p("12"), &p("21")), brute_mergers(&p("12"), &p("21")));
        assert_eq!(minimal_mergers(&p("132"), &p("21")), brute_mergers(&p("132"), &p("21")));
    }

    #[test]
    fn agrees_with_brute_force() {
        let all = FiniteBasisClass::new([]);
        for la in 1..=3 {
            for lb in la..=3 {
                for a in all.members(la) {
                    for b in all.members(lb) {
                        assert_eq!(minimal_mergers(&a, &b), brute_mergers(&a, &b), "{a} {b}");
                    }
                }
            }
        }
    }
}
