//! Involvement testing by backtracking.
//!
//! Pattern entries are placed left to right. For each pattern index we
//! precompute the earlier index holding the nearest smaller value and the
//! earlier index holding the nearest larger value; a host entry is a valid
//! candidate only if it lies strictly between the host values already
//! matched to those two neighbours. That is enough to keep the partial
//! match order isomorphic to the pattern prefix.

use std::ops::ControlFlow;

use crate::perm::Perm;

const NONE: usize = usize::MAX;

/// Precomputed neighbour tables for one pattern.
#[derive(Debug, Clone)]
pub struct Matcher<'a> {
    pattern: &'a [u32],
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl<'a> Matcher<'a> {
    pub fn new(pattern: &'a Perm) -> Self {
        let values = pattern.values();
        let k = values.len();
        let mut lower = vec![NONE; k];
        let mut upper = vec![NONE; k];
        for i in 0..k {
            for j in 0..i {
                if values[j] < values[i] && (lower[i] == NONE || values[j] > values[lower[i]]) {
                    lower[i] = j;
                }
                if values[j] > values[i] && (upper[i] == NONE || values[j] < values[upper[i]]) {
                    upper[i] = j;
                }
            }
        }
        Matcher { pattern: values, lower, upper }
    }

    /// Visits embeddings (0-based host positions, one per pattern entry).
    /// `window(i, prev)` restricts the host positions allowed for pattern
    /// index `i` to an inclusive range; `prev` is the position chosen for
    /// index `i - 1`.
    pub fn visit<B>(
        &self,
        host: &[u32],
        window: &dyn Fn(usize, Option<usize>) -> (usize, usize),
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>,
    ) -> Option<B> {
        let k = self.pattern.len();
        if k > host.len() {
            return None;
        }
        let mut pos = vec![0usize; k];
        match self.place(host, 0, 0, &mut pos, window, visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn place<B>(
        &self,
        host: &[u32],
        i: usize,
        from: usize,
        pos: &mut [usize],
        window: &dyn Fn(usize, Option<usize>) -> (usize, usize),
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let k = self.pattern.len();
        if i == k {
            return visit(pos);
        }
        let lo_val = match self.lower[i] {
            NONE => 0,
            j => host[pos[j]],
        };
        let hi_val = match self.upper[i] {
            NONE => u32::MAX,
            j => host[pos[j]],
        };
        if hi_val <= lo_val + 1 && self.upper[i] != NONE {
            return ControlFlow::Continue(());
        }
        let (wlo, whi) = window(i, i.checked_sub(1).map(|j| pos[j]));
        let first = from.max(wlo);
        let last = (host.len() - (k - i)).min(whi);
        let mut p = first;
        while p <= last {
            let h = host[p];
            if h > lo_val && h < hi_val {
                pos[i] = p;
                self.place(host, i + 1, p + 1, pos, window, visit)?;
            }
            p += 1;
        }
        ControlFlow::Continue(())
    }
}

fn unrestricted(_: usize, _: Option<usize>) -> (usize, usize) {
    (0, usize::MAX)
}

/// Like [`embeds`], but only tries embeddings whose first entry is among the
/// first `first_limit` host positions and whose consecutive entries are at
/// most `max_gap` positions apart.
pub fn embeds_within(host: &[u32], pattern: &Perm, first_limit: usize, max_gap: usize) -> bool {
    let window = |i: usize, prev: Option<usize>| match prev {
        None if i == 0 => (0, first_limit.saturating_sub(1)),
        None => (0, usize::MAX),
        Some(p) => (p + 1, p.saturating_add(max_gap)),
    };
    Matcher::new(pattern).visit(host, &window, &mut |_| ControlFlow::Break(())).is_some()
}

/// Whether `pattern` is order isomorphic to a subsequence of `host`.
/// `host` may hold any pairwise distinct values.
pub fn embeds(host: &[u32], pattern: &Perm) -> bool {
    Matcher::new(pattern).visit(host, &unrestricted, &mut |_| ControlFlow::Break(())).is_some()
}

/// `pattern ⪯ host`.
pub fn involves(host: &Perm, pattern: &Perm) -> bool {
    embeds(host.values(), pattern)
}

/// First embedding found, as 0-based host positions.
pub fn find_embedding(host: &[u32], pattern: &Perm) -> Option<Vec<usize>> {
    Matcher::new(pattern).visit(host, &unrestricted, &mut |pos| ControlFlow::Break(pos.to_vec()))
}

/// Number of embeddings, counting at most `cap`.
pub fn count_embeddings(host: &[u32], pattern: &Perm, cap: usize) -> usize {
    let mut count = 0;
    Matcher::new(pattern).visit(host, &unrestricted, &mut |_| {
        count += 1;
        if count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

/// Greatest 1-based position at which some embedding of `pattern` begins.
pub fn last_start(host: &[u32], pattern: &Perm) -> Option<usize> {
    if pattern.is_empty() {
        return None;
    }
    let m = Matcher::new(pattern);
    // An embedding starting at or after `s` exists iff the suffix from `s`
    // contains the pattern; that predicate is monotone in `s`.
    let exists_from = |s: usize| {
        m.visit(host, &|i, _| if i == 0 { (s, usize::MAX) } else { (0, usize::MAX) }, &mut |_| ControlFlow::Break(()))
            .is_some()
    };
    if !exists_from(0) {
        return None;
    }
    let (mut good, mut bad) = (0usize, host.len());
    while bad - good > 1 {
        let mid = (good + bad) / 2;
        if exists_from(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good + 1)
}

/// Greatest 1-based position at which some embedding of `pattern` ends.
pub fn last_end(host: &[u32], pattern: &Perm) -> Option<usize> {
    if pattern.is_empty() {
        return None;
    }
    let m = Matcher::new(pattern);
    let k = pattern.len();
    (k - 1..host.len()).rev().find_map(|e| {
        m.visit(host, &|i, _| if i == k - 1 { (e, e) } else { (0, usize::MAX) }, &mut |_| ControlFlow::Break(()))
            .map(|()| e + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    /// Every subsequence, flattened; the independent oracle.
    fn brute_involves(host: &Perm, pattern: &Perm) -> bool {
        let n = host.len();
        let k = pattern.len();
        if k > n {
            return false;
        }
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| host.values()[i]).collect();
            crate::perm::flatten(&sub).unwrap() == *pattern
        })
    }

    #[test]
    fn worked_examples() {
        assert!(involves(&p("146325"), &p("1324")));
        let g = p("2413");
        assert!(involves(&g, &g));
        assert!(!involves(&p("123"), &p("321")));
        assert!(involves(&p("1"), &Perm::empty()));
        assert!(involves(&Perm::empty(), &Perm::empty()));
        assert!(!involves(&Perm::empty(), &p("1")));
    }

    #[test]
    fn counting_and_landmarks() {
        let host = p("2413");
        assert_eq!(count_embeddings(host.values(), &p("21"), 10), 3);
        assert_eq!(count_embeddings(host.values(), &p("12"), 10), 3);
        assert_eq!(count_embeddings(host.values(), &p("12"), 2), 2);
        assert_eq!(last_start(host.values(), &p("21")), Some(2));
        assert_eq!(last_end(host.values(), &p("21")), Some(4));
        assert_eq!(last_start(host.values(), &p("321")), None);
        assert_eq!(last_end(&[5, 1, 4, 2, 9, 3], &p("21")), Some(6));
        assert_eq!(find_embedding(&[10, 40, 20, 30], &p("132")), Some(vec![0, 1, 2]));
    }

    #[test]
    fn agrees_with_brute_force_small() {
        // Full exhaustive sweep (length <= 7 hosts) lives in the acceptance suite.
        let perms = |n: usize| crate::class::FiniteBasisClass::new([]).members(n);
        for n in 0..=5 {
            for host in perms(n) {
                for k in 0..=n.min(4) {
                    for pat in perms(k) {
                        assert_eq!(involves(&host, &pat), brute_involves(&host, &pat), "{host} {pat}");
                    }
                }
            }
        }
    }
}
