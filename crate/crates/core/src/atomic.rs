//! Atomicity analysis of finitely based classes.
//!
//! A class is atomic iff every two members have a common superpattern in
//! the class. For a pair with none, `A(B) = A(B ∪ {α}) ∪ A(B ∪ {β})` is a
//! split into proper closed subclasses; the certificate is that every
//! minimal merger of `α` and `β` involves a basis element.

use serde::{Deserialize, Serialize};

use crate::class::{levels_of, FiniteBasisClass};
use crate::matching::involves;
use crate::merge::minimal_mergers;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    RefutedCertified,
    /// Every pair of members up to this length has a joint witness.
    EvidenceUpTo(usize),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicityReport {
    pub verdict: Verdict,
    pub witness_pair: Option<(Perm, Perm)>,
    /// Bases of the two proper subclasses whose union is the class.
    pub decomposition: Option<(FiniteBasisClass, FiniteBasisClass)>,
    /// Minimal mergers of the witness pair, each outside the class.
    pub mergers: Vec<Perm>,
    pub pairs_checked: usize,
    pub pair_len: usize,
    pub witness_len: usize,
}

/// Examines every unordered pair of members with lengths in `1..=pair_len`,
/// in ascending order of total length. Pairs are written `(α, β)` with `α`
/// the longer, or the lexicographically larger at equal length. Stops at the
/// first certified refutation.
///
/// Panics if `pair_len == 0` or `witness_len < pair_len`.
pub fn atomicity_check(class: &FiniteBasisClass, pair_len: usize, witness_len: usize) -> AtomicityReport {
    assert!(pair_len >= 1 && witness_len >= pair_len, "need 1 <= pair_len <= witness_len");
    let levels = levels_of(class, witness_len.max(2 * pair_len));

    let mut pairs: Vec<(&Perm, &Perm)> = Vec::new();
    for la in 1..=pair_len {
        for lb in 1..=la {
            for a in &levels[la] {
                for b in &levels[lb] {
                    if la > lb || b < a {
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    pairs.sort_by_key(|(a, b)| (a.len() + b.len(), (*b).clone(), (*a).clone()));

    let mut report = AtomicityReport {
        verdict: Verdict::EvidenceUpTo(pair_len),
        witness_pair: None,
        decomposition: None,
        mergers: Vec::new(),
        pairs_checked: 0,
        pair_len,
        witness_len,
    };

    for (a, b) in pairs {
        report.pairs_checked += 1;
        // A member of length <= |a|+|b| involving both exists iff some minimal
        // merger lies in the class, so this scan decides refutation and
        // usually finds the witness too.
        let joint =
            (a.len()..=a.len() + b.len()).flat_map(|n| levels[n].iter()).find(|g| involves(g, a) && involves(g, b));
        match joint {
            None => {
                let mergers: Vec<Perm> = minimal_mergers(a, b).into_iter().collect();
                assert!(
                    mergers.iter().all(|g| class.basis().iter().any(|beta| involves(g, beta))),
                    "merger outside the class missed by enumeration"
                );
                report.verdict = Verdict::RefutedCertified;
                report.witness_pair = Some((a.clone(), b.clone()));
                report.decomposition = Some((class.with_extra(a.clone()), class.with_extra(b.clone())));
                report.mergers = mergers;
                return report;
            }
            Some(g) if g.len() <= witness_len => {}
            Some(_) => {
                report.verdict = Verdict::Inconclusive;
                report.witness_pair = Some((a.clone(), b.clone()));
                return report;
            }
        }
    }
    report
}
