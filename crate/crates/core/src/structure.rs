//! The two branches for a natural class `X = Sub(π)` with a known (partial)
//! basis `B`: either `X = Sub(γ) ⊕ A(C)` for a finite `γ`, where `C` is the
//! set of final components of `B`, or `π` is ultimately periodic. Also the
//! bounded checks that go with it and the growing-block non-example.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::class::{levels_of, FinalComponentSet, FiniteBasisClass, LevelSource, PrefixHost};
use crate::error::{Error, Result};
use crate::families::{growing_block_prefix, growing_block_segment_ends};
use crate::matching::{count_embeddings, embeds, last_start};
use crate::periodic::{check_eventual_periodicity, PiSource};
use crate::perm::{flatten_distinct, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    SumForm,
    Periodic,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub branch: Branch,
    pub gamma: Option<Perm>,
    #[serde(rename = "C")]
    pub components: Option<FinalComponentSet>,
    /// Canonical `(N, P)`.
    pub period: Option<(usize, usize)>,
    /// Lengths up to which the branch identity (or the basis) was checked.
    pub verified_to: usize,
    /// Prefix length of `π` the analysis looked at.
    pub window: usize,
    /// True when `π` was only known through a finite prefix.
    pub empirical: bool,
}

fn sum_complete(s: &FiniteBasisClass, which: &str) -> Result<()> {
    match s.first_decomposable() {
        Some(b) => Err(Error::NotSumComplete { which: which.into(), element: b.clone() }),
        None => Ok(()),
    }
}

/// Levels `0..=depth` of `Sub(γ) ⊕ S`, given the levels of `S`.
pub fn sum_form_levels(gamma: &Perm, s_levels: &[Vec<Perm>], depth: usize) -> Vec<Vec<Perm>> {
    let sub = levels_of(&PrefixHost::new(gamma), depth.min(gamma.len()));
    let mut out = vec![BTreeSet::new(); depth + 1];
    for (a, left) in sub.iter().enumerate() {
        for (b, right) in s_levels.iter().enumerate().take(depth + 1 - a) {
            for g in left {
                for s in right {
                    out[a + b].insert(g.direct_sum(s));
                }
            }
        }
    }
    out.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Whether `X_n = (Sub(γ) ⊕ S)_n` for every `n <= depth`.
pub fn verify_sum_form(gamma: &Perm, s: &FiniteBasisClass, x: &dyn LevelSource, depth: usize) -> Result<bool> {
    sum_complete(s, "S")?;
    let expected = sum_form_levels(gamma, &levels_of(s, depth), depth);
    Ok(x.levels(depth)? == expected)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniquenessVerdict {
    /// The two sum-form classes already differ, so there is nothing to check.
    ClassesDiffer,
    /// Equal classes and equal `S` to the reduced depth.
    Consistent,
    /// Equal classes but different `S`.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub verdict: UniquenessVerdict,
    /// Depth to which the two classes were compared.
    pub depth: usize,
    /// `max(|γ_1|, |γ_2|)`.
    pub offset: usize,
    /// Depth to which `S_1` and `S_2` were compared.
    pub s_depth: usize,
}

impl UniquenessReport {
    /// False only when the implication fails.
    pub fn holds(&self) -> bool {
        self.verdict != UniquenessVerdict::Violated
    }
}

/// If `Sub(γ_1) ⊕ S_1` and `Sub(γ_2) ⊕ S_2` agree up to `depth`, checks that
/// `S_1` and `S_2` agree up to `depth − max(|γ_1|, |γ_2|)`.
pub fn check_s_uniqueness(
    gamma1: &Perm,
    s1: &FiniteBasisClass,
    gamma2: &Perm,
    s2: &FiniteBasisClass,
    depth: usize,
) -> Result<UniquenessReport> {
    sum_complete(s1, "S1")?;
    sum_complete(s2, "S2")?;
    let (l1, l2) = (levels_of(s1, depth), levels_of(s2, depth));
    let offset = gamma1.len().max(gamma2.len());
    let s_depth = depth.saturating_sub(offset);
    let verdict = if sum_form_levels(gamma1, &l1, depth) != sum_form_levels(gamma2, &l2, depth) {
        UniquenessVerdict::ClassesDiffer
    } else if l1[..=s_depth] == l2[..=s_depth] {
        UniquenessVerdict::Consistent
    } else {
        UniquenessVerdict::Violated
    };
    Ok(UniquenessReport { verdict, depth, offset, s_depth })
}

/// First permutation on which two level lists disagree, with the side it is on.
fn first_difference(pi: &[Vec<Perm>], class: &[Vec<Perm>]) -> Option<(Perm, &'static str)> {
    for (a, b) in pi.iter().zip(class) {
        let (a, b): (BTreeSet<&Perm>, BTreeSet<&Perm>) = (a.iter().collect(), b.iter().collect());
        if let Some(g) = a.difference(&b).next() {
            return Some(((*g).clone(), "a pattern of pi that the basis excludes"));
        }
        if let Some(g) = b.difference(&a).next() {
            return Some(((*g).clone(), "allowed by the basis but not a pattern of pi"));
        }
    }
    None
}

/// Decides which branch `Sub(π)` falls in, within the analysed window.
///
/// `k` is the last start of an embedding of an element of `C` in the window
/// (0 if there is none). If a sum component of `π` ends at or after `k` and
/// before the end of the window, the candidate is `γ` = everything up to
/// that component's end (`ε` when `k = 0`), confirmed by [`verify_sum_form`].
/// Otherwise the branch is periodic, with the canonical `(N, P)` of `π`.
pub fn classify(source: &PiSource, basis: &FiniteBasisClass, depth: usize) -> Result<DichotomyReport> {
    let set = source.sub_levels(depth)?;
    if let Some((perm, detail)) = first_difference(&set.levels, &levels_of(basis, depth)) {
        return Err(Error::InconsistentBasis { perm, detail: detail.into() });
    }
    let components = basis.final_components()?;
    let window = match source {
        PiSource::Periodic(p) => set.window.max(p.window().len()),
        PiSource::Prefix(r) => r.len(),
    };
    let values = source.prefix(window);
    let host = flatten_distinct(&values).into_values();
    let k = components.components().iter().filter_map(|c| last_start(&host, c)).max().unwrap_or(0);

    let mut report = DichotomyReport {
        branch: Branch::Undetermined,
        gamma: None,
        components: Some(components.clone()),
        period: None,
        verified_to: depth,
        window,
        empirical: matches!(source, PiSource::Prefix(_)),
    };

    let mut max = 0;
    let boundary = (1..window).find(|&b| {
        max = max.max(values[b - 1]);
        b >= k && max == b as u64
    });
    if let Some(end) = boundary {
        let gamma = flatten_distinct(&values[..if k == 0 { 0 } else { end }]);
        if verify_sum_form(&gamma, &components.avoidance_class(), source, depth)? {
            report.branch = Branch::SumForm;
            report.gamma = Some(gamma);
        }
        return Ok(report);
    }

    report.period = match source {
        PiSource::Periodic(p) => Some(p.canonical()),
        PiSource::Prefix(r) => check_eventual_periodicity(r.values()),
    };
    if report.period.is_some() {
        report.branch = Branch::Periodic;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    /// 1-based position of the segment's last entry in the prefix.
    pub end: usize,
    pub xi: Perm,
    pub indecomposable: bool,
    /// Embeddings of `ξ` in the prefix, counted up to 2.
    pub embeddings: usize,
    /// Whether `ξ ⊕ ξ` embeds in the prefix.
    pub doubled_embeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowingBlockReport {
    pub depth: usize,
    pub prefix: Vec<u64>,
    pub periodicity: Option<(usize, usize)>,
    pub segments: Vec<Segment>,
}

impl GrowingBlockReport {
    /// No periodicity, and every segment is indecomposable, embeds once,
    /// and does not embed doubled.
    pub fn confirms(&self) -> bool {
        self.periodicity.is_none()
            && self.segments.iter().all(|s| s.indecomposable && s.embeddings == 1 && !s.doubled_embeds)
    }
}

/// Builds the growing-block prefix to `depth` and checks the initial
/// segments `ξ_i` ending at each single `1, 4, 6, 9, …` that fits.
pub fn growing_block_nonexample(depth: usize) -> GrowingBlockReport {
    let prefix = growing_block_prefix(depth);
    let host = flatten_distinct(&prefix).into_values();
    let segments = growing_block_segment_ends(depth)
        .into_iter()
        .map(|end| {
            let xi = flatten_distinct(&prefix[..end]);
            Segment {
                end,
                indecomposable: xi.sum_components().len() == 1,
                embeddings: count_embeddings(&host, &xi, 2),
                doubled_embeds: embeds(&host, &xi.direct_sum(&xi)),
                xi,
            }
        })
        .collect();
    GrowingBlockReport { depth, periodicity: check_eventual_periodicity(&prefix), prefix, segments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{increasing_oscillation, layered_prefix, twin_oscillation, LAYERED_PREFIX};
    use crate::periodic::{basis_from_levels, RawPrefix};

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn class(items: &[&str]) -> FiniteBasisClass {
        FiniteBasisClass::new(items.iter().map(|s| p(s)))
    }

    #[test]
    fn sum_form_examples() {
        let layered = class(&["231", "312"]);
        assert!(verify_sum_form(&Perm::empty(), &layered, &layered, 7).unwrap());
        let inc = class(&["21"]);
        assert!(verify_sum_form(&p("1"), &inc, &inc, 7).unwrap());

        // Sub(21) ⊕ A(21): its basis, by brute force over the explicit downset.
        let levels = sum_form_levels(&p("21"), &levels_of(&inc, 8), 8);
        let basis = basis_from_levels(&levels);
        assert_eq!(basis, vec![p("132"), p("231"), p("312"), p("321")]);
        let x = FiniteBasisClass::new(basis);
        assert!(verify_sum_form(&p("21"), &inc, &x, 7).unwrap());
        assert!(!verify_sum_form(&Perm::empty(), &inc, &x, 7).unwrap());

        let two_seg = class(&["321", "3142", "2143"]);
        assert!(matches!(verify_sum_form(&p("1"), &two_seg, &inc, 3), Err(Error::NotSumComplete { .. })));
    }

    #[test]
    fn uniqueness_examples() {
        let inc = class(&["21"]);
        let r = check_s_uniqueness(&p("1"), &inc, &p("12"), &inc, 7).unwrap();
        assert_eq!((r.verdict, r.offset, r.s_depth), (UniquenessVerdict::Consistent, 2, 5));
        let layered = class(&["231", "312"]);
        let r = check_s_uniqueness(&Perm::empty(), &layered, &p("1"), &layered, 7).unwrap();
        assert_eq!(r.verdict, UniquenessVerdict::Consistent);
        let r = check_s_uniqueness(&p("1"), &inc, &p("1"), &class(&["321"]), 7).unwrap();
        assert_eq!(r.verdict, UniquenessVerdict::ClassesDiffer);
        assert!(r.holds());
        assert!(matches!(
            check_s_uniqueness(&p("1"), &inc, &p("1"), &class(&["12"]), 7),
            Err(Error::NotSumComplete { element, .. }) if element == p("12")
        ));
    }

    #[test]
    fn classify_layered_prefix() {
        let layered = class(&["231", "312"]);
        let src = PiSource::Prefix(RawPrefix::new(layered_prefix(7)).unwrap());
        let r = classify(&src, &layered, 7).unwrap();
        assert_eq!(r.branch, Branch::SumForm);
        assert_eq!(r.gamma, Some(Perm::empty()));
        assert!(r.empirical);
        // The short generator has no layer longer than 4.
        let short = PiSource::Prefix(RawPrefix::new(LAYERED_PREFIX.to_vec()).unwrap());
        assert!(classify(&short, &layered, 4).is_ok());
        assert!(matches!(
            classify(&short, &layered, 5),
            Err(Error::InconsistentBasis { perm, .. }) if perm == p("54321")
        ));
    }

    #[test]
    fn classify_identity() {
        let id = PiSource::Periodic(crate::periodic::PeriodicPerm::new(vec![1], 1, 1).unwrap());
        let r = classify(&id, &class(&["21"]), 6).unwrap();
        assert_eq!((r.branch, r.gamma), (Branch::SumForm, Some(Perm::empty())));
    }

    #[test]
    fn classify_periodic_examples() {
        let osc = increasing_oscillation();
        let basis = FiniteBasisClass::new(osc.basis_up_to(6).unwrap());
        let r = classify(&PiSource::Periodic(osc), &basis, 6).unwrap();
        assert_eq!((r.branch, r.period), (Branch::Periodic, Some((2, 2))));

        let twin = twin_oscillation();
        let basis = FiniteBasisClass::new(twin.basis_up_to(7).unwrap());
        let r = classify(&PiSource::Periodic(twin), &basis, 7).unwrap();
        assert_eq!((r.branch, r.period), (Branch::Periodic, Some((3, 5))));
    }

    #[test]
    fn classify_rejects_wrong_basis() {
        let src = PiSource::Periodic(increasing_oscillation());
        let err = classify(&src, &class(&["321", "123"]), 4).unwrap_err();
        assert!(matches!(err, Error::InconsistentBasis { perm, .. } if perm == p("123")));
    }

    #[test]
    fn growing_block_first_segments() {
        let r = growing_block_nonexample(40);
        assert_eq!(r.segments[0].xi, p("3241"));
        assert!(r.segments.len() >= 4);
        assert!(r.confirms());
    }
}
