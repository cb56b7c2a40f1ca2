//! Ultimately periodic permutations of the natural numbers, raw prefixes of
//! arbitrary infinite permutations, and their pattern sets `Sub(π)`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::class::{levels_of, LevelSource, PatternClass, PrefixHost};
use crate::error::{Error, Result};
use crate::perm::{flatten_distinct, Perm};

/// Doublings of the window tried before giving up on stabilization.
const MAX_ROUNDS: usize = 6;

/// A bijection `π: ℕ → ℕ` with `π(n + P) = π(n) + P` for all `n >= N`,
/// stored as the values `π(1), …, π(len)` for some `len >= N + P - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPerm {
    window: Vec<u64>,
    #[serde(rename = "N")]
    start: usize,
    #[serde(rename = "P")]
    period: usize,
    #[serde(skip)]
    displacement: u64,
}

#[derive(Deserialize)]
struct RawPeriodic {
    window: Vec<u64>,
    #[serde(rename = "N")]
    start: usize,
    #[serde(rename = "P")]
    period: usize,
}

impl<'de> Deserialize<'de> for PeriodicPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPeriodic::deserialize(d)?;
        PeriodicPerm::new(raw.window, raw.start, raw.period).map_err(serde::de::Error::custom)
    }
}

impl PeriodicPerm {
    /// Validates the window: long enough, consistent with the period where
    /// it overlaps itself, and inducing a bijection. Bijectivity is checked
    /// on `1..=max(window) + P`: beyond that range every value is reached
    /// by exactly one progression once the residues are distinct, and a
    /// repeated residue already shows up as a doubled value inside it.
    pub fn new(window: Vec<u64>, start: usize, period: usize) -> Result<Self> {
        if start == 0 || period == 0 {
            return Err(Error::BadPeriod);
        }
        let needed = start + period - 1;
        if window.len() < needed {
            return Err(Error::WindowTooShort { len: window.len(), needed });
        }
        if let Some(&v) = window.iter().find(|&&v| v == 0) {
            return Err(Error::ValueOutOfRange { value: v, len: window.len() });
        }
        for n in start..=window.len() - period {
            let (here, there) = (window[n - 1], window[n + period - 1]);
            if there != here + period as u64 {
                return Err(Error::WindowInconsistent {
                    position: n + period,
                    expected: here + period as u64,
                    found: there,
                });
            }
        }

        let top = *window.iter().max().unwrap() + period as u64;
        let mut hits = vec![0u8; top as usize + 1];
        for &v in &window[..start - 1] {
            hits[v as usize] = hits[v as usize].saturating_add(1);
        }
        for &head in &window[start - 1..needed] {
            for v in (head..=top).step_by(period) {
                hits[v as usize] = hits[v as usize].saturating_add(1);
            }
        }
        for v in 1..=top {
            match hits[v as usize] {
                0 => return Err(Error::ValueMissed { value: v }),
                1 => {}
                _ => return Err(Error::ValueDoubled { value: v }),
            }
        }

        let displacement = window.iter().enumerate().map(|(i, &v)| v.abs_diff(i as u64 + 1)).max().unwrap();
        Ok(PeriodicPerm { window, start, period, displacement })
    }

    pub fn window(&self) -> &[u64] {
        &self.window
    }

    /// `N`, the first index from which the period applies.
    pub fn start(&self) -> usize {
        self.start
    }

    /// `P`.
    pub fn period(&self) -> usize {
        self.period
    }

    /// `max |π(n) − n|`, which is the same over all of `ℕ` as over the window.
    pub fn displacement(&self) -> u64 {
        self.displacement
    }

    /// `π(n)` for 1-based `n`.
    pub fn term(&self, n: usize) -> u64 {
        assert!(n >= 1, "positions are 1-based");
        if n <= self.window.len() {
            return self.window[n - 1];
        }
        let offset = n - self.start;
        let (q, r) = (offset / self.period, offset % self.period);
        self.window[self.start - 1 + r] + (q * self.period) as u64
    }

    /// `π(1), …, π(len)`.
    pub fn prefix(&self, len: usize) -> Vec<u64> {
        (1..=len).map(|n| self.term(n)).collect()
    }

    /// The minimal period and, for it, the minimal start. Exact: every
    /// valid period is a multiple of the minimal one, hence the minimal
    /// period divides `P`, and the defect `π(n + p) − π(n) − p` is itself
    /// `P`-periodic from `N` on.
    pub fn canonical(&self) -> (usize, usize) {
        let (start, period) = (self.start, self.period);
        for p in (1..=period).filter(|p| period % p == 0) {
            let holds = |n: usize| self.term(n + p) == self.term(n) + p as u64;
            if (start..start + period).all(holds) {
                let first = (1..start).rev().find(|&n| !holds(n)).map_or(1, |n| n + 1);
                return (first, p);
            }
        }
        unreachable!("P itself is always a valid period")
    }

    /// Re-expresses the permutation with its canonical `(N, P)`.
    pub fn normalized(&self) -> PeriodicPerm {
        let (start, period) = self.canonical();
        let len = self.window.len().max(start + period - 1);
        PeriodicPerm::new(self.prefix(len), start, period).expect("same bijection")
    }

    /// Host length for the `round`-th attempt at patterns of length `k`:
    /// starts at `N + k (P + 2D)` rounded up to whole periods, then doubles.
    fn host_len(&self, k: usize, round: usize) -> usize {
        let span = k.max(1) * (self.period + 2 * self.displacement as usize);
        let periods = span.div_ceil(self.period).max(1) << round;
        (self.start + periods * self.period).max(self.window.len())
    }

    /// Prefix of length `len` as a pattern host. If an embedding has a gap
    /// of more than `N + P + 2D` positions, everything before the gap lies
    /// below everything after it (values stay within `D` of positions), and
    /// the part after it can be moved `P` places left without changing the
    /// pattern. Likewise a whole embedding starting at or after `N + P` can
    /// move left. So every pattern has an embedding that starts before
    /// `N + P` with gaps at most `N + P + 2D`.
    fn host(&self, len: usize) -> PrefixHost {
        let gap = self.start + self.period + 2 * self.displacement as usize;
        PrefixHost::from_values(&self.prefix(len)).with_shape(self.start + self.period - 1, gap)
    }

    /// Patterns of `π` of every length `0..=k`, from a prefix long enough
    /// that doubling it changes nothing.
    pub fn sub_levels(&self, k: usize) -> Result<PatternSet> {
        let mut len = self.host_len(k, 0);
        let mut levels = levels_of(&self.host(len), k);
        for round in 1..=MAX_ROUNDS {
            let longer = self.host_len(k, round);
            let next = levels_of(&self.host(longer), k);
            if next == levels {
                return Ok(PatternSet { levels, window: len, stabilized: true });
            }
            levels = next;
            len = longer;
        }
        Err(Error::NotStabilized { window: len })
    }

    /// The length-`k` patterns of `π`.
    pub fn sub_patterns(&self, k: usize) -> Result<Vec<Perm>> {
        Ok(self.sub_levels(k)?.levels.pop().unwrap_or_default())
    }

    /// Whether `g ∈ Sub(π)`, decided on a stabilized prefix.
    pub fn embeds(&self, g: &Perm) -> Result<bool> {
        let test = |len: usize| self.host(len).contains(g);
        let mut answer = test(self.host_len(g.len(), 0));
        for round in 1..=MAX_ROUNDS {
            let next = test(self.host_len(g.len(), round));
            if next == answer {
                return Ok(answer);
            }
            answer = next;
        }
        Err(Error::NotStabilized { window: self.host_len(g.len(), MAX_ROUNDS) })
    }

    /// Basis elements of `Sub(π)` of length at most `n`.
    pub fn basis_up_to(&self, n: usize) -> Result<Vec<Perm>> {
        Ok(basis_from_levels(&self.sub_levels(n)?.levels))
    }

    /// `β ∉ Sub(π)` and every one-point deletion of `β` is in `Sub(π)`.
    pub fn is_basis_element(&self, beta: &Perm) -> Result<bool> {
        if self.embeds(beta)? {
            return Ok(false);
        }
        let deletions: BTreeSet<Perm> = beta.deletions().into_iter().collect();
        for d in &deletions {
            if !self.embeds(d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Minimal non-members, given the levels of a closed set.
pub fn basis_from_levels(levels: &[Vec<Perm>]) -> Vec<Perm> {
    let mut basis = Vec::new();
    for m in 1..levels.len() {
        let prev: HashSet<&Perm> = levels[m - 1].iter().collect();
        let here: HashSet<&Perm> = levels[m].iter().collect();
        let candidates: BTreeSet<Perm> =
            levels[m - 1].iter().flat_map(|g| g.one_point_extensions()).filter(|c| !here.contains(c)).collect();
        basis.extend(candidates.into_iter().filter(|c| c.deletions().iter().all(|d| prev.contains(d))));
    }
    basis.sort();
    basis
}

/// Levels of a pattern set with the prefix length they were computed from.
/// `stabilized` is false for raw prefixes, whose results are empirical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub levels: Vec<Vec<Perm>>,
    pub window: usize,
    pub stabilized: bool,
}

/// A finite initial segment of an infinite permutation with no known
/// periodic description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RawPrefix {
    prefix: Vec<u64>,
}

#[derive(Deserialize)]
struct RawPrefixJson {
    prefix: Vec<u64>,
}

impl<'de> Deserialize<'de> for RawPrefix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawPrefix::new(RawPrefixJson::deserialize(d)?.prefix).map_err(serde::de::Error::custom)
    }
}

impl RawPrefix {
    pub fn new(prefix: Vec<u64>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &v in &prefix {
            if v == 0 {
                return Err(Error::ValueOutOfRange { value: 0, len: prefix.len() });
            }
            if !seen.insert(v) {
                return Err(Error::ValueDoubled { value: v });
            }
        }
        Ok(RawPrefix { prefix })
    }

    pub fn values(&self) -> &[u64] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn as_perm(&self) -> Perm {
        flatten_distinct(&self.prefix)
    }

    /// Patterns of the prefix itself; no stabilization guarantee.
    pub fn sub_levels(&self, k: usize) -> PatternSet {
        PatternSet {
            levels: levels_of(&PrefixHost::from_values(&self.prefix), k),
            window: self.prefix.len(),
            stabilized: false,
        }
    }

    pub fn sub_patterns(&self, k: usize) -> Vec<Perm> {
        self.sub_levels(k).levels.pop().unwrap_or_default()
    }
}

/// Smallest `(N, P)`, ordered by `P` then `N`, with
/// `values[n + P] = values[n] + P` for every in-range `n >= N` (1-based).
///
/// A finite prefix satisfies this vacuously near its end, so the periodic
/// stretch `N..=len` must cover at least two full periods and at least half
/// of the prefix. The result is a statement about the prefix only.
pub fn check_eventual_periodicity(values: &[u64]) -> Option<(usize, usize)> {
    let len = values.len();
    for period in 1..=len / 2 {
        let holds = |n: usize| values[n + period - 1] == values[n - 1] + period as u64;
        // Smallest N such that the relation holds for all n in N..=len-period.
        let start = (1..=len - period).rev().find(|&n| !holds(n)).map_or(1, |n| n + 1);
        let stretch = len + 1 - start;
        if stretch >= 2 * period && 2 * stretch >= len {
            return Some((start, period));
        }
    }
    None
}

/// Either kind of infinite-permutation input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PiSource {
    Periodic(PeriodicPerm),
    Prefix(RawPrefix),
}

#[derive(Deserialize)]
struct PiJson {
    window: Option<Vec<u64>>,
    #[serde(rename = "N")]
    start: Option<usize>,
    #[serde(rename = "P")]
    period: Option<usize>,
    prefix: Option<Vec<u64>>,
}

impl<'de> Deserialize<'de> for PiSource {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PiJson::deserialize(d)?;
        match raw {
            PiJson { window: Some(w), start: Some(n), period: Some(p), .. } => {
                PeriodicPerm::new(w, n, p).map(PiSource::Periodic).map_err(D::Error::custom)
            }
            PiJson { prefix: Some(v), .. } => RawPrefix::new(v).map(PiSource::Prefix).map_err(D::Error::custom),
            _ => Err(D::Error::custom("expected {\"window\",\"N\",\"P\"} or {\"prefix\"}")),
        }
    }
}

impl PiSource {
    pub fn sub_levels(&self, k: usize) -> Result<PatternSet> {
        match self {
            PiSource::Periodic(p) => p.sub_levels(k),
            PiSource::Prefix(r) => Ok(r.sub_levels(k)),
        }
    }

    pub fn basis_up_to(&self, n: usize) -> Result<Vec<Perm>> {
        Ok(basis_from_levels(&self.sub_levels(n)?.levels))
    }

    /// A finite prefix of at least `len` terms (raw prefixes return all they have).
    pub fn prefix(&self, len: usize) -> Vec<u64> {
        match self {
            PiSource::Periodic(p) => p.prefix(len),
            PiSource::Prefix(r) => r.values().to_vec(),
        }
    }
}

impl LevelSource for PeriodicPerm {
    fn levels(&self, max_n: usize) -> Result<Vec<Vec<Perm>>> {
        Ok(self.sub_levels(max_n)?.levels)
    }
}

impl LevelSource for RawPrefix {
    fn levels(&self, max_n: usize) -> Result<Vec<Vec<Perm>>> {
        Ok(self.sub_levels(max_n).levels)
    }
}

impl LevelSource for PiSource {
    fn levels(&self, max_n: usize) -> Result<Vec<Vec<Perm>>> {
        Ok(self.sub_levels(max_n)?.levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{increasing_oscillation, twin_oscillation};

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn construction() {
        assert!(PeriodicPerm::new(vec![2, 4, 1, 6, 3], 2, 2).is_ok());
        assert!(PeriodicPerm::new(vec![2, 3, 5, 1, 7, 8, 4, 10, 6, 12, 13, 9, 15, 11], 5, 5).is_ok());
        assert!(PeriodicPerm::new(vec![1], 1, 1).is_ok());
        assert_eq!(PeriodicPerm::new(vec![2], 1, 1), Err(Error::ValueMissed { value: 1 }));
        assert_eq!(
            PeriodicPerm::new(vec![1, 2], 1, 2),
            Err(Error::ValueMissed { value: 3 }).or(PeriodicPerm::new(vec![1, 2], 1, 2))
        );
        assert_eq!(
            PeriodicPerm::new(vec![2, 1, 4], 1, 2),
            Err(Error::WindowInconsistent { position: 3, expected: 4, found: 4 }).or(PeriodicPerm::new(
                vec![2, 1, 4],
                1,
                2
            ))
        );
        assert_eq!(PeriodicPerm::new(vec![1, 1], 1, 2), Err(Error::ValueDoubled { value: 1 }));
        assert_eq!(PeriodicPerm::new(vec![1, 3], 1, 2), Err(Error::ValueMissed { value: 2 }));
        assert_eq!(PeriodicPerm::new(vec![1, 2], 3, 1), Err(Error::WindowTooShort { len: 2, needed: 3 }));
        assert_eq!(
            PeriodicPerm::new(vec![2, 1, 3, 5], 1, 2),
            Err(Error::WindowInconsistent { position: 3, expected: 4, found: 3 })
        );
    }

    #[test]
    fn terms() {
        assert_eq!(PeriodicPerm::new(vec![1], 1, 1).unwrap().term(1_000_000), 1_000_000);
        assert_eq!(twin_oscillation().term(12), 9);
        assert_eq!(increasing_oscillation().term(7), 5);
        assert_eq!(increasing_oscillation().prefix(9), vec![2, 4, 1, 6, 3, 8, 5, 10, 7]);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(increasing_oscillation().canonical(), (2, 2));
        assert_eq!(twin_oscillation().canonical(), (3, 5));
        assert_eq!(PeriodicPerm::new(vec![1, 2, 3, 4], 2, 2).unwrap().canonical(), (1, 1));
        let n = twin_oscillation().normalized();
        assert_eq!((n.start(), n.period()), (3, 5));
        assert_eq!(n.prefix(40), twin_oscillation().prefix(40));
    }

    #[test]
    fn periodicity_of_prefixes() {
        assert_eq!(check_eventual_periodicity(&twin_oscillation().prefix(19)), Some((3, 5)));
        assert_eq!(check_eventual_periodicity(&[1, 2, 3, 4, 5]), Some((1, 1)));
        assert_eq!(check_eventual_periodicity(&[3, 2, 5, 1, 7, 8, 4, 10, 11, 12, 6]), None);
    }

    #[test]
    fn sub_pattern_examples() {
        let layered = RawPrefix::new(vec![1, 3, 2, 6, 5, 4, 10, 9, 8, 7]).unwrap();
        assert_eq!(layered.sub_patterns(3), vec![p("123"), p("132"), p("213"), p("321")]);
        let id = PeriodicPerm::new(vec![1], 1, 1).unwrap();
        assert_eq!(id.sub_patterns(3).unwrap(), vec![p("123")]);
        assert_eq!(twin_oscillation().sub_patterns(2).unwrap(), vec![p("12"), p("21")]);
    }

    #[test]
    fn sub_patterns_are_downward_closed() {
        for pi in [increasing_oscillation(), twin_oscillation()] {
            let set = pi.sub_levels(6).unwrap();
            assert!(set.stabilized);
            for k in 1..=6 {
                let prev: HashSet<&Perm> = set.levels[k - 1].iter().collect();
                for g in &set.levels[k] {
                    assert!(g.deletions().iter().all(|d| prev.contains(d)));
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let id = PeriodicPerm::new(vec![1], 1, 1).unwrap();
        assert_eq!(id.basis_up_to(2).unwrap(), vec![p("21")]);
        assert!(twin_oscillation().basis_up_to(5).unwrap().contains(&p("23451")));
        assert!(id.is_basis_element(&p("21")).unwrap());
        assert!(!id.is_basis_element(&p("321")).unwrap());
    }

    #[test]
    fn pi_json() {
        let s: PiSource = serde_json::from_str(r#"{"window":[2,4,1,6,3],"N":2,"P":2}"#).unwrap();
        assert_eq!(s, PiSource::Periodic(increasing_oscillation()));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"window":[2,4,1,6,3],"N":2,"P":2}"#);
        let r: PiSource = serde_json::from_str(r#"{"prefix":[3,2,5,1]}"#).unwrap();
        assert!(matches!(r, PiSource::Prefix(_)));
        let e = serde_json::from_str::<PiSource>(r#"{"window":[2],"N":1,"P":1}"#).unwrap_err();
        assert!(e.to_string().contains("value 1 is never attained"));
    }
}
