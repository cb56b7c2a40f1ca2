//! The rank encoding `E`: letter `k` of `E(x_1 … x_n)` is the number of
//! `i <= k` with `x_i >= x_k`, the `k`-th entry included.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::class::LevelSource;
use crate::error::{Error, Result};
use crate::periodic::PeriodicPerm;
use crate::perm::Perm;

/// A word `e_1 … e_n` with `1 <= e_k <= k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct RankWord(Vec<u32>);

impl RankWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        for (i, &e) in letters.iter().enumerate() {
            if e == 0 || e as usize > i + 1 {
                return Err(Error::LetterOutOfRange { position: i + 1, letter: e });
            }
        }
        Ok(RankWord(letters))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for RankWord {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        RankWord::new(v)
    }
}

impl From<RankWord> for Vec<u32> {
    fn from(w: RankWord) -> Vec<u32> {
        w.0
    }
}

impl fmt::Display for RankWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Rank letters of any sequence of distinct values.
pub fn encode_values<T: Ord>(values: &[T]) -> Vec<u32> {
    (0..values.len()).map(|k| values[..=k].iter().filter(|x| **x >= values[k]).count() as u32).collect()
}

pub fn encode(g: &Perm) -> RankWord {
    RankWord(encode_values(g.values()))
}

/// Inverse of [`encode`]: each new entry is inserted with `e_k − 1` of the
/// entries so far above it.
pub fn decode(w: &RankWord) -> Perm {
    // `order` lists positions from the largest value down.
    let mut order: Vec<usize> = Vec::with_capacity(w.len());
    for (k, &e) in w.letters().iter().enumerate() {
        order.insert(e as usize - 1, k);
    }
    let n = order.len();
    let mut values = vec![0u32; n];
    for (rank, &pos) in order.iter().enumerate() {
        values[pos] = (n - rank) as u32;
    }
    Perm::from_vec_unchecked(values)
}

/// `{ E(γ) : γ ∈ X, |γ| <= n }`, sorted.
pub fn encode_class(source: &dyn LevelSource, n: usize) -> Result<Vec<RankWord>> {
    let words: BTreeSet<RankWord> = source.levels(n)?.iter().flatten().map(encode).collect();
    Ok(words.into_iter().collect())
}

/// Largest letter used by encodings of members of each length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetBound {
    /// Largest letter over all lengths `<= n`.
    pub max_letter: u32,
    /// The largest letter did not grow from length `n − 1` to `n`.
    pub stabilized: bool,
    /// `per_length[k]` is the largest letter at length `k`.
    pub per_length: Vec<u32>,
}

pub fn alphabet_bound(source: &dyn LevelSource, n: usize) -> Result<AlphabetBound> {
    let levels = source.levels(n)?;
    let per_length: Vec<u32> =
        levels.iter().map(|level| level.iter().map(|g| encode(g).max_letter()).max().unwrap_or(0)).collect();
    let running = |k: usize| per_length[..=k].iter().copied().max().unwrap_or(0);
    let max_letter = running(n);
    let stabilized = n >= 1 && running(n - 1) == max_letter;
    Ok(AlphabetBound { max_letter, stabilized, per_length })
}

/// The ceiling `4 (b − 1)²` on how many earlier terms can lie above a late
/// term of `π` when `Sub(π)` has a basis with longest element of length `b`.
pub fn alphabet_ceiling(b: usize) -> u64 {
    let b = b.saturating_sub(1) as u64;
    4 * b * b
}

/// An infinite rank word with `e_{n+P} = e_n` for `n >= N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicWord {
    pub window: Vec<u32>,
    #[serde(rename = "N")]
    pub start: usize,
    #[serde(rename = "P")]
    pub period: usize,
}

impl PeriodicWord {
    pub fn new(window: Vec<u32>, start: usize, period: usize) -> Result<Self> {
        if start == 0 || period == 0 {
            return Err(Error::BadPeriod);
        }
        let needed = start + period - 1;
        if window.len() < needed {
            return Err(Error::WindowTooShort { len: window.len(), needed });
        }
        RankWord::new(window.clone())?;
        for n in start..=window.len() - period {
            if window[n + period - 1] != window[n - 1] {
                return Err(Error::WindowInconsistent {
                    position: n + period,
                    expected: window[n - 1] as u64,
                    found: window[n + period - 1] as u64,
                });
            }
        }
        Ok(PeriodicWord { window, start, period })
    }

    /// `E(π)`. Beyond position `max(window) + D` no term before the periodic
    /// part can exceed the current term, so letters repeat with period `P`
    /// from there on.
    pub fn of(p: &PeriodicPerm) -> Self {
        let start = (*p.window().iter().max().unwrap() + p.displacement() + 1) as usize;
        let len = start + p.period() - 1;
        let w = PeriodicWord { window: encode_values(&p.prefix(len)), start, period: p.period() };
        w.canonical()
    }

    pub fn letter(&self, n: usize) -> u32 {
        assert!(n >= 1, "positions are 1-based");
        if n <= self.window.len() {
            return self.window[n - 1];
        }
        self.window[self.start - 1 + (n - self.start) % self.period]
    }

    pub fn max_letter(&self) -> u32 {
        self.window.iter().copied().max().unwrap_or(0)
    }

    /// Minimal period, then minimal start, trimming the window to `N + P − 1`.
    pub fn canonical(&self) -> PeriodicWord {
        let (start, period) = (self.start, self.period);
        for p in (1..=period).filter(|p| period % p == 0) {
            let holds = |n: usize| self.letter(n + p) == self.letter(n);
            if (start..start + period).all(holds) {
                let first = (1..start).rev().find(|&n| !holds(n)).map_or(1, |n| n + 1);
                let window = (1..first + p).map(|n| self.letter(n)).collect();
                return PeriodicWord { window, start: first, period: p };
            }
        }
        unreachable!("the given period always holds")
    }
}

/// `π(j)` from `E(π)`: `j − e_j` earlier terms are smaller, and the later
/// smaller terms are counted by scanning forward while tracking `h`, the
/// number of terms so far that are at least `π(j)`. A later letter above `h`
/// marks a smaller term; otherwise the term is larger and `h` grows. Once
/// `h` reaches the largest letter the word uses, no smaller term can follow.
pub fn recover_values(word: &PeriodicWord, j: usize, horizon: usize) -> Result<u64> {
    assert!(j >= 1, "positions are 1-based");
    let e_j = word.letter(j);
    let top = word.max_letter();
    let (mut later_smaller, mut h) = (0u64, e_j);
    let mut i = 0;
    while h < top {
        if i >= horizon {
            return Err(Error::HorizonTooSmall { horizon });
        }
        if word.letter(j + i + 1) > h {
            later_smaller += 1;
        } else {
            h += 1;
        }
        i += 1;
    }
    Ok((j as u64 - e_j as u64) + later_smaller + 1)
}
