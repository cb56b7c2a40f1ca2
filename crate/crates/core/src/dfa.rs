//! Automata for prefix-closed languages over `1..=m`, inferred from a
//! finite sample of encoded class members.
//!
//! Inference builds the prefix tree of the sample and identifies two words
//! when their sample continuations of length `<= h` coincide, for the least
//! `h` that reproduces the sample exactly. The result is minimized and must
//! come out the same when the sample is extended by one length.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::class::LevelSource;
use crate::encoding::{alphabet_bound, encode_class, RankWord};
use crate::error::{Error, Result};

/// A complete DFA in which every state except `dead` accepts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfa {
    pub states: usize,
    pub alphabet: u32,
    pub start: usize,
    pub dead: usize,
    /// `transitions[q][a − 1]` is the successor of `q` on letter `a`.
    pub transitions: Vec<Vec<usize>>,
}

impl Dfa {
    /// The automaton with only a dead state.
    pub fn empty(alphabet: u32) -> Dfa {
        Dfa { states: 1, alphabet, start: 0, dead: 0, transitions: vec![vec![0; alphabet as usize]] }
    }

    pub fn step(&self, q: usize, letter: u32) -> usize {
        if letter == 0 || letter > self.alphabet {
            return self.dead;
        }
        self.transitions[q][letter as usize - 1]
    }

    pub fn accepts(&self, word: &[u32]) -> bool {
        word.iter().fold(self.start, |q, &a| self.step(q, a)) != self.dead
    }

    pub fn live_states(&self) -> usize {
        self.states - 1
    }

    /// Number of accepted words of length `n`.
    pub fn count_words(&self, n: usize) -> BigUint {
        self.count_profile(n).pop().unwrap()
    }

    /// Accepted word counts for lengths `0..=max_n`.
    pub fn count_profile(&self, max_n: usize) -> Vec<BigUint> {
        let mut weights = vec![BigUint::zero(); self.states];
        if self.start != self.dead {
            weights[self.start] = BigUint::from(1u32);
        }
        let mut out = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            out.push(weights.iter().sum());
            if n == max_n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.states];
            for (q, w) in weights.iter().enumerate() {
                if q == self.dead || w.is_zero() {
                    continue;
                }
                for &t in &self.transitions[q] {
                    if t != self.dead {
                        next[t] += w;
                    }
                }
            }
            weights = next;
        }
        out
    }

    /// Merges equivalent states, drops unreachable ones, and numbers live
    /// states in breadth-first order from the start (letters ascending), with
    /// the dead state last. Two automata accept the same language iff their
    /// minimized forms are equal.
    pub fn minimize(&self) -> Dfa {
        let m = self.alphabet as usize;
        let mut class: Vec<usize> = (0..self.states).map(|q| usize::from(q != self.dead)).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..self.states)
                .map(|q| {
                    let key = (class[q], self.transitions[q].iter().map(|&t| class[t]).collect());
                    let fresh = ids.len();
                    *ids.entry(key).or_insert(fresh)
                })
                .collect();
            let before = class.iter().collect::<std::collections::BTreeSet<_>>().len();
            class = next;
            if ids.len() == before {
                break;
            }
        }

        let dead_class = class[self.dead];
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut reps = Vec::new();
        if class[self.start] != dead_class {
            number.insert(class[self.start], 0);
            queue.push_back(self.start);
            reps.push(self.start);
        }
        while let Some(q) = queue.pop_front() {
            for &t in &self.transitions[q] {
                if class[t] != dead_class && !number.contains_key(&class[t]) {
                    number.insert(class[t], reps.len());
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let dead = reps.len();
        let map = |t: usize| if class[t] == dead_class { dead } else { number[&class[t]] };
        let mut transitions: Vec<Vec<usize>> =
            reps.iter().map(|&q| self.transitions[q].iter().map(|&t| map(t)).collect()).collect();
        transitions.push(vec![dead; m]);
        let start = if reps.is_empty() { dead } else { 0 };
        Dfa { states: dead + 1, alphabet: self.alphabet, start, dead, transitions }
    }

    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.minimize() == other.minimize()
    }
}

/// Prefix tree of a prefix-closed sample.
struct Trie {
    children: Vec<Vec<Option<usize>>>,
    depth: Vec<usize>,
}

impl Trie {
    fn build(words: &[RankWord], m: u32) -> Trie {
        let mut t = Trie { children: vec![vec![None; m as usize]], depth: vec![0] };
        for w in words {
            let mut node = 0;
            for &a in w.letters() {
                let slot = a as usize - 1;
                node = match t.children[node][slot] {
                    Some(c) => c,
                    None => {
                        let c = t.children.len();
                        t.children.push(vec![None; m as usize]);
                        t.depth.push(t.depth[node] + 1);
                        t.children[node][slot] = Some(c);
                        c
                    }
                };
            }
        }
        t
    }

    /// Serialized shape of the subtree below `node`, cut at depth `h`.
    fn signature(&self, node: usize, h: usize, out: &mut Vec<u8>) {
        if h == 0 {
            return;
        }
        out.push(b'(');
        for c in &self.children[node] {
            match c {
                Some(c) => self.signature(*c, h - 1, out),
                None => out.push(b'-'),
            }
        }
        out.push(b')');
    }
}

/// Infers an automaton from a prefix-closed sample holding every word of
/// the language with length `<= len`. Fails if no depth `h` yields an
/// automaton that reproduces the sample.
pub fn infer_from_sample(words: &[RankWord], alphabet: u32, len: usize) -> Result<Dfa> {
    let trie = Trie::build(words, alphabet);
    let counts: Vec<usize> = (0..=len).map(|n| words.iter().filter(|w| w.len() == n).count()).collect();
    'depth: for h in 1..=len {
        let mut states: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let sig = |node: usize| {
            let mut s = Vec::new();
            trie.signature(node, h, &mut s);
            s
        };
        if words.is_empty() {
            return Ok(Dfa::empty(alphabet));
        }
        states.insert(sig(0), 0);
        reps.push(0);
        let mut next = 0;
        while next < reps.len() {
            let node = reps[next];
            let mut row = Vec::with_capacity(alphabet as usize);
            for c in &trie.children[node] {
                match c {
                    None => row.push(usize::MAX),
                    Some(c) => {
                        if trie.depth[*c] + h > len {
                            continue 'depth;
                        }
                        let s = sig(*c);
                        let fresh = reps.len();
                        let id = *states.entry(s).or_insert(fresh);
                        if id == fresh {
                            reps.push(*c);
                        }
                        row.push(id);
                    }
                }
            }
            transitions.push(row);
            next += 1;
        }
        let dead = reps.len();
        for row in &mut transitions {
            for t in row.iter_mut() {
                if *t == usize::MAX {
                    *t = dead;
                }
            }
        }
        transitions.push(vec![dead; alphabet as usize]);
        let dfa = Dfa { states: dead + 1, alphabet, start: 0, dead, transitions };
        let profile = dfa.count_profile(len);
        let reproduces = profile.iter().zip(&counts).all(|(a, &b)| *a == BigUint::from(b))
            && words.iter().all(|w| dfa.accepts(w.letters()));
        if reproduces {
            return Ok(dfa.minimize());
        }
    }
    Err(Error::InferenceUnstable { len, reason: "no merge depth reproduces the sample".into() })
}

/// Infers an automaton for `E(X)` from all members of length `<= train_len`,
/// and checks that training on one more length gives the same automaton.
pub fn infer_dfa(source: &dyn LevelSource, train_len: usize) -> Result<Dfa> {
    let bound = alphabet_bound(source, train_len)?;
    if !bound.stabilized {
        return Err(Error::AlphabetUnstable { len: train_len, max: bound.max_letter });
    }
    let m = bound.max_letter;
    let needed = m as usize + 2;
    if train_len < needed {
        return Err(Error::TrainingTooShort { len: train_len, alphabet: m, needed });
    }
    let sample = encode_class(source, train_len + 1)?;
    let longer_m = sample.iter().map(RankWord::max_letter).max().unwrap_or(0);
    if longer_m > m {
        return Err(Error::AlphabetUnstable { len: train_len + 1, max: longer_m });
    }
    let short: Vec<RankWord> = sample.iter().filter(|w| w.len() <= train_len).cloned().collect();
    let dfa = infer_from_sample(&short, m, train_len)?;
    let again = infer_from_sample(&sample, m, train_len + 1)?;
    if dfa != again {
        return Err(Error::InferenceUnstable {
            len: train_len,
            reason: format!(
                "{} live states at length {train_len} but {} at length {}",
                dfa.live_states(),
                again.live_states(),
                train_len + 1
            ),
        });
    }
    Ok(dfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::FiniteBasisClass;
    use crate::families::increasing_oscillation;
    use crate::perm::Perm;

    fn class(items: &[&str]) -> FiniteBasisClass {
        FiniteBasisClass::new(items.iter().map(|s| s.parse::<Perm>().unwrap()))
    }

    #[test]
    fn increasing_class_is_one_loop() {
        let d = infer_dfa(&class(&["21"]), 4).unwrap();
        assert_eq!(d.live_states(), 1);
        assert_eq!(d.transitions[d.start], vec![d.start]);
        assert_eq!(d.count_words(9), BigUint::from(1u32));
    }

    #[test]
    fn dead_only_counts_nothing() {
        assert_eq!(Dfa::empty(2).count_words(1), BigUint::zero());
        assert_eq!(Dfa::empty(2).count_words(0), BigUint::zero());
    }

    #[test]
    fn full_class_is_rejected() {
        assert!(matches!(infer_dfa(&class(&[]), 5), Err(Error::AlphabetUnstable { .. })));
        assert!(matches!(infer_dfa(&class(&["231", "312"]), 6), Err(Error::AlphabetUnstable { .. })));
    }

    #[test]
    fn oscillation_counts_match_enumeration() {
        let pi = increasing_oscillation();
        let d = infer_dfa(&pi, 8).unwrap();
        let levels = pi.sub_levels(11).unwrap().levels;
        let profile = d.count_profile(11);
        for n in 0..=11 {
            assert_eq!(profile[n], BigUint::from(levels[n].len()), "n = {n}");
        }
    }

    #[test]
    fn minimize_merges_duplicates() {
        // Two copies of a one-letter loop.
        let d = Dfa { states: 3, alphabet: 1, start: 0, dead: 2, transitions: vec![vec![1], vec![0], vec![2]] };
        let m = d.minimize();
        assert_eq!(m.states, 2);
        assert!(m.is_isomorphic(&d));
        assert_eq!(m.count_profile(4), d.count_profile(4));
    }

    #[test]
    fn dfa_json_round_trip() {
        let d = infer_dfa(&class(&["21"]), 4).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Dfa>(&s).unwrap(), d);
    }
}
