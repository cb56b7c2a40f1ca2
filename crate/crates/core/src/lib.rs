//! Pattern-avoidance permutation classes made executable.
//!
//! * [`perm`] and [`matching`]: finite permutations, sums, involvement.
//! * [`class`], [`merge`], [`atomic`]: finitely based classes, enumeration,
//!   sum-completeness and atomicity certificates.
//! * [`periodic`] and [`landmarks`]: ultimately periodic permutations of the
//!   natural numbers, their pattern sets and bases, and the `u`/`v` landmark
//!   sequences.
//! * [`encoding`], [`dfa`], [`genfun`]: the rank encoding, automata inferred
//!   from encoded classes, and exact rational generating functions.
//! * [`structure`] and [`families`]: the sum-form / periodic dichotomy and
//!   the example permutations and families.

pub mod atomic;
pub mod class;
pub mod dfa;
pub mod encoding;
pub mod error;
pub mod families;
pub mod genfun;
pub mod landmarks;
pub mod matching;
pub mod merge;
pub mod periodic;
pub mod perm;
pub mod structure;

pub use atomic::{atomicity_check, AtomicityReport, Verdict};
pub use class::{FinalComponentSet, FiniteBasisClass, LevelSource, PatternClass};
pub use dfa::{infer_dfa, Dfa};
pub use encoding::{decode, encode, recover_values, PeriodicWord, RankWord};
pub use error::{Error, Result};
pub use genfun::{rational_gf, GenFun, Poly};
pub use landmarks::{landmarks, uv_sequences, Landmarks};
pub use matching::involves;
pub use merge::minimal_mergers;
pub use periodic::{check_eventual_periodicity, PeriodicPerm, PiSource, RawPrefix};
pub use perm::{flatten, Perm};
pub use structure::{classify, Branch, DichotomyReport};
