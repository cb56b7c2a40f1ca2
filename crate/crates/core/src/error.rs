use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: value {value} is duplicated")]
    DuplicatedValue { value: u64 },
    #[error("not a permutation: value {value} is missing")]
    MissingValue { value: u64 },
    #[error("value {value} is out of range 1..={len}")]
    ValueOutOfRange { value: u64, len: usize },
    #[error("sequence entries at positions {first} and {second} are equal or incomparable")]
    IndistinctEntries { first: usize, second: usize },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("decomposability is undefined for the empty permutation")]
    EmptyPermutation,
    #[error("the final component set of an empty basis is undefined")]
    EmptyBasis,

    #[error("periodic window has {len} values but N + P - 1 = {needed}")]
    WindowTooShort { len: usize, needed: usize },
    #[error("periodic window is inconsistent at position {position}: expected {expected}, found {found}")]
    WindowInconsistent { position: usize, expected: u64, found: u64 },
    #[error("period must be positive and start index at least 1")]
    BadPeriod,
    #[error("not a bijection: value {value} is never attained")]
    ValueMissed { value: u64 },
    #[error("not a bijection: value {value} is attained more than once")]
    ValueDoubled { value: u64 },
    #[error("pattern set did not stabilize by window length {window}")]
    NotStabilized { window: usize },

    #[error("no element of C embeds in the analysed window; the class lies in the A(C) branch")]
    NoComponentEmbedding,
    #[error("search did not settle within horizon {horizon}")]
    HorizonTooSmall { horizon: usize },
    #[error("position {position} lies in a finite sum component (component ends at {boundary})")]
    FiniteComponent { position: usize, boundary: usize },
    #[error("landmark interleaving fails at index {index}: {detail}")]
    Interleaving { index: usize, detail: String },

    #[error("rank letter {letter} at position {position} is outside 1..={position}")]
    LetterOutOfRange { position: usize, letter: u32 },
    #[error("alphabet has not stabilized by length {len} (max letter {max})")]
    AlphabetUnstable { len: usize, max: u32 },
    #[error("training length {len} is too short for alphabet size {alphabet} (need at least {needed})")]
    TrainingTooShort { len: usize, alphabet: u32, needed: usize },
    #[error("automaton inference is not stable at training length {len}: {reason}")]
    InferenceUnstable { len: usize, reason: String },

    #[error("class {which} is not sum-complete (basis element {element} is decomposable)")]
    NotSumComplete { which: String, element: Perm },
    #[error("basis is inconsistent with Sub(pi) at {perm}: {detail}")]
    InconsistentBasis { perm: Perm, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
