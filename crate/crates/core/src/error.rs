/// Errors raised by the library.
///
/// Usage errors (bad indices, malformed tables) and domain errors (asking for
/// a reset word of a non-synchronizing automaton) share one enum; callers that
/// care can use [`Error::is_domain`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("state {state} is out of range for {n} states")]
    StateOutOfRange { state: usize, n: usize },

    #[error("letter {letter} is out of range for an alphabet of {q} letters")]
    LetterOutOfRange { letter: usize, q: usize },

    #[error("an automaton needs at least one state")]
    NoStates,

    #[error("an automaton needs at least one letter")]
    NoLetters,

    #[error("{n} states exceeds the limit of {max}")]
    TooManyStates { n: usize, max: usize },

    #[error("{q} letters exceeds the limit of {max}")]
    TooManyLetters { q: usize, max: usize },

    #[error("transition table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },

    #[error("relabeling is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("Černý automata need at least 2 states, got {0}")]
    CernyTooSmall(usize),

    #[error("sub-alphabet must not be empty")]
    EmptySubAlphabet,

    #[error("automaton is not synchronizing")]
    NotSynchronizing,

    #[error("automaton has {0} sink components, no word maps every state into one of them")]
    MultipleSinkComponents(usize),

    #[error("pair ({p}, {q}) cannot be merged by any word")]
    PairNotMergeable { p: usize, q: usize },

    #[error("word does not merge the pair ({p}, {q})")]
    WordDoesNotMerge { p: usize, q: usize },

    #[error("{what} supports at most {max} {unit}, got {got}")]
    Capacity {
        what: &'static str,
        unit: &'static str,
        got: usize,
        max: usize,
    },

    #[error("search space of about {estimate:.3e} tables exceeds the envelope of {limit:.1e}")]
    EnvelopeExceeded { estimate: f64, limit: f64 },

    #[error("invalid search spec: {0}")]
    InvalidSpec(&'static str),
}

impl Error {
    /// True for errors that describe the automaton rather than the request:
    /// the input is well formed but has no answer.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotSynchronizing
                | Error::MultipleSinkComponents(_)
                | Error::PairNotMergeable { .. }
                | Error::WordDoesNotMerge { .. }
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
