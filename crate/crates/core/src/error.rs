use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("delay {delay} at event {index} is not strictly positive")]
    NonPositiveDelay { index: usize, delay: Rational },

    #[error("negative delay {delay} at event {index}")]
    NegativeDelay { index: usize, delay: Rational },

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("lasso period is empty")]
    EmptyPeriod,

    #[error("lasso period has zero duration")]
    ZeroDurationPeriod,

    #[error("automaton is not deterministic")]
    NotDeterministic,

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("separator `{0}` already occurs in an operand alphabet")]
    SeparatorInAlphabet(String),

    #[error("automaton has {clocks} clocks, more than the bound {bound}")]
    TooManyClocks { clocks: usize, bound: usize },

    #[error("inconclusive: more than {cap} silent transitions needed in one gap")]
    Inconclusive { cap: usize },

    #[error("automaton accepts no word")]
    EmptyLanguage,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown gadget `{0}`")]
    UnknownGadget(String),
}
