//! Timed words, timed automata and the constructions around them, with exact
//! rational arithmetic throughout.

pub mod automaton;
pub mod constructions;
pub mod error;
pub mod format;
pub mod grid;
pub mod guard;
pub mod rational;
pub mod regions;
pub mod sample;
pub mod semantics;
pub mod shuffle;
pub mod word;

pub use automaton::{StopwatchAutomaton, TimedAutomaton, TimedBuchiAutomaton, Transition};
pub use error::{Error, Result};
pub use guard::{Guard, Relation};
pub use rational::Rational;
pub use word::{Alphabet, LassoTimedWord, TimedWord};
