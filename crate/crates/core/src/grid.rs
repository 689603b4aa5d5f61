//! Exhaustive search for non-accepted words on a finite grid of delays.
//! Universality itself is undecidable; a clean run only bounds the search.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::automaton::TimedAutomaton;
use crate::error::Result;
use crate::rational::Rational;
use crate::semantics::member;
use crate::word::{Letter, TimedWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub max_length: usize,
    pub denominators: Vec<u32>,
    /// Delays are `k/d` with `1 <= k <= max_numerator`.
    pub max_numerator: u32,
}

impl GridSpec {
    pub fn new(max_length: usize, denominators: &[u32], max_numerator: u32) -> Self {
        GridSpec { max_length, denominators: denominators.to_vec(), max_numerator }
    }

    /// The distinct delay values, ascending.
    pub fn delays(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .denominators
            .iter()
            .filter(|&&d| d > 0)
            .flat_map(|&d| (1..=self.max_numerator).map(move |k| Rational::new(i64::from(k), i64::from(d))))
            .collect();
        set.into_iter().collect()
    }

    /// All grid words over `letters`, shortest first.
    pub fn words(&self, letters: &[Letter]) -> GridWords {
        GridWords {
            delays: self.delays(),
            letters: letters.to_vec(),
            max_length: self.max_length,
            len: 0,
            digits: Vec::new(),
            done: false,
        }
    }
}

/// Iterator over grid words in order of length, then lexicographically.
#[derive(Debug, Clone)]
pub struct GridWords {
    delays: Vec<Rational>,
    letters: Vec<Letter>,
    max_length: usize,
    len: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for GridWords {
    type Item = TimedWord;

    fn next(&mut self) -> Option<TimedWord> {
        if self.done {
            return None;
        }
        let base = self.delays.len() * self.letters.len();
        let word = TimedWord::from_pairs(
            self.digits
                .iter()
                .map(|&d| (self.delays[d / self.letters.len()].clone(), self.letters[d % self.letters.len()].clone())),
        );
        // Advance the odometer; roll over to the next length.
        let mut i = 0;
        while i < self.len && self.digits[i] + 1 == base {
            self.digits[i] = 0;
            i += 1;
        }
        if i < self.len {
            self.digits[i] += 1;
        } else if self.len < self.max_length && base > 0 {
            self.len += 1;
            self.digits = vec![0; self.len];
        } else {
            self.done = true;
        }
        Some(word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GridVerdict {
    /// A word the automaton rejects, so it is not universal.
    Counterexample { word: String, searched: usize },
    /// Every grid word is accepted; nothing is claimed beyond the grid.
    NoCounterexampleInGrid { searched: usize },
}

impl GridVerdict {
    pub fn counterexample(&self) -> Option<TimedWord> {
        match self {
            GridVerdict::Counterexample { word, .. } => word.parse().ok(),
            GridVerdict::NoCounterexampleInGrid { .. } => None,
        }
    }
}

/// The first grid word (shortest first) that `aut` rejects.
pub fn bounded_universality(aut: &TimedAutomaton, grid: &GridSpec) -> Result<GridVerdict> {
    aut.ensure_valid()?;
    let letters: Vec<Letter> = aut.alphabet.iter().cloned().collect();
    let mut searched = 0;
    for w in grid.words(&letters) {
        searched += 1;
        if !member(aut, &w)? {
            return Ok(GridVerdict::Counterexample { word: w.to_string(), searched });
        }
    }
    Ok(GridVerdict::NoCounterexampleInGrid { searched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gadget_a, universal};
    use crate::word::Alphabet;

    #[test]
    fn grid_size_and_order() {
        let g = GridSpec::new(2, &[1, 2], 2);
        // {1/2, 1, 2} x {a, b}
        assert_eq!(g.delays().len(), 3);
        let words: Vec<TimedWord> = g.words(&["a".into(), "b".into()]).collect();
        assert_eq!(words.len(), 1 + 6 + 36);
        assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert_eq!(words.iter().collect::<std::collections::HashSet<_>>().len(), words.len());
    }

    #[test]
    fn gadget_is_not_universal() {
        let g = gadget_a(&Alphabet::new(["a"]), "a").unwrap();
        let v = bounded_universality(&g, &GridSpec::new(3, &[1, 2], 2)).unwrap();
        assert_eq!(v.counterexample(), Some(TimedWord::empty()));
    }

    #[test]
    fn universal_has_no_counterexample() {
        let u = universal(&Alphabet::new(["a", "b"]));
        let v = bounded_universality(&u, &GridSpec::new(2, &[1, 2, 4], 1)).unwrap();
        assert!(matches!(v, GridVerdict::NoCounterexampleInGrid { searched } if searched == 1 + 6 + 36));
    }
}
