use std::collections::HashSet;

use crate::automaton::{Indexed, TimedAutomaton};
use crate::error::Result;
use crate::rational::Rational;
use crate::word::TimedWord;

/// A configuration of a run over a fixed word. The clock values are implied:
/// clock `c` equals the time elapsed since event `reset_at[c]` (0 = origin).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunState {
    pub location: usize,
    pub position: usize,
    pub reset_at: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunStats {
    pub accepted: bool,
    /// Most transitions simultaneously enabled at any visited state.
    pub max_enabled: usize,
    pub states_visited: usize,
}

/// Whether `aut` accepts `w` (by final locations).
pub fn member(aut: &TimedAutomaton, w: &TimedWord) -> Result<bool> {
    Ok(simulate(aut, w)?.accepted)
}

/// Memoized depth-first search over runs; also reports branching.
pub fn simulate(aut: &TimedAutomaton, w: &TimedWord) -> Result<RunStats> {
    let ix = Indexed::new(aut)?;
    let letters = w.letters().map(|l| ix.letter_index(l)).collect::<Result<Vec<_>>>()?;
    let search = Search { ix: &ix, letters, times: w.times() };
    let mut stats = RunStats::default();
    let mut failed = HashSet::new();
    let n = ix.clocks.len();
    for &q in &ix.initial {
        let start = RunState { location: q, position: 0, reset_at: vec![0; n] };
        if search.dfs(start, &mut failed, &mut stats) {
            stats.accepted = true;
            break;
        }
    }
    Ok(stats)
}

struct Search<'a> {
    ix: &'a Indexed,
    letters: Vec<usize>,
    times: Vec<Rational>,
}

impl Search<'_> {
    fn dfs(&self, state: RunState, failed: &mut HashSet<RunState>, stats: &mut RunStats) -> bool {
        if state.position == self.letters.len() {
            return self.ix.accepting[state.location];
        }
        if failed.contains(&state) {
            return false;
        }
        stats.states_visited += 1;
        let now = &self.times[state.position + 1];
        let value = |c: usize| now - &self.times[state.reset_at[c]];
        let enabled: Vec<usize> = self
            .ix
            .outgoing(state.location, self.letters[state.position])
            .iter()
            .copied()
            .filter(|&e| self.ix.edges[e].holds(value))
            .collect();
        stats.max_enabled = stats.max_enabled.max(enabled.len());
        for e in enabled {
            let edge = &self.ix.edges[e];
            let mut reset_at = state.reset_at.clone();
            for &c in &edge.resets {
                reset_at[c] = state.position + 1;
            }
            let next = RunState { location: edge.target, position: state.position + 1, reset_at };
            if self.dfs(next, failed, stats) {
                return true;
            }
        }
        failed.insert(state);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Transition;
    use crate::error::Error;
    use crate::format::guard;
    use crate::word::Alphabet;

    fn gadget() -> TimedAutomaton {
        let mut a = TimedAutomaton::new("A", Alphabet::new(["a"])).with_clocks(&["x"]);
        a.add_initial("q0");
        a.add_accepting("q2");
        a.add_transition(Transition::always("q0", "a", "q0"));
        a.add_transition(Transition::new("q0", "a", guard("true"), &["x"], "q1"));
        a.add_transition(Transition::always("q1", "a", "q1"));
        a.add_transition(Transition::new("q1", "a", guard("x=1"), &[], "q2"));
        a.add_transition(Transition::always("q2", "a", "q2"));
        a
    }

    fn w(s: &str) -> TimedWord {
        s.parse().unwrap()
    }

    #[test]
    fn distance_one_pairs() {
        let a = gadget();
        assert!(member(&a, &w("1/2 a 1 a")).unwrap());
        assert!(!member(&a, &w("1/2 a 3/10 a")).unwrap());
        assert!(member(&a, &w("1/5 a 2/5 a 3/5 a")).unwrap());
        assert!(!member(&a, &w("1 a")).unwrap());
        assert!(!member(&a, &TimedWord::empty()).unwrap());
    }

    #[test]
    fn foreign_letter_is_an_error() {
        assert_eq!(member(&gadget(), &w("1 b")), Err(Error::UnknownLetter("b".into())));
    }

    #[test]
    fn renaming_locations_preserves_verdicts() {
        let a = gadget();
        let b = a.rename_locations(|l| format!("renamed_{l}"));
        for s in ["1/2 a 1 a", "1/2 a 3/10 a", "1/5 a 2/5 a 3/5 a", "1 a 1/3 a 2/3 a"] {
            assert_eq!(member(&a, &w(s)).unwrap(), member(&b, &w(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn stats_report_branching() {
        let stats = simulate(&gadget(), &w("1/2 a 1 a")).unwrap();
        assert!(stats.accepted);
        assert_eq!(stats.max_enabled, 2);
    }
}
