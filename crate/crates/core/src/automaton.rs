//! Timed automata, timed Büchi automata and stopwatch automata.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::guard::{Clock, Guard, Relation};
use crate::rational::Rational;
use crate::word::{Alphabet, Letter};

pub type Location = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: Location,
    pub letter: Letter,
    pub guard: Guard,
    pub resets: Vec<Clock>,
    pub target: Location,
}

impl Transition {
    pub fn new(
        source: impl Into<Location>,
        letter: impl Into<Letter>,
        guard: Guard,
        resets: &[&str],
        target: impl Into<Location>,
    ) -> Self {
        Transition {
            source: source.into(),
            letter: letter.into(),
            guard,
            resets: resets.iter().map(|c| c.to_string()).collect(),
            target: target.into(),
        }
    }

    pub fn always(source: impl Into<Location>, letter: impl Into<Letter>, target: impl Into<Location>) -> Self {
        Transition::new(source, letter, Guard::always(), &[], target)
    }
}

/// A timed automaton accepting finite timed words by final locations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TimedAutomaton {
    pub name: String,
    pub alphabet: Alphabet,
    pub locations: BTreeSet<Location>,
    /// Ordered; order is significant for positional clock sharing.
    pub clocks: Vec<Clock>,
    pub initial: BTreeSet<Location>,
    pub accepting: BTreeSet<Location>,
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownSource { transition: usize, location: Location },
    UnknownTarget { transition: usize, location: Location },
    UnknownLetter { transition: usize, letter: Letter },
    UnknownGuardClock { transition: usize, clock: Clock },
    UnknownResetClock { transition: usize, clock: Clock },
    UnknownInitial(Location),
    UnknownAccepting(Location),
    DuplicateClock(Clock),
    UnknownActiveLocation(Location),
    UnknownActiveClock { location: Location, clock: Clock },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownSource { transition, location } => {
                write!(f, "transition {transition}: unknown source location `{location}`")
            }
            Violation::UnknownTarget { transition, location } => {
                write!(f, "transition {transition}: unknown target location `{location}`")
            }
            Violation::UnknownLetter { transition, letter } => {
                write!(f, "transition {transition}: letter `{letter}` not in alphabet")
            }
            Violation::UnknownGuardClock { transition, clock } => {
                write!(f, "transition {transition}: guard on undeclared clock `{clock}`")
            }
            Violation::UnknownResetClock { transition, clock } => {
                write!(f, "transition {transition}: reset of undeclared clock `{clock}`")
            }
            Violation::UnknownInitial(l) => write!(f, "initial location `{l}` is not declared"),
            Violation::UnknownAccepting(l) => write!(f, "final location `{l}` is not declared"),
            Violation::DuplicateClock(c) => write!(f, "clock `{c}` declared twice"),
            Violation::UnknownActiveLocation(l) => write!(f, "activity set for undeclared location `{l}`"),
            Violation::UnknownActiveClock { location, clock } => {
                write!(f, "activity set of `{location}` names undeclared clock `{clock}`")
            }
        }
    }
}

impl TimedAutomaton {
    pub fn new(name: impl Into<String>, alphabet: Alphabet) -> Self {
        TimedAutomaton { name: name.into(), alphabet, ..Default::default() }
    }

    pub fn with_clocks(mut self, clocks: &[&str]) -> Self {
        for c in clocks {
            self.add_clock(*c);
        }
        self
    }

    pub fn add_clock(&mut self, clock: impl Into<Clock>) {
        let clock = clock.into();
        if !self.clocks.contains(&clock) {
            self.clocks.push(clock);
        }
    }

    pub fn add_location(&mut self, location: impl Into<Location>) {
        self.locations.insert(location.into());
    }

    pub fn add_initial(&mut self, location: impl Into<Location>) {
        let l = location.into();
        self.locations.insert(l.clone());
        self.initial.insert(l);
    }

    pub fn add_accepting(&mut self, location: impl Into<Location>) {
        let l = location.into();
        self.locations.insert(l.clone());
        self.accepting.insert(l);
    }

    /// Adds the transition and declares its endpoints.
    pub fn add_transition(&mut self, t: Transition) {
        self.locations.insert(t.source.clone());
        self.locations.insert(t.target.clone());
        self.transitions.push(t);
    }

    pub fn num_clocks(&self) -> usize {
        self.clocks.len()
    }

    /// Largest guard constant (the `K` of `TA(n, K)`), 0 without guards.
    pub fn max_constant(&self) -> u32 {
        self.transitions.iter().map(|t| t.guard.max_constant()).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.clocks {
            if !seen.insert(c) {
                out.push(Violation::DuplicateClock(c.clone()));
            }
        }
        for l in &self.initial {
            if !self.locations.contains(l) {
                out.push(Violation::UnknownInitial(l.clone()));
            }
        }
        for l in &self.accepting {
            if !self.locations.contains(l) {
                out.push(Violation::UnknownAccepting(l.clone()));
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            self.validate_edge(i, &t.source, Some(&t.letter), &t.guard, &t.resets, &t.target, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn validate_edge(
        &self,
        i: usize,
        source: &str,
        letter: Option<&str>,
        guard: &Guard,
        resets: &[Clock],
        target: &str,
        out: &mut Vec<Violation>,
    ) {
        if !self.locations.contains(source) {
            out.push(Violation::UnknownSource { transition: i, location: source.to_string() });
        }
        if !self.locations.contains(target) {
            out.push(Violation::UnknownTarget { transition: i, location: target.to_string() });
        }
        if let Some(letter) = letter {
            if !self.alphabet.contains(letter) {
                out.push(Violation::UnknownLetter { transition: i, letter: letter.to_string() });
            }
        }
        for c in guard.clocks() {
            if !self.clocks.contains(c) {
                out.push(Violation::UnknownGuardClock { transition: i, clock: c.clone() });
            }
        }
        for c in resets {
            if !self.clocks.contains(c) {
                out.push(Violation::UnknownResetClock { transition: i, clock: c.clone() });
            }
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidAutomaton(v.to_string())),
        }
    }

    /// Applies `f` to every location name.
    pub fn rename_locations(&self, f: impl Fn(&str) -> Location) -> TimedAutomaton {
        TimedAutomaton {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            locations: self.locations.iter().map(|l| f(l)).collect(),
            clocks: self.clocks.clone(),
            initial: self.initial.iter().map(|l| f(l)).collect(),
            accepting: self.accepting.iter().map(|l| f(l)).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition { source: f(&t.source), target: f(&t.target), ..t.clone() })
                .collect(),
        }
    }

    /// Applies `f` to every clock name (in guards, resets and declarations).
    pub fn rename_clocks(&self, f: impl Fn(&str) -> Clock) -> TimedAutomaton {
        let mut out = self.clone();
        out.clocks = self.clocks.iter().map(|c| f(c)).collect();
        for t in &mut out.transitions {
            t.guard = t.guard.rename(&f);
            t.resets = t.resets.iter().map(|c| f(c)).collect();
        }
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// A timed automaton over infinite words; `accepting` is the Büchi set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TimedBuchiAutomaton(pub TimedAutomaton);

impl TimedBuchiAutomaton {
    pub fn new(automaton: TimedAutomaton) -> Self {
        TimedBuchiAutomaton(automaton)
    }

    pub fn automaton(&self) -> &TimedAutomaton {
        &self.0
    }

    pub fn into_inner(self) -> TimedAutomaton {
        self.0
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.0.validate()
    }
}

/// An instantaneous transition that reads no letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SilentTransition {
    pub source: Location,
    pub guard: Guard,
    pub resets: Vec<Clock>,
    pub target: Location,
}

/// A timed automaton whose clocks may be frozen: during a delay spent in
/// location `q` only the clocks in `active[q]` advance. Locations without an
/// entry keep every clock running.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StopwatchAutomaton {
    pub automaton: TimedAutomaton,
    pub silent: Vec<SilentTransition>,
    pub active: BTreeMap<Location, BTreeSet<Clock>>,
}

impl StopwatchAutomaton {
    /// Every clock active everywhere, no silent transitions.
    pub fn from_timed(automaton: TimedAutomaton) -> Self {
        StopwatchAutomaton { automaton, ..Default::default() }
    }

    pub fn is_active(&self, location: &str, clock: &str) -> bool {
        self.active.get(location).is_none_or(|set| set.contains(clock))
    }

    pub fn add_silent(&mut self, t: SilentTransition) {
        self.automaton.locations.insert(t.source.clone());
        self.automaton.locations.insert(t.target.clone());
        self.silent.push(t);
    }

    pub fn validate(&self) -> Vec<Violation> {
        let aut = &self.automaton;
        let mut out = aut.validate();
        let base = aut.transitions.len();
        for (i, t) in self.silent.iter().enumerate() {
            aut.validate_edge(base + i, &t.source, None, &t.guard, &t.resets, &t.target, &mut out);
        }
        for (l, set) in &self.active {
            if !aut.locations.contains(l) {
                out.push(Violation::UnknownActiveLocation(l.clone()));
            }
            for c in set {
                if !aut.clocks.contains(c) {
                    out.push(Violation::UnknownActiveClock { location: l.clone(), clock: c.clone() });
                }
            }
        }
        out
    }
}

/// Integer-indexed view of an automaton used by the decision procedures.
#[derive(Debug, Clone)]
pub(crate) struct Indexed {
    pub locations: Vec<Location>,
    pub clocks: Vec<Clock>,
    pub letters: Vec<Letter>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub edges: Vec<Edge>,
    /// Edge indices by `(source, letter)`.
    pub by_source_letter: HashMap<(usize, usize), Vec<usize>>,
    pub max_constant: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub source: usize,
    pub letter: usize,
    pub guard: Vec<(usize, Relation, Rational)>,
    pub resets: Vec<usize>,
    pub target: usize,
}

impl Edge {
    pub fn holds(&self, value: impl Fn(usize) -> Rational) -> bool {
        self.guard.iter().all(|(c, rel, k)| rel.holds(&value(*c), k))
    }
}

impl Indexed {
    pub fn new(aut: &TimedAutomaton) -> Result<Indexed> {
        aut.ensure_valid()?;
        let locations: Vec<Location> = aut.locations.iter().cloned().collect();
        let loc_ix: HashMap<&str, usize> = locations.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let clock_ix: HashMap<&str, usize> = aut.clocks.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let letters: Vec<Letter> = aut.alphabet.iter().cloned().collect();
        let letter_ix: HashMap<&str, usize> = letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let edges: Vec<Edge> = aut
            .transitions
            .iter()
            .map(|t| Edge {
                source: loc_ix[t.source.as_str()],
                letter: letter_ix[t.letter.as_str()],
                guard: t
                    .guard
                    .atoms
                    .iter()
                    .map(|a| (clock_ix[a.clock.as_str()], a.relation, Rational::from(a.constant)))
                    .collect(),
                resets: t.resets.iter().map(|c| clock_ix[c.as_str()]).collect(),
                target: loc_ix[t.target.as_str()],
            })
            .collect();
        let mut by_source_letter: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            by_source_letter.entry((e.source, e.letter)).or_default().push(i);
        }
        Ok(Indexed {
            initial: aut.initial.iter().map(|l| loc_ix[l.as_str()]).collect(),
            accepting: locations.iter().map(|l| aut.accepting.contains(l)).collect(),
            locations,
            clocks: aut.clocks.clone(),
            letters,
            edges,
            by_source_letter,
            max_constant: aut.max_constant(),
        })
    }

    pub fn letter_index(&self, letter: &str) -> Result<usize> {
        self.letters.iter().position(|l| l == letter).ok_or_else(|| Error::UnknownLetter(letter.to_string()))
    }

    pub fn outgoing(&self, source: usize, letter: usize) -> &[usize] {
        self.by_source_letter.get(&(source, letter)).map_or(&[], Vec::as_slice)
    }
}
