//! Union, intersection and concatenation of timed automata.
//!
//! `union` and the concatenations let the two operands share clocks by
//! position: a run of a union only ever uses one branch, and a
//! concatenation resets every clock on the separator, so sharing is safe and
//! keeps the clock count at the larger of the two. `product` runs both
//! operands at once and renames clocks apart.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automaton::{Location, TimedAutomaton, TimedBuchiAutomaton, Transition};
use crate::error::{Error, Result};
use crate::guard::{Clock, Guard, Relation};
use crate::word::{Alphabet, Letter};

/// One initial and accepting location with `true` self-loops on every letter.
pub fn universal(alphabet: &Alphabet) -> TimedAutomaton {
    let mut u = TimedAutomaton::new("univ", alphabet.clone());
    u.add_initial("u");
    u.add_accepting("u");
    for a in alphabet {
        u.add_transition(Transition::always("u", a.clone(), "u"));
    }
    u
}

/// The universal Büchi automaton: accepts every infinite word.
pub fn universal_omega(alphabet: &Alphabet) -> TimedBuchiAutomaton {
    TimedBuchiAutomaton(universal(alphabet).with_name("univ_omega"))
}

/// One initial, non-accepting location and no transitions.
pub fn empty_language(alphabet: &Alphabet) -> TimedAutomaton {
    let mut e = TimedAutomaton::new("empty", alphabet.clone());
    e.add_initial("e");
    e
}

fn fresh(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    (2..).map(|i| format!("{base}_{i}")).find(|n| !used.contains(n)).expect("unbounded supply of names")
}

/// Clock list for positional sharing and the renaming of `b`'s clocks.
fn shared_clocks(a: &TimedAutomaton, b: &TimedAutomaton) -> (Vec<Clock>, BTreeMap<Clock, Clock>) {
    let mut clocks = a.clocks.clone();
    let mut used: BTreeSet<String> = clocks.iter().cloned().collect();
    let mut map = BTreeMap::new();
    for (i, c) in b.clocks.iter().enumerate() {
        if i < clocks.len() {
            map.insert(c.clone(), clocks[i].clone());
        } else {
            let name = fresh(c, &used);
            used.insert(name.clone());
            clocks.push(name.clone());
            map.insert(c.clone(), name);
        }
    }
    (clocks, map)
}

/// Locations of `a` tagged `1.`, those of `b` tagged `2.`; clocks shared by
/// position. Initial and accepting sets are left empty.
fn side_by_side(a: &TimedAutomaton, b: &TimedAutomaton, name: String) -> TimedAutomaton {
    let (clocks, map) = shared_clocks(a, b);
    let a = a.rename_locations(|l| format!("1.{l}"));
    let b = b.rename_locations(|l| format!("2.{l}")).rename_clocks(|c| map[c].clone());
    let mut out = TimedAutomaton::new(name, a.alphabet.union(&b.alphabet));
    for c in clocks {
        out.add_clock(c);
    }
    for l in a.locations.iter().chain(&b.locations) {
        out.add_location(l.clone());
    }
    for t in a.transitions.into_iter().chain(b.transitions) {
        out.add_transition(t);
    }
    out
}

pub fn union(a: &TimedAutomaton, b: &TimedAutomaton) -> TimedAutomaton {
    let mut out = side_by_side(a, b, format!("{}_or_{}", a.name, b.name));
    for l in &a.initial {
        out.add_initial(format!("1.{l}"));
    }
    for l in &b.initial {
        out.add_initial(format!("2.{l}"));
    }
    for l in &a.accepting {
        out.add_accepting(format!("1.{l}"));
    }
    for l in &b.accepting {
        out.add_accepting(format!("2.{l}"));
    }
    out
}

pub fn union_omega(a: &TimedBuchiAutomaton, b: &TimedBuchiAutomaton) -> TimedBuchiAutomaton {
    TimedBuchiAutomaton(union(&a.0, &b.0))
}

/// Union of several automata, folded left.
pub fn union_all(parts: &[&TimedAutomaton]) -> TimedAutomaton {
    let (first, rest) = parts.split_first().expect("at least one operand");
    rest.iter().fold((*first).clone(), |acc, p| union(&acc, p))
}

/// Intersection by synchronous product over reachable location pairs.
pub fn product(a: &TimedAutomaton, b: &TimedAutomaton) -> TimedAutomaton {
    let used: BTreeSet<String> = a.clocks.iter().cloned().collect();
    let mut taken = used.clone();
    let mut map = BTreeMap::new();
    for c in &b.clocks {
        let name = fresh(c, &taken);
        taken.insert(name.clone());
        map.insert(c.clone(), name);
    }
    let b = b.rename_clocks(|c| map[c].clone());

    let mut ids: BTreeMap<(Location, Location), usize> = BTreeMap::new();
    let mut pairs: Vec<(Location, Location)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: (Location, Location), pairs: &mut Vec<_>, queue: &mut VecDeque<usize>| {
        *ids.entry(p.clone()).or_insert_with(|| {
            pairs.push(p);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        })
    };
    let mut initial = Vec::new();
    for p in &a.initial {
        for q in &b.initial {
            initial.push(intern((p.clone(), q.clone()), &mut pairs, &mut queue));
        }
    }
    let mut edges = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (p, q) = pairs[id].clone();
        for s in a.transitions.iter().filter(|t| t.source == p) {
            for t in b.transitions.iter().filter(|t| t.source == q && t.letter == s.letter) {
                let guard = s.guard.and(&t.guard);
                if !guard.is_satisfiable() {
                    continue;
                }
                let mut resets = s.resets.clone();
                resets.extend(t.resets.iter().cloned());
                let to = intern((s.target.clone(), t.target.clone()), &mut pairs, &mut queue);
                edges.push((id, s.letter.clone(), guard, resets, to));
            }
        }
    }
    let mut names: Vec<String> = pairs.iter().map(|(p, q)| format!("{p}.{q}")).collect();
    if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
        names = (0..pairs.len()).map(|i| format!("p{i}")).collect();
    }
    let mut out = TimedAutomaton::new(format!("{}_and_{}", a.name, b.name), a.alphabet.union(&b.alphabet));
    for c in a.clocks.iter().chain(&b.clocks) {
        out.add_clock(c.clone());
    }
    for (i, (p, q)) in pairs.iter().enumerate() {
        out.add_location(names[i].clone());
        if a.accepting.contains(p) && b.accepting.contains(q) {
            out.add_accepting(names[i].clone());
        }
    }
    for i in initial {
        out.add_initial(names[i].clone());
    }
    for (from, letter, guard, resets, to) in edges {
        out.add_transition(Transition {
            source: names[from].clone(),
            letter,
            guard,
            resets,
            target: names[to].clone(),
        });
    }
    out
}

fn check_separator(a: &TimedAutomaton, sep: &str, b: &TimedAutomaton) -> Result<()> {
    if a.alphabet.contains(sep) || b.alphabet.contains(sep) {
        return Err(Error::SeparatorInAlphabet(sep.to_string()));
    }
    a.ensure_valid()?;
    b.ensure_valid()
}

/// Joins `a`'s accepting locations to `b`'s initial ones with `sep`
/// transitions carrying `guard` and resetting every clock.
fn glue(a: &TimedAutomaton, sep: &Letter, b: &TimedAutomaton, guard: Guard, name: String) -> TimedAutomaton {
    let mut out = side_by_side(a, b, name);
    out.alphabet.insert(sep.clone());
    let all: Vec<Clock> = out.clocks.clone();
    for l in &a.initial {
        out.add_initial(format!("1.{l}"));
    }
    for l in &b.accepting {
        out.add_accepting(format!("2.{l}"));
    }
    for f in &a.accepting {
        for i in &b.initial {
            out.add_transition(Transition {
                source: format!("1.{f}"),
                letter: sep.clone(),
                guard: guard.clone(),
                resets: all.clone(),
                target: format!("2.{i}"),
            });
        }
    }
    out
}

/// Words `u·(t, sep)·v` with `u ∈ L(a)`, `v ∈ L(b)` and any delay `t`.
pub fn concat_sep(a: &TimedAutomaton, sep: &str, b: &TimedAutomaton) -> Result<TimedAutomaton> {
    check_separator(a, sep, b)?;
    Ok(glue(a, &sep.to_string(), b, Guard::always(), format!("{}_{sep}_{}", a.name, b.name)))
}

/// Like [`concat_sep`] but the separator comes exactly `delay` after the
/// last event of `u` (or after time 0 when `u` is empty). A fresh clock,
/// reset by every transition of `a`, measures that delay.
pub fn concat_fixed_delay(a: &TimedAutomaton, delay: u32, sep: &str, b: &TimedAutomaton) -> Result<TimedAutomaton> {
    check_separator(a, sep, b)?;
    let used: BTreeSet<String> = a.clocks.iter().chain(&b.clocks).cloned().collect();
    let z = fresh("z", &used);
    let mut timed = a.clone();
    timed.add_clock(z.clone());
    for t in &mut timed.transitions {
        t.resets.push(z.clone());
    }
    let name = format!("{}_{delay}{sep}_{}", a.name, b.name);
    Ok(glue(&timed, &sep.to_string(), b, Guard::atom(z, Relation::Eq, delay), name))
}

/// `L(a)·(t, sep)·L(b)` for a finite-word `a` and a Büchi `b`.
pub fn concat_sep_omega(a: &TimedAutomaton, sep: &str, b: &TimedBuchiAutomaton) -> Result<TimedBuchiAutomaton> {
    check_separator(a, sep, &b.0)?;
    Ok(TimedBuchiAutomaton(glue(a, &sep.to_string(), &b.0, Guard::always(), format!("{}_{sep}_{}", a.name, b.0.name))))
}
