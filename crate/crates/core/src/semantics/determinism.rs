//! Determinism check, completion and complementation of deterministic
//! timed automata.

use std::collections::BTreeSet;

use crate::automaton::{TimedAutomaton, Transition};
use crate::error::{Error, Result};
use crate::guard::{Guard, Interval};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub deterministic: bool,
    pub initial_count: usize,
    /// Pairs of transition indices with the same source and letter whose
    /// guards can hold together.
    pub conflicts: Vec<(usize, usize)>,
}

pub fn is_deterministic(aut: &TimedAutomaton) -> DeterminismReport {
    let mut conflicts = Vec::new();
    let ts = &aut.transitions;
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if ts[i].source == ts[j].source
                && ts[i].letter == ts[j].letter
                && ts[i].guard.and(&ts[j].guard).is_satisfiable()
            {
                conflicts.push((i, j));
            }
        }
    }
    DeterminismReport {
        deterministic: aut.initial.len() == 1 && conflicts.is_empty(),
        initial_count: aut.initial.len(),
        conflicts,
    }
}

fn fresh_location(aut: &TimedAutomaton, base: &str) -> String {
    let mut name = base.to_string();
    while aut.locations.contains(&name) {
        name.push('\'');
    }
    name
}

/// Adds a rejecting sink and, for every location and letter, transitions to
/// it covering exactly the clock values no existing guard accepts.
pub fn complete(det: &TimedAutomaton) -> Result<TimedAutomaton> {
    det.ensure_valid()?;
    if !is_deterministic(det).deterministic {
        return Err(Error::NotDeterministic);
    }
    let mut out = det.clone();
    let sink = fresh_location(det, "sink");
    let mut added = Vec::new();
    for q in &det.locations {
        for a in det.alphabet.iter() {
            let guards: Vec<&Guard> =
                det.transitions.iter().filter(|t| &t.source == q && &t.letter == a).map(|t| &t.guard).collect();
            for g in uncovered(&guards) {
                added.push(Transition {
                    source: q.clone(),
                    letter: a.clone(),
                    guard: g,
                    resets: Vec::new(),
                    target: sink.clone(),
                });
            }
        }
    }
    if !added.is_empty() {
        out.add_location(sink.clone());
        for t in added {
            out.add_transition(t);
        }
        for a in det.alphabet.iter() {
            out.add_transition(Transition::always(sink.clone(), a.clone(), sink.clone()));
        }
    }
    Ok(out)
}

/// Accepts exactly the words `det` rejects.
pub fn complement_det(det: &TimedAutomaton) -> Result<TimedAutomaton> {
    let mut out = complete(det)?;
    out.accepting = out.locations.difference(&out.accepting).cloned().collect();
    out.name = format!("not_{}", det.name);
    Ok(out)
}

/// Disjoint boxes covering the complement of the union of `guards`.
pub(crate) fn uncovered(guards: &[&Guard]) -> Vec<Guard> {
    let clocks: Vec<&str> = guards
        .iter()
        .flat_map(|g| g.atoms.iter().map(|a| a.clock.as_str()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let boxes: Vec<Vec<(usize, Interval)>> = guards.iter().map(|g| guard_box(g, &clocks)).collect();
    // Unsatisfiable guards cover nothing.
    let live: Vec<usize> = (0..guards.len()).filter(|&i| boxes[i].iter().all(|(_, iv)| !iv.is_empty())).collect();
    let pieces: Vec<Vec<Interval>> = clocks
        .iter()
        .map(|c| {
            let bounds: BTreeSet<u32> =
                guards.iter().flat_map(|g| g.atoms.iter().filter(|a| a.clock == *c).map(|a| a.constant)).collect();
            elementary_pieces(&bounds)
        })
        .collect();
    decompose(0, &live, &boxes, &pieces)
        .into_iter()
        .map(|ivs| {
            let atoms = ivs.iter().zip(&clocks).flat_map(|(iv, c)| iv.atoms(c)).collect();
            Guard::new(atoms)
        })
        .collect()
}

fn guard_box(g: &Guard, clocks: &[&str]) -> Vec<(usize, Interval)> {
    let ivs = g.intervals();
    clocks.iter().enumerate().map(|(i, c)| (i, ivs.get(c).copied().unwrap_or(Interval::FULL))).collect()
}

/// `[0,b1) {b1} (b1,b2) ... {bm} (bm,∞)` (with `{0}` first when 0 is a bound).
fn elementary_pieces(bounds: &BTreeSet<u32>) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut prev: Option<u32> = None;
    for &b in bounds {
        match prev {
            None if b > 0 => out.push(Interval::new(0, true, Some((b, false)))),
            None => {}
            Some(p) => out.push(Interval::new(p, false, Some((b, false)))),
        }
        out.push(Interval::point(b));
        prev = Some(b);
    }
    match prev {
        None => out.push(Interval::FULL),
        Some(p) => out.push(Interval::new(p, false, None)),
    }
    out
}

fn representative(piece: &Interval) -> Rational {
    match piece.hi {
        Some((h, true)) if h == piece.lo => Rational::from(h),
        Some((h, _)) => Rational::from(piece.lo).midpoint(&Rational::from(h)),
        None => Rational::from(piece.lo + 1),
    }
}

fn decompose(
    dim: usize,
    live: &[usize],
    boxes: &[Vec<(usize, Interval)>],
    pieces: &[Vec<Interval>],
) -> Vec<Vec<Interval>> {
    if dim == pieces.len() {
        return if live.is_empty() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut groups: Vec<(Interval, Vec<Vec<Interval>>)> = Vec::new();
    for piece in &pieces[dim] {
        let point = representative(piece);
        let still: Vec<usize> = live.iter().copied().filter(|&g| boxes[g][dim].1.contains(&point)).collect();
        let sub = decompose(dim + 1, &still, boxes, pieces);
        match groups.last_mut() {
            Some((iv, prev)) if *prev == sub => iv.hi = piece.hi,
            _ => groups.push((*piece, sub)),
        }
    }
    groups
        .into_iter()
        .flat_map(|(iv, sub)| {
            sub.into_iter().map(move |mut rest| {
                rest.insert(0, iv);
                rest
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::guard;
    use crate::semantics::member;
    use crate::word::{Alphabet, TimedWord};

    fn one_loc(guards: &[&str]) -> TimedAutomaton {
        let mut a = TimedAutomaton::new("D", Alphabet::new(["a"])).with_clocks(&["x"]);
        a.add_initial("q");
        a.add_accepting("q");
        for g in guards {
            a.add_transition(Transition::new("q", "a", guard(g), &[], "q"));
        }
        a
    }

    #[test]
    fn distinct_letters_are_deterministic() {
        let mut a = TimedAutomaton::new("D", Alphabet::new(["a", "b"]));
        a.add_initial("q");
        a.add_transition(Transition::always("q", "a", "q"));
        a.add_transition(Transition::always("q", "b", "q"));
        assert!(is_deterministic(&a).deterministic);
    }

    #[test]
    fn disjoint_guards_are_deterministic() {
        assert!(is_deterministic(&one_loc(&["x<1", "x>=1"])).deterministic);
        let r = is_deterministic(&one_loc(&["x<=1", "x>=1"]));
        assert!(!r.deterministic);
        assert_eq!(r.conflicts, vec![(0, 1)]);
    }

    #[test]
    fn two_starts_are_not_deterministic() {
        let mut a = one_loc(&[]);
        a.add_initial("p");
        let r = is_deterministic(&a);
        assert!(!r.deterministic);
        assert_eq!(r.initial_count, 2);
    }

    #[test]
    fn completion_adds_interval_complement() {
        let c = complete(&one_loc(&["x<=1"])).unwrap();
        let to_sink: Vec<_> = c.transitions.iter().filter(|t| t.source == "q" && t.target == "sink").collect();
        assert_eq!(to_sink.len(), 1);
        assert_eq!(to_sink[0].guard, guard("x>1"));

        let c = complete(&one_loc(&["x<1", "x=1"])).unwrap();
        let to_sink: Vec<_> = c.transitions.iter().filter(|t| t.source == "q" && t.target == "sink").collect();
        assert_eq!(to_sink.len(), 1);
        assert_eq!(to_sink[0].guard, guard("x>1"));

        let c = complete(&one_loc(&["x>0 & x<2"])).unwrap();
        let mut gs: Vec<String> = c
            .transitions
            .iter()
            .filter(|t| t.source == "q" && t.target == "sink")
            .map(|t| t.guard.to_string())
            .collect();
        gs.sort();
        assert_eq!(gs, vec!["x=0", "x>=2"]);
    }

    #[test]
    fn total_automaton_gains_nothing() {
        let a = one_loc(&["x<1", "x>=1"]);
        assert_eq!(complete(&a).unwrap(), a);
    }

    #[test]
    fn two_clock_complement_is_disjoint_and_exact() {
        let mut a = TimedAutomaton::new("D", Alphabet::new(["a"])).with_clocks(&["x", "y"]);
        a.add_initial("q");
        a.add_transition(Transition::new("q", "a", guard("x<1 & y>2"), &[], "q"));
        a.add_transition(Transition::new("q", "a", guard("x>=1 & y=0"), &[], "q"));
        let c = complete(&a).unwrap();
        assert!(is_deterministic(&c).deterministic);
        // Every grid valuation satisfies exactly one guard out of q.
        let grid: Vec<Rational> = (0..10).map(|i| Rational::new(i, 2)).collect();
        for x in &grid {
            for y in &grid {
                let n = c
                    .transitions
                    .iter()
                    .filter(|t| t.source == "q")
                    .filter(|t| t.guard.holds(|c| if c == "x" { x.clone() } else { y.clone() }))
                    .count();
                assert_eq!(n, 1, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn empty_language_complements_to_universal() {
        let mut empty = TimedAutomaton::new("E", Alphabet::new(["a", "b"]));
        empty.add_initial("q");
        let u = complement_det(&empty).unwrap();
        for s in ["", "1 a", "1/2 b 3 a 1 a"] {
            let w: TimedWord = s.parse().unwrap();
            assert!(member(&u, &w).unwrap(), "{s}");
        }
    }

    #[test]
    fn complement_negates_first_event_bound() {
        let mut d = TimedAutomaton::new("D", Alphabet::new(["a"])).with_clocks(&["x"]);
        d.add_initial("p");
        d.add_accepting("f");
        d.add_transition(Transition::new("p", "a", guard("x<=1"), &[], "f"));
        let c = complement_det(&d).unwrap();
        assert!(member(&c, &"2 a".parse().unwrap()).unwrap());
        assert!(!member(&c, &"1 a".parse().unwrap()).unwrap());
        assert!(member(&c, &"".parse().unwrap()).unwrap());
    }

    #[test]
    fn nondeterministic_input_rejected() {
        assert_eq!(complete(&one_loc(&["x<=1", "x>=1"])), Err(Error::NotDeterministic));
        assert_eq!(complement_det(&one_loc(&["true", "true"])), Err(Error::NotDeterministic));
    }
}
