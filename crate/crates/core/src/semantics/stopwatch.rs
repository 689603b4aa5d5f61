//! Membership for stopwatch automata.
//!
//! Each delay of the word may be split around silent transitions. Along a
//! fixed sequence of discrete choices, clock values are affine in the unknown
//! sub-delays, so a path is realizable iff a linear system over nonnegative
//! rationals is feasible; that is decided exactly after every step.

use crate::automaton::{Indexed, StopwatchAutomaton};
use crate::error::{Error, Result};
use crate::guard::Relation;
use crate::rational::Rational;
use crate::semantics::lp::{self, Constraint, LinExpr};
use crate::word::TimedWord;

pub const DEFAULT_SILENT_CAP: usize = 8;

pub fn member_stopwatch(aut: &StopwatchAutomaton, w: &TimedWord) -> Result<bool> {
    member_stopwatch_with(aut, w, DEFAULT_SILENT_CAP)
}

/// Like [`member_stopwatch`] with at most `cap` silent transitions per gap.
/// Fails with [`Error::Inconclusive`] when no accepting run was found but
/// some feasible branch was cut at the cap.
pub fn member_stopwatch_with(aut: &StopwatchAutomaton, w: &TimedWord, cap: usize) -> Result<bool> {
    let violations = aut.validate();
    if let Some(v) = violations.first() {
        return Err(Error::InvalidAutomaton(v.to_string()));
    }
    let ix = Indexed::new(&aut.automaton)?;
    let letters = w.letters().map(|l| ix.letter_index(l)).collect::<Result<Vec<_>>>()?;
    let loc_ix = |l: &str| ix.locations.iter().position(|x| x == l).expect("validated");
    let clock_ix = |c: &str| ix.clocks.iter().position(|x| x == c).expect("validated");
    let silent: Vec<SilentEdge> = aut
        .silent
        .iter()
        .map(|t| SilentEdge {
            source: loc_ix(&t.source),
            guard: t.guard.atoms.iter().map(|a| (clock_ix(&a.clock), a.relation, Rational::from(a.constant))).collect(),
            resets: t.resets.iter().map(|c| clock_ix(c)).collect(),
            target: loc_ix(&t.target),
        })
        .collect();
    let active: Vec<Vec<bool>> =
        ix.locations.iter().map(|l| ix.clocks.iter().map(|c| aut.is_active(l, c)).collect()).collect();
    let mut search =
        Search { ix: &ix, silent, active, letters, delays: w.delays().cloned().collect(), cap, capped: false };
    let n = ix.clocks.len();
    for &q in &ix.initial {
        let start = Path { location: q, clocks: vec![LinExpr::default(); n], constraints: Vec::new(), nvars: 0 };
        if search.dfs(0, start, Vec::new(), 0) {
            return Ok(true);
        }
    }
    if search.capped {
        Err(Error::Inconclusive { cap })
    } else {
        Ok(false)
    }
}

struct SilentEdge {
    source: usize,
    guard: Vec<(usize, Relation, Rational)>,
    resets: Vec<usize>,
    target: usize,
}

#[derive(Clone)]
struct Path {
    location: usize,
    clocks: Vec<LinExpr>,
    constraints: Vec<Constraint>,
    nvars: usize,
}

impl Path {
    fn advance(&mut self, by: &LinExpr, active: &[bool]) {
        for (c, e) in self.clocks.iter_mut().enumerate() {
            if active[c] {
                *e = e.add(by);
            }
        }
    }

    /// Adds `new` constraints; false when the path becomes infeasible.
    fn constrain(&mut self, new: Vec<Constraint>) -> bool {
        let mut symbolic = false;
        for k in new {
            match k.constant_truth() {
                Some(true) => {}
                Some(false) => return false,
                None => {
                    symbolic = true;
                    self.constraints.push(k);
                }
            }
        }
        !symbolic || lp::feasible(self.nvars, &self.constraints)
    }

    fn guard(&self, guard: &[(usize, Relation, Rational)]) -> Vec<Constraint> {
        guard.iter().map(|(c, rel, k)| Constraint::new(&self.clocks[*c], *rel, &LinExpr::constant(k.clone()))).collect()
    }

    fn reset(&mut self, clocks: &[usize]) {
        for &c in clocks {
            self.clocks[c] = LinExpr::default();
        }
    }
}

struct Search<'a> {
    ix: &'a Indexed,
    silent: Vec<SilentEdge>,
    active: Vec<Vec<bool>>,
    letters: Vec<usize>,
    delays: Vec<Rational>,
    cap: usize,
    capped: bool,
}

impl Search<'_> {
    /// `gap_vars` are the sub-delays already spent in the current gap and
    /// `moves` the silent transitions taken in it.
    fn dfs(&mut self, pos: usize, path: Path, gap_vars: Vec<usize>, moves: usize) -> bool {
        let trailing = pos == self.letters.len();
        if trailing && self.ix.accepting[path.location] {
            return true;
        }
        let gap_used: LinExpr = gap_vars.iter().fold(LinExpr::default(), |acc, &v| acc.add(&LinExpr::var(v)));

        if !trailing {
            // Spend the rest of the gap here, then read the letter.
            let rest = LinExpr::constant(self.delays[pos].clone()).sub(&gap_used);
            let edges: Vec<usize> = self.ix.outgoing(path.location, self.letters[pos]).to_vec();
            for e in edges {
                let edge = &self.ix.edges[e];
                let mut next = path.clone();
                let mut new = Vec::new();
                if !gap_vars.is_empty() {
                    new.push(Constraint::new(&rest, Relation::Ge, &LinExpr::default()));
                }
                next.advance(&rest, &self.active[path.location]);
                let guard: Vec<_> = edge.guard.clone();
                new.extend(next.guard(&guard));
                if !next.constrain(new) {
                    continue;
                }
                next.reset(&edge.resets);
                next.location = edge.target;
                if self.dfs(pos + 1, next, Vec::new(), 0) {
                    return true;
                }
            }
        }

        for s in 0..self.silent.len() {
            if self.silent[s].source != path.location {
                continue;
            }
            let mut next = path.clone();
            let mut new = Vec::new();
            let mut vars = gap_vars.clone();
            if !trailing {
                // A fresh sub-delay before the silent move.
                let v = next.nvars;
                next.nvars += 1;
                vars.push(v);
                let used = gap_used.add(&LinExpr::var(v));
                new.push(Constraint::new(&used, Relation::Le, &LinExpr::constant(self.delays[pos].clone())));
                next.advance(&LinExpr::var(v), &self.active[path.location]);
            }
            let guard = self.silent[s].guard.clone();
            new.extend(next.guard(&guard));
            if !next.constrain(new) {
                continue;
            }
            if moves >= self.cap {
                self.capped = true;
                continue;
            }
            next.reset(&self.silent[s].resets);
            next.location = self.silent[s].target;
            if self.dfs(pos, next, vars, moves + 1) {
                return true;
            }
        }
        false
    }
}
