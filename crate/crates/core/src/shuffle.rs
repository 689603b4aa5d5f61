//! Timed shuffle: interleavings `x1·y1·x2·y2 ⋯` of factorizations of two
//! timed words. Concatenation appends events unchanged, so every event of a
//! shuffle keeps the delay it had in its own word.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::Rng;

use crate::automaton::{Location, StopwatchAutomaton, TimedAutomaton, Transition};
use crate::error::Result;
use crate::rational::Rational;
use crate::word::{Event, TimedWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// How `w` splits into `x` (left) and `y` (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleDecomposition {
    /// Owner of each event of `w`.
    pub assignment: Vec<Side>,
    /// Per event of `w`, the part of its delay credited to `x` and to `y`.
    /// One of the two is always zero.
    pub splits: Vec<(Rational, Rational)>,
}

impl ShuffleDecomposition {
    fn from_assignment(w: &TimedWord, assignment: Vec<Side>) -> Self {
        let splits = w
            .events()
            .iter()
            .zip(&assignment)
            .map(|(e, s)| match s {
                Side::Left => (e.delay.clone(), Rational::zero()),
                Side::Right => (Rational::zero(), e.delay.clone()),
            })
            .collect();
        ShuffleDecomposition { assignment, splits }
    }

    /// The subsequence of `w` owned by `side`.
    pub fn project(&self, w: &TimedWord, side: Side) -> TimedWord {
        TimedWord::new(
            w.events().iter().zip(&self.assignment).filter(|(_, s)| **s == side).map(|(e, _)| e.clone()).collect(),
        )
    }

    /// Whether this decomposition really splits `w` into `x` and `y`.
    pub fn verify(&self, w: &TimedWord, x: &TimedWord, y: &TimedWord) -> bool {
        self.assignment.len() == w.len()
            && self.splits.len() == w.len()
            && w.events().iter().zip(&self.splits).all(|(e, (dx, dy))| dx + dy == e.delay)
            && self.project(w, Side::Left) == *x
            && self.project(w, Side::Right) == *y
    }

    /// The same split seen from the other side.
    pub fn mirrored(&self) -> Self {
        ShuffleDecomposition {
            assignment: self.assignment.iter().map(|s| s.flip()).collect(),
            splits: self.splits.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

/// A decomposition of `w` as a shuffle of `x` and `y`, if one exists.
/// Left events are preferred where both fit.
pub fn shuffle_member(w: &TimedWord, x: &TimedWord, y: &TimedWord) -> Option<ShuffleDecomposition> {
    let (n, m) = (x.len(), y.len());
    if w.len() != n + m {
        return None;
    }
    let (we, xe, ye) = (w.events(), x.events(), y.events());
    // done[i][j]: the suffix of w after i events of x and j of y is a
    // shuffle of the remaining suffixes.
    let mut done = vec![vec![false; m + 1]; n + 1];
    done[n][m] = true;
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            if i == n && j == m {
                continue;
            }
            let e = &we[i + j];
            done[i][j] = (i < n && xe[i] == *e && done[i + 1][j]) || (j < m && ye[j] == *e && done[i][j + 1]);
        }
    }
    if !done[0][0] {
        return None;
    }
    let (mut i, mut j) = (0, 0);
    let mut assignment = Vec::with_capacity(n + m);
    while i + j < n + m {
        let e = &we[i + j];
        if i < n && xe[i] == *e && done[i + 1][j] {
            assignment.push(Side::Left);
            i += 1;
        } else {
            assignment.push(Side::Right);
            j += 1;
        }
    }
    Some(ShuffleDecomposition::from_assignment(w, assignment))
}

pub fn is_shuffle(w: &TimedWord, x: &TimedWord, y: &TimedWord) -> bool {
    shuffle_member(w, x, y).is_some()
}

/// `count` random interleavings of `x` and `y`.
pub fn sample_shuffle(x: &TimedWord, y: &TimedWord, count: usize, rng: &mut impl Rng) -> Vec<TimedWord> {
    (0..count)
        .map(|_| {
            let (mut i, mut j) = (0, 0);
            let mut events: Vec<Event> = Vec::with_capacity(x.len() + y.len());
            while i < x.len() || j < y.len() {
                // Uniform over interleavings: pick left with probability
                // proportional to the remaining left events.
                let left_left = x.len() - i;
                let total = left_left + y.len() - j;
                if rng.gen_range(0..total) < left_left {
                    events.push(x.events()[i].clone());
                    i += 1;
                } else {
                    events.push(y.events()[j].clone());
                    j += 1;
                }
            }
            TimedWord::new(events)
        })
        .collect()
}

fn mode_tag(side: Side) -> &'static str {
    match side {
        Side::Left => "L",
        Side::Right => "R",
    }
}

/// A stopwatch automaton for `L(a) ⋈ L(b)`.
///
/// Locations are `(qa, qb, mode)`; in mode `L` only `a`'s clocks run and the
/// next event is read by `a`, in mode `R` likewise for `b`. Each letter
/// transition chooses the mode of the following delay, and both modes are
/// initial. Clocks are renamed apart with `.l` / `.r` suffixes.
pub fn shuffle_automaton(a: &TimedAutomaton, b: &TimedAutomaton) -> Result<StopwatchAutomaton> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    let a = a.rename_clocks(|c| format!("{c}.l"));
    let b = b.rename_clocks(|c| format!("{c}.r"));
    type State = (Location, Location, Side);
    let mut ids: BTreeMap<State, usize> = BTreeMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: State, states: &mut Vec<State>, queue: &mut VecDeque<usize>| {
        *ids.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            queue.push_back(states.len() - 1);
            states.len() - 1
        })
    };
    let mut initial = Vec::new();
    for qa in &a.initial {
        for qb in &b.initial {
            for side in [Side::Left, Side::Right] {
                initial.push(intern((qa.clone(), qb.clone(), side), &mut states, &mut queue));
            }
        }
    }
    // (source id, letter, guard, resets, target id)
    let mut edges = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (qa, qb, side) = states[id].clone();
        let (own, here) = match side {
            Side::Left => (&a, &qa),
            Side::Right => (&b, &qb),
        };
        for t in own.transitions.iter().filter(|t| &t.source == here) {
            for next in [Side::Left, Side::Right] {
                let target = match side {
                    Side::Left => (t.target.clone(), qb.clone(), next),
                    Side::Right => (qa.clone(), t.target.clone(), next),
                };
                let to = intern(target, &mut states, &mut queue);
                edges.push((id, t.letter.clone(), t.guard.clone(), t.resets.clone(), to));
            }
        }
    }

    let mut names: Vec<String> = states.iter().map(|(qa, qb, s)| format!("{qa}.{qb}.{}", mode_tag(*s))).collect();
    if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
        names = states.iter().enumerate().map(|(i, (_, _, s))| format!("s{i}.{}", mode_tag(*s))).collect();
    }

    let mut c = TimedAutomaton::new(format!("{}_shuffle_{}", a.name, b.name), a.alphabet.union(&b.alphabet));
    for clk in a.clocks.iter().chain(&b.clocks) {
        c.add_clock(clk.clone());
    }
    for (i, name) in names.iter().enumerate() {
        c.add_location(name.clone());
        let (qa, qb, _) = &states[i];
        if a.accepting.contains(qa) && b.accepting.contains(qb) {
            c.add_accepting(name.clone());
        }
    }
    for &i in &initial {
        c.add_initial(names[i].clone());
    }
    for (from, letter, guard, resets, to) in edges {
        c.add_transition(Transition { source: names[from].clone(), letter, guard, resets, target: names[to].clone() });
    }
    let mut sw = StopwatchAutomaton::from_timed(c);
    for (i, name) in names.iter().enumerate() {
        let running = match states[i].2 {
            Side::Left => &a.clocks,
            Side::Right => &b.clocks,
        };
        sw.active.insert(name.clone(), running.iter().cloned().collect());
    }
    Ok(sw)
}

/// All decompositions of `w` as a shuffle of two words; used to enumerate
/// candidate `(x, y)` witnesses. Exponential in `|w|`.
pub fn all_splits(w: &TimedWord) -> Vec<(TimedWord, TimedWord)> {
    let n = w.len();
    assert!(n < 32, "all_splits is for short words");
    let mut seen: HashMap<(TimedWord, TimedWord), ()> = HashMap::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let assignment: Vec<Side> =
            (0..n).map(|i| if mask & (1 << i) != 0 { Side::Right } else { Side::Left }).collect();
        let d = ShuffleDecomposition::from_assignment(w, assignment);
        let pair = (d.project(w, Side::Left), d.project(w, Side::Right));
        if seen.insert(pair.clone(), ()).is_none() {
            out.push(pair);
        }
    }
    out
}
