//! Region abstraction: emptiness, Büchi emptiness, witnesses and untiming.
//!
//! Delays of timed words are strictly positive, so the searches below work
//! on "post-action" states `(location, region)`: a step picks a region
//! reachable by a positive delay and then fires a transition whose guard the
//! region satisfies.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::automaton::{Indexed, Location, TimedAutomaton, TimedBuchiAutomaton, Transition};
use crate::error::{Error, Result};
use crate::guard::Clock;
use crate::rational::Rational;
use crate::semantics::{member, tarjan};
use crate::word::{Letter, TimedWord};

/// A clock region for `n` clocks and maximal constant `k`.
///
/// `ints[c]` is the integer part of clock `c`, or `k + 1` when the clock is
/// above `k`. Bounded clocks with positive fractional part are listed in
/// `classes`, grouped by equal fractional part in increasing order; every
/// other bounded clock has fractional part zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    k: u32,
    ints: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl Region {
    pub fn zero(n: usize, k: u32) -> Region {
        Region { k, ints: vec![0; n], classes: Vec::new() }
    }

    pub fn num_clocks(&self) -> usize {
        self.ints.len()
    }

    pub fn max_constant(&self) -> u32 {
        self.k
    }

    pub fn is_unbounded(&self, c: usize) -> bool {
        self.ints[c] > self.k
    }

    fn in_class(&self, c: usize) -> bool {
        self.classes.iter().any(|cl| cl.contains(&c))
    }

    /// Bounded with fractional part zero.
    pub fn is_integral(&self, c: usize) -> bool {
        !self.is_unbounded(c) && !self.in_class(c)
    }

    /// No bounded clock sits on an integer, so small delays stay inside.
    pub fn is_open(&self) -> bool {
        (0..self.num_clocks()).all(|c| !self.is_integral(c))
    }

    /// A value inside the region's range for clock `c`; guards with
    /// constants at most `k` cannot tell it from any other.
    pub fn representative(&self, c: usize) -> Rational {
        if self.is_unbounded(c) {
            Rational::from(self.k + 1)
        } else if self.in_class(c) {
            Rational::from(self.ints[c]) + Rational::new(1, 2)
        } else {
            Rational::from(self.ints[c])
        }
    }

    /// The next region met when time elapses (itself once all clocks are
    /// unbounded).
    pub fn successor(&self) -> Region {
        let mut next = self.clone();
        let integral: Vec<usize> = (0..self.num_clocks()).filter(|&c| self.is_integral(c)).collect();
        if !integral.is_empty() {
            let mut fresh = Vec::new();
            for c in integral {
                if self.ints[c] == self.k {
                    next.ints[c] = self.k + 1;
                } else {
                    fresh.push(c);
                }
            }
            if !fresh.is_empty() {
                next.classes.insert(0, fresh);
            }
        } else if let Some(last) = next.classes.pop() {
            for c in last {
                next.ints[c] += 1;
            }
        }
        next
    }

    /// Regions reachable by a strictly positive delay, in the order met.
    pub fn strict_successors(&self) -> Vec<Region> {
        let mut out = Vec::new();
        if self.is_open() {
            out.push(self.clone());
        }
        let mut cur = self.clone();
        loop {
            let next = cur.successor();
            if next == cur {
                break;
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    pub fn reset(&self, clocks: &[usize]) -> Region {
        let mut next = self.clone();
        for &c in clocks {
            next.ints[c] = 0;
        }
        for cl in &mut next.classes {
            cl.retain(|c| !clocks.contains(c));
        }
        next.classes.retain(|cl| !cl.is_empty());
        next
    }

    /// Region of a concrete valuation.
    pub fn of(values: &[Rational], k: u32) -> Region {
        let bound = Rational::from(k);
        let mut ints = Vec::with_capacity(values.len());
        let mut fracs: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (c, v) in values.iter().enumerate() {
            if v > &bound {
                ints.push(k + 1);
                continue;
            }
            let floor = u32::try_from(v.floor()).expect("bounded clock value");
            ints.push(floor);
            let f = v.fract();
            if !f.is_zero() {
                fracs.entry(f).or_default().push(c);
            }
        }
        Region { k, ints, classes: fracs.into_values().collect() }
    }

    pub fn contains(&self, values: &[Rational]) -> bool {
        Region::of(values, self.k) == *self
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for c in 0..self.num_clocks() {
            let n = self.ints[c];
            parts.push(if self.is_unbounded(c) {
                format!("c{c}>{}", self.k)
            } else if self.in_class(c) {
                format!("{n}<c{c}<{}", n + 1)
            } else {
                format!("c{c}={n}")
            });
        }
        if !self.classes.is_empty() {
            let order: Vec<String> = self
                .classes
                .iter()
                .map(|cl| cl.iter().map(|c| format!("c{c}")).collect::<Vec<_>>().join("="))
                .collect();
            parts.push(format!("frac {}", order.join("<")));
        }
        if parts.is_empty() {
            write!(f, "true")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Every region for `n` clocks and maximal constant `k`.
pub fn all_regions(n: usize, k: u32) -> Vec<Region> {
    // Per clock: 0..=k a point, k+1..=2k an open interval, 2k+1 unbounded.
    let choices = 2 * k + 2;
    let mut out = Vec::new();
    let mut pick = vec![0u32; n];
    loop {
        let ints: Vec<u32> = pick
            .iter()
            .map(|&p| match p {
                p if p <= k => p,
                p if p <= 2 * k => p - k - 1,
                _ => k + 1,
            })
            .collect();
        let open: Vec<usize> = (0..n).filter(|&c| pick[c] > k && pick[c] <= 2 * k).collect();
        for classes in ordered_partitions(&open) {
            out.push(Region { k, ints: ints.clone(), classes });
        }
        // Odometer increment.
        let mut i = 0;
        while i < n && pick[i] + 1 == choices {
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        pick[i] += 1;
    }
    out
}

fn ordered_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // Choose the nonempty first block, recurse on the rest.
    let m = items.len();
    for mask in 1u32..(1 << m) {
        let first: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| items[i]).collect();
        let rest: Vec<usize> = (0..m).filter(|i| mask & (1 << i) == 0).map(|i| items[i]).collect();
        for mut tail in ordered_partitions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Closed-form number of regions: clocks in open unit intervals (`m` of
/// them, `k` choices each) are ordered by an ordered set partition; the
/// rest take one of `k + 2` integral/unbounded values.
pub fn region_count(n: usize, k: u32) -> u128 {
    let k = u128::from(k);
    (0..=n).map(|m| binomial(n, m) * k.pow(m as u32) * fubini(m) * (k + 2).pow((n - m) as u32)).sum()
}

fn binomial(n: usize, m: usize) -> u128 {
    (0..m).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of ordered set partitions of `m` items.
fn fubini(m: usize) -> u128 {
    let mut a = vec![1u128];
    for j in 1..=m {
        let v = (1..=j).map(|i| binomial(j, i) * a[j - i]).sum();
        a.push(v);
    }
    a[m]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionLabel {
    Delay,
    /// Index into the automaton's transition list.
    Action(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionEdge {
    pub from: usize,
    pub to: usize,
    pub label: RegionLabel,
}

/// The classical region graph: time-successor and action edges over
/// reachable `(location, region)` pairs.
#[derive(Debug, Clone)]
pub struct RegionAutomaton {
    pub locations: Vec<Location>,
    pub clocks: Vec<Clock>,
    pub states: Vec<(usize, Region)>,
    pub edges: Vec<RegionEdge>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
}

impl RegionAutomaton {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }
}

pub fn build_region_automaton(aut: &TimedAutomaton) -> Result<RegionAutomaton> {
    let ix = Indexed::new(aut)?;
    let k = ix.max_constant;
    let mut ids: HashMap<(usize, Region), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: (usize, Region), states: &mut Vec<(usize, Region)>, queue: &mut VecDeque<usize>| {
        *ids.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            queue.push_back(states.len() - 1);
            states.len() - 1
        })
    };
    let initial: Vec<usize> =
        ix.initial.iter().map(|&q| intern((q, Region::zero(ix.clocks.len(), k)), &mut states, &mut queue)).collect();
    while let Some(id) = queue.pop_front() {
        let (loc, region) = states[id].clone();
        let next = region.successor();
        if next != region {
            let to = intern((loc, next), &mut states, &mut queue);
            edges.push(RegionEdge { from: id, to, label: RegionLabel::Delay });
        }
        for (e, edge) in ix.edges.iter().enumerate() {
            if edge.source != loc || !edge.holds(|c| region.representative(c)) {
                continue;
            }
            let to = intern((edge.target, region.reset(&edge.resets)), &mut states, &mut queue);
            edges.push(RegionEdge { from: id, to, label: RegionLabel::Action(e) });
        }
    }
    let accepting = states.iter().map(|(l, _)| ix.accepting[*l]).collect();
    Ok(RegionAutomaton {
        locations: ix.locations.clone(),
        clocks: ix.clocks.clone(),
        states,
        edges,
        initial,
        accepting,
    })
}

/// Post-action graph: edge `(to, transition, region fired from)`.
struct ActionGraph {
    nodes: Vec<(usize, Region)>,
    succ: Vec<Vec<(usize, usize)>>,
    /// Region in which the transition of each edge fired, by edge id.
    fired_in: Vec<Region>,
    edge_transition: Vec<usize>,
    roots: Vec<usize>,
}

impl ActionGraph {
    fn build(ix: &Indexed) -> ActionGraph {
        let k = ix.max_constant;
        let mut ids: HashMap<(usize, Region), usize> = HashMap::new();
        let mut g = ActionGraph {
            nodes: Vec::new(),
            succ: Vec::new(),
            fired_in: Vec::new(),
            edge_transition: Vec::new(),
            roots: Vec::new(),
        };
        let mut queue = VecDeque::new();
        let intern = |s: (usize, Region),
                      g: &mut ActionGraph,
                      ids: &mut HashMap<(usize, Region), usize>,
                      queue: &mut VecDeque<usize>| {
            *ids.entry(s.clone()).or_insert_with(|| {
                g.nodes.push(s);
                g.succ.push(Vec::new());
                queue.push_back(g.nodes.len() - 1);
                g.nodes.len() - 1
            })
        };
        for &q in &ix.initial {
            let r = intern((q, Region::zero(ix.clocks.len(), k)), &mut g, &mut ids, &mut queue);
            g.roots.push(r);
        }
        while let Some(id) = queue.pop_front() {
            let (loc, region) = g.nodes[id].clone();
            for later in region.strict_successors() {
                for (e, edge) in ix.edges.iter().enumerate() {
                    if edge.source != loc || !edge.holds(|c| later.representative(c)) {
                        continue;
                    }
                    let to = intern((edge.target, later.reset(&edge.resets)), &mut g, &mut ids, &mut queue);
                    if g.succ[id]
                        .iter()
                        .any(|&(t, eid)| t == to && g.edge_transition[eid] == e && g.fired_in[eid] == later)
                    {
                        continue;
                    }
                    let eid = g.fired_in.len();
                    g.fired_in.push(later.clone());
                    g.edge_transition.push(e);
                    g.succ[id].push((to, eid));
                }
            }
        }
        g
    }
}

/// Whether the automaton accepts no finite timed word.
pub fn is_empty(aut: &TimedAutomaton) -> Result<bool> {
    Ok(witness(aut)?.is_none())
}

/// A shortest (in events) accepted word, with rational delays, or `None`.
pub fn witness(aut: &TimedAutomaton) -> Result<Option<TimedWord>> {
    let ix = Indexed::new(aut)?;
    let g = ActionGraph::build(&ix);
    let target = (0..g.nodes.len()).find(|&v| ix.accepting[g.nodes[v].0]);
    let Some(target) = target else {
        return Ok(None);
    };
    // BFS order guarantees node ids grow with distance; rebuild the path.
    let (_, path) = crate::semantics::path_from(&g.roots, target, &g.succ, |_| true).expect("reachable");
    let word = instantiate(&ix, &g, &path);
    debug_assert!(member(aut, &word).unwrap_or(false));
    Ok(Some(word))
}

/// Concrete delays realizing a path of the action graph.
fn instantiate(ix: &Indexed, g: &ActionGraph, path: &[usize]) -> TimedWord {
    let k = ix.max_constant;
    let mut values = vec![Rational::zero(); ix.clocks.len()];
    let mut word = TimedWord::empty();
    for &eid in path {
        let region = &g.fired_in[eid];
        let d = delay_into(&values, region, k);
        for v in &mut values {
            *v += &d;
        }
        debug_assert!(region.contains(&values));
        let edge = &ix.edges[g.edge_transition[eid]];
        for &c in &edge.resets {
            values[c] = Rational::zero();
        }
        word.push(d, ix.letters[edge.letter].clone());
    }
    word
}

/// A positive delay taking `values` into `region`: the unique point, the
/// midpoint of a bounded interval, or one past the lower end.
fn delay_into(values: &[Rational], region: &Region, k: u32) -> Rational {
    fn tighten_lo(b: Rational, closed: bool, lo: &mut (Rational, bool)) {
        if b > lo.0 || (b == lo.0 && !closed) {
            *lo = (b, closed);
        }
    }
    fn tighten_hi(b: Rational, closed: bool, hi: &mut Option<(Rational, bool)>) {
        match hi {
            Some((h, hc)) if *h < b || (*h == b && !*hc) => {}
            _ => *hi = Some((b, closed)),
        }
    }
    // Bounds are (value, closed).
    let mut lo = (Rational::zero(), false);
    let mut hi: Option<(Rational, bool)> = None;
    for (c, v) in values.iter().enumerate() {
        let n = Rational::from(region.ints[c]);
        if region.is_unbounded(c) {
            tighten_lo(Rational::from(k) - v, false, &mut lo);
        } else if region.in_class(c) {
            tighten_lo(&n - v, false, &mut lo);
            tighten_hi(&n + &Rational::one() - v, false, &mut hi);
        } else {
            tighten_lo(&n - v, true, &mut lo);
            tighten_hi(&n - v, true, &mut hi);
        }
    }
    match hi {
        Some((h, _)) if h == lo.0 => h,
        Some((h, _)) => lo.0.midpoint(&h),
        None => lo.0 + Rational::one(),
    }
}

/// Whether the Büchi automaton accepts no time-divergent infinite word.
///
/// Nonempty iff some reachable strongly connected component of the
/// post-action graph has an edge, an accepting location, and for every
/// clock a state where that clock is 0 or above the maximal constant.
pub fn is_empty_buchi(aut: &TimedBuchiAutomaton) -> Result<bool> {
    let ix = Indexed::new(aut.automaton())?;
    let g = ActionGraph::build(&ix);
    let comp = tarjan(&g.succ);
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in comp.iter().enumerate() {
        members.entry(c).or_default().push(v);
    }
    for nodes in members.values() {
        let c = comp[nodes[0]];
        let has_edge = nodes.iter().any(|&v| g.succ[v].iter().any(|&(w, _)| comp[w] == c));
        let accepting = nodes.iter().any(|&v| ix.accepting[g.nodes[v].0]);
        let progress = (0..ix.clocks.len()).all(|x| {
            nodes.iter().any(|&v| {
                let r = &g.nodes[v].1;
                r.is_unbounded(x) || (r.ints[x] == 0 && r.is_integral(x))
            })
        });
        if has_edge && accepting && progress {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Letter projection of the language, as a clockless automaton whose
/// locations are the reachable post-action region states.
pub fn untime(aut: &TimedAutomaton) -> Result<TimedAutomaton> {
    let ix = Indexed::new(aut)?;
    let g = ActionGraph::build(&ix);
    let name = |v: usize| format!("s{v}");
    let mut out = TimedAutomaton::new(format!("untimed_{}", aut.name), aut.alphabet.clone());
    for v in 0..g.nodes.len() {
        out.add_location(name(v));
        if ix.accepting[g.nodes[v].0] {
            out.add_accepting(name(v));
        }
    }
    for &r in &g.roots {
        out.add_initial(name(r));
    }
    let mut seen = BTreeSet::new();
    for (v, out_edges) in g.succ.iter().enumerate() {
        for &(w, eid) in out_edges {
            let letter = &ix.letters[ix.edges[g.edge_transition[eid]].letter];
            if seen.insert((v, letter.clone(), w)) {
                out.add_transition(Transition::always(name(v), letter.clone(), name(w)));
            }
        }
    }
    Ok(out)
}

fn untimed_check(nfa: &TimedAutomaton) -> Result<()> {
    nfa.ensure_valid()?;
    if nfa.transitions.iter().any(|t| !t.guard.is_true() || !t.resets.is_empty()) {
        return Err(Error::InvalidAutomaton(format!(
            "{} is not an untimed automaton (guards or resets present)",
            nfa.name
        )));
    }
    Ok(())
}

/// Whether a clockless automaton accepts the letter sequence.
pub fn untimed_accepts(nfa: &TimedAutomaton, letters: &[&str]) -> Result<bool> {
    untimed_check(nfa)?;
    let mut cur: BTreeSet<&str> = nfa.initial.iter().map(String::as_str).collect();
    for l in letters {
        cur = step(nfa, &cur, l);
    }
    Ok(cur.iter().any(|q| nfa.accepting.contains(*q)))
}

fn step<'a>(nfa: &'a TimedAutomaton, from: &BTreeSet<&str>, letter: &str) -> BTreeSet<&'a str> {
    nfa.transitions
        .iter()
        .filter(|t| t.letter == letter && from.contains(t.source.as_str()))
        .map(|t| t.target.as_str())
        .collect()
}

/// A shortest letter sequence accepted by exactly one of two clockless
/// automata (guards must be `true`), or `None` if they are equivalent.
pub fn untimed_difference(a: &TimedAutomaton, b: &TimedAutomaton) -> Result<Option<Vec<Letter>>> {
    untimed_check(a)?;
    untimed_check(b)?;
    let letters: Vec<Letter> = a.alphabet.union(&b.alphabet).iter().cloned().collect();
    type Pair<'a> = (BTreeSet<&'a str>, BTreeSet<&'a str>);
    let start: Pair = (a.initial.iter().map(String::as_str).collect(), b.initial.iter().map(String::as_str).collect());
    let accepts =
        |p: &Pair| (p.0.iter().any(|q| a.accepting.contains(*q)), p.1.iter().any(|q| b.accepting.contains(*q)));
    let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let (x, y) = accepts(&p);
        if x != y {
            let mut word = Vec::new();
            let mut cur = p;
            while let Some(Some((prev, l))) = parent.get(&cur) {
                word.push(l.clone());
                cur = prev.clone();
            }
            word.reverse();
            return Ok(Some(word));
        }
        for l in &letters {
            let next = (step(a, &p.0, l), step(b, &p.1, l));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((p.clone(), l.clone())));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub fn untimed_equivalent(a: &TimedAutomaton, b: &TimedAutomaton) -> Result<bool> {
    Ok(untimed_difference(a, b)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::guard;
    use crate::word::Alphabet;
    use proptest::prelude::*;

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

    #[test]
    fn one_clock_constant_one_has_four_regions() {
        assert_eq!(all_regions(1, 1).len(), 4);
        assert_eq!(region_count(1, 1), 4);
        assert_eq!(all_regions(0, 3).len(), 1);
    }

    #[test]
    fn region_counts_match_grid_enumeration() {
        // Values j/(n+1) realize every ordering of up to n fractional parts.
        for n in 0..=3usize {
            for k in 0..=2u32 {
                let den = n as i64 + 1;
                let top = (i64::from(k) + 2) * den;
                let mut seen = BTreeSet::new();
                let mut idx = vec![0i64; n];
                loop {
                    let vals: Vec<Rational> = idx.iter().map(|&j| Rational::new(j, den)).collect();
                    seen.insert(Region::of(&vals, k));
                    let mut i = 0;
                    while i < n && idx[i] == top {
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                    idx[i] += 1;
                }
                let all: BTreeSet<Region> = all_regions(n, k).into_iter().collect();
                assert_eq!(seen, all, "n={n} k={k}");
                assert_eq!(all.len() as u128, region_count(n, k));
                let fact: u128 = (1..=n as u128).product();
                let bound = fact * 2u128.pow(n as u32) * (2 * u128::from(k) + 2).pow(n as u32);
                assert!(region_count(n, k) <= bound);
            }
        }
    }

    #[test]
    fn successor_chain_one_clock() {
        let r = Region::zero(1, 1);
        let s1 = r.successor();
        let s2 = s1.successor();
        let s3 = s2.successor();
        assert_eq!(s1.to_string(), "0<c0<1, frac c0");
        assert_eq!(s2.to_string(), "c0=1");
        assert_eq!(s3.to_string(), "c0>1");
        assert_eq!(s3.successor(), s3);
        assert_eq!(r.strict_successors(), vec![s1.clone(), s2, s3.clone()]);
        assert_eq!(s3.strict_successors(), vec![s3]);
    }

    #[test]
    fn gadget_region_graph_is_small() {
        let ra = build_region_automaton(&gadget()).unwrap();
        assert!(ra.num_states() <= 3 * 4);
    }

    #[test]
    fn emptiness() {
        assert!(!is_empty(&gadget()).unwrap());
        let mut a = TimedAutomaton::new("U", Alphabet::new(["a"])).with_clocks(&["x"]);
        a.add_initial("p");
        a.add_accepting("f");
        a.add_transition(Transition::new("p", "a", guard("x<1 & x>1"), &[], "f"));
        assert!(is_empty(&a).unwrap());
        // Zero delays are not allowed: x=0 can never be seen by an action.
        a.transitions[0].guard = guard("x=0");
        assert!(is_empty(&a).unwrap());
    }

    #[test]
    fn witness_is_accepted() {
        let w = witness(&gadget()).unwrap().unwrap();
        assert!(member(&gadget(), &w).unwrap());
        assert_eq!(w.len(), 2);

        let mut u = TimedAutomaton::new("U", Alphabet::new(["a"]));
        u.add_initial("q");
        u.add_accepting("q");
        u.add_transition(Transition::always("q", "a", "q"));
        assert_eq!(witness(&u).unwrap(), Some(TimedWord::empty()));
    }

    #[test]
    fn witness_with_two_clocks() {
        // First a at x in (0,1), second with y=1 and x>1.
        let mut a = TimedAutomaton::new("B", Alphabet::new(["a"])).with_clocks(&["x", "y"]);
        a.add_initial("p");
        a.add_accepting("r");
        a.add_transition(Transition::new("p", "a", guard("x<1"), &["y"], "q"));
        a.add_transition(Transition::new("q", "a", guard("y=1 & x>1 & x<2"), &[], "r"));
        let w = witness(&a).unwrap().unwrap();
        assert!(member(&a, &w).unwrap(), "{w}");
    }

    #[test]
    fn untime_gadget() {
        let u = untime(&gadget()).unwrap();
        let mut expect = TimedAutomaton::new("aa+", Alphabet::new(["a"]));
        expect.add_initial("0");
        expect.add_accepting("2");
        expect.add_transition(Transition::always("0", "a", "1"));
        expect.add_transition(Transition::always("1", "a", "2"));
        expect.add_transition(Transition::always("2", "a", "2"));
        assert!(untimed_equivalent(&u, &expect).unwrap());
        assert!(untimed_accepts(&u, &["a", "a", "a"]).unwrap());
        assert!(!untimed_accepts(&u, &["a"]).unwrap());

        expect.add_accepting("1");
        assert_eq!(untimed_difference(&u, &expect).unwrap(), Some(vec!["a".to_string()]));
    }

    #[test]
    fn buchi_emptiness() {
        let mut a = TimedAutomaton::new("U", Alphabet::new(["a"]));
        a.add_initial("q");
        a.add_accepting("q");
        a.add_transition(Transition::always("q", "a", "q"));
        assert!(!is_empty_buchi(&TimedBuchiAutomaton(a.clone())).unwrap());

        let mut b = a.clone();
        b.accepting.clear();
        b.add_accepting("never");
        assert!(is_empty_buchi(&TimedBuchiAutomaton(b)).unwrap());

        // Zeno only: x never reset and must stay below 1.
        let mut z = TimedAutomaton::new("Z", Alphabet::new(["a"])).with_clocks(&["x"]);
        z.add_initial("q");
        z.add_accepting("q");
        z.add_transition(Transition::new("q", "a", guard("x<1"), &[], "q"));
        assert!(is_empty_buchi(&TimedBuchiAutomaton(z.clone())).unwrap());
        z.transitions[0].resets = vec!["x".into()];
        assert!(!is_empty_buchi(&TimedBuchiAutomaton(z)).unwrap());
    }

    proptest! {
        #[test]
        fn delay_into_lands_in_target(vals in proptest::collection::vec((0i64..12, 1i64..5), 1..4)) {
            let k = 2;
            let values: Vec<Rational> = vals.iter().map(|&(n, d)| Rational::new(n, d)).collect();
            let region = Region::of(&values, k);
            for later in region.strict_successors() {
                let d = delay_into(&values, &later, k);
                prop_assert!(d.is_positive());
                let moved: Vec<Rational> = values.iter().map(|v| v + &d).collect();
                prop_assert!(later.contains(&moved));
            }
        }
    }
}
