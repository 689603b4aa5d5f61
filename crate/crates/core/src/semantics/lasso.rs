//! Büchi membership of ultimately periodic timed words.
//!
//! Configurations are `(location, position, clock values)` with positions
//! wrapping around the period and clock values above the largest constant
//! `K` collapsed to `K + 1`. Guards cannot tell such values apart, and all
//! remaining values are multiples of the common denominator of the delays,
//! so the configuration graph is finite. A lasso is accepted iff a cycle
//! through an accepting location is reachable.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Indexed, TimedBuchiAutomaton};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::LassoTimedWord;

/// An accepting run witness: indices into the automaton's transition list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoRun {
    pub initial: String,
    /// Transitions taken before the cycle starts.
    pub stem: Vec<usize>,
    /// Transitions repeated forever; the cycle's first state is accepting.
    pub cycle: Vec<usize>,
}

pub fn member_lasso(aut: &TimedBuchiAutomaton, w: &LassoTimedWord) -> Result<bool> {
    Ok(lasso_run(aut, w)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Config {
    location: usize,
    position: usize,
    values: Vec<Rational>,
}

pub fn lasso_run(aut: &TimedBuchiAutomaton, w: &LassoTimedWord) -> Result<Option<LassoRun>> {
    let ix = Indexed::new(&aut.0)?;
    if !w.period().duration().is_positive() {
        return Err(Error::ZeroDurationPeriod);
    }
    let events: Vec<(Rational, usize)> = w
        .prefix()
        .events()
        .iter()
        .chain(w.period().events())
        .map(|e| Ok((e.delay.clone(), ix.letter_index(&e.letter)?)))
        .collect::<Result<_>>()?;
    let stem_len = w.prefix().len();
    let cap = Rational::from(ix.max_constant + 1);
    let n = ix.clocks.len();

    // Explore the reachable configuration graph.
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut configs: Vec<Config> = Vec::new();
    let mut succ: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern =
        |c: Config, configs: &mut Vec<Config>, succ: &mut Vec<Vec<(usize, usize)>>, queue: &mut VecDeque<usize>| {
            *ids.entry(c.clone()).or_insert_with(|| {
                configs.push(c);
                succ.push(Vec::new());
                queue.push_back(configs.len() - 1);
                configs.len() - 1
            })
        };
    let roots: Vec<usize> = ix
        .initial
        .iter()
        .map(|&q| {
            let c = Config { location: q, position: 0, values: vec![Rational::zero(); n] };
            intern(c, &mut configs, &mut succ, &mut queue)
        })
        .collect();
    while let Some(id) = queue.pop_front() {
        let cur = configs[id].clone();
        let (delay, letter) = &events[cur.position];
        let values: Vec<Rational> = cur.values.iter().map(|v| (v + delay).min(cap.clone())).collect();
        let next_pos = if cur.position + 1 == events.len() { stem_len } else { cur.position + 1 };
        for &e in ix.outgoing(cur.location, *letter) {
            let edge = &ix.edges[e];
            if !edge.holds(|c| values[c].clone()) {
                continue;
            }
            let mut vals = values.clone();
            for &c in &edge.resets {
                vals[c] = Rational::zero();
            }
            let next = Config { location: edge.target, position: next_pos, values: vals };
            let to = intern(next, &mut configs, &mut succ, &mut queue);
            succ[id].push((to, e));
        }
    }

    let comp = tarjan(&succ);
    for (id, cfg) in configs.iter().enumerate() {
        if !ix.accepting[cfg.location] {
            continue;
        }
        let on_cycle = succ[id].iter().any(|&(to, _)| comp[to] == comp[id]);
        if !on_cycle {
            continue;
        }
        let (root, stem) = path_from(&roots, id, &succ, |_| true).expect("reachable by construction");
        let cycle = cycle_through(id, &succ, |v| comp[v] == comp[id]).expect("nontrivial component");
        return Ok(Some(LassoRun { initial: ix.locations[configs[root].location].clone(), stem, cycle }));
    }
    Ok(None)
}

/// Strongly connected component id of every node.
pub(crate) fn tarjan(succ: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (node, next successor to look at).
        let mut work = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = work.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i].0;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// BFS path (edge labels) from any root to `target`, restricted to `allowed`.
pub(crate) fn path_from(
    roots: &[usize],
    target: usize,
    succ: &[Vec<(usize, usize)>],
    allowed: impl Fn(usize) -> bool,
) -> Option<(usize, Vec<usize>)> {
    let mut parent: HashMap<usize, Option<(usize, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &r in roots {
        if allowed(r) && !parent.contains_key(&r) {
            parent.insert(r, None);
            queue.push_back(r);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == target {
            let mut labels = Vec::new();
            let mut cur = v;
            while let Some(Some((p, label))) = parent.get(&cur) {
                labels.push(*label);
                cur = *p;
            }
            labels.reverse();
            return Some((cur, labels));
        }
        for &(w, label) in &succ[v] {
            if allowed(w) && !parent.contains_key(&w) {
                parent.insert(w, Some((v, label)));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Nonempty cycle from `node` back to itself inside `allowed`.
pub(crate) fn cycle_through(
    node: usize,
    succ: &[Vec<(usize, usize)>],
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    for &(w, label) in &succ[node] {
        if !allowed(w) {
            continue;
        }
        if let Some((_, rest)) = path_from(&[w], node, succ, &allowed) {
            let mut cycle = vec![label];
            cycle.extend(rest);
            return Some(cycle);
        }
    }
    None
}
