//! Builders for the three-part languages `L1 ∪ L2 ∪ L3` over `Σ ∪ {c}`.

use serde::Serialize;

use super::algebra::{concat_fixed_delay, concat_sep, concat_sep_omega, union_all, universal, universal_omega};
use super::gadgets::{gadget_a, gadget_an, gadget_l2, gadget_l2_omega, gadget_r1};
use crate::automaton::{TimedAutomaton, TimedBuchiAutomaton};
use crate::error::{Error, Result};
use crate::word::Alphabet;

/// A built automaton together with its parts and resource usage.
#[derive(Debug, Clone)]
pub struct ReductionReport<A = TimedAutomaton> {
    pub automaton: A,
    /// `(label, component)`; the automaton is their union.
    pub components: Vec<(String, A)>,
    pub summary: Resources,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resources {
    pub clocks: usize,
    pub max_constant: u32,
    pub locations: usize,
    pub transitions: usize,
}

impl Resources {
    pub fn of(aut: &TimedAutomaton) -> Resources {
        Resources {
            clocks: aut.num_clocks(),
            max_constant: aut.max_constant(),
            locations: aut.locations.len(),
            transitions: aut.transitions.len(),
        }
    }
}

fn report(components: Vec<(&str, TimedAutomaton)>, name: &str) -> ReductionReport {
    let refs: Vec<&TimedAutomaton> = components.iter().map(|(_, a)| a).collect();
    let automaton = union_all(&refs).with_name(name);
    ReductionReport {
        summary: Resources::of(&automaton),
        automaton,
        components: components.into_iter().map(|(l, a)| (l.to_string(), a)).collect(),
    }
}

/// The letter the distance-one gadgets read: `a` when present, otherwise
/// the first letter of `sigma`.
pub fn gadget_letter(sigma: &Alphabet) -> Result<String> {
    if sigma.contains("a") {
        return Ok("a".into());
    }
    sigma
        .iter()
        .next()
        .cloned()
        .ok_or_else(|| Error::InvalidAutomaton("the reductions need a nonempty alphabet".into()))
}

/// `L·c·Σ* ∪ L2 ∪ Σ*·c·A`.
pub fn build_thm1(l: &TimedAutomaton, c: &str) -> Result<ReductionReport> {
    let sigma = l.alphabet.clone();
    let a = gadget_letter(&sigma)?;
    let univ = universal(&sigma);
    Ok(report(
        vec![
            ("L1", concat_sep(l, c, &univ)?),
            ("L2", gadget_l2(&sigma, c)?),
            ("L3", concat_sep(&univ, c, &gadget_a(&sigma, &a)?)?),
        ],
        "thm1",
    ))
}

/// `L·c·Σ* ∪ L2 ∪ Σ*·c·An`; at most `n` clocks when `L` has at most `n`.
pub fn build_thm2(l: &TimedAutomaton, n: usize, c: &str) -> Result<ReductionReport> {
    if l.num_clocks() > n {
        return Err(Error::TooManyClocks { clocks: l.num_clocks(), bound: n });
    }
    let sigma = l.alphabet.clone();
    let a = gadget_letter(&sigma)?;
    let univ = universal(&sigma);
    Ok(report(
        vec![
            ("V1", concat_sep(l, c, &univ)?),
            ("V2", gadget_l2(&sigma, c)?),
            ("V3", concat_sep(&univ, c, &gadget_an(&sigma, &a, n)?)?),
        ],
        &format!("thm2_n{n}"),
    ))
}

/// `L·c·Σ* ∪ L2 ∪ Σ*·1·c·R1` over `{a, b, c}`.
pub fn build_thm4(l: &TimedAutomaton, c: &str) -> Result<ReductionReport> {
    let sigma = Alphabet::new(["a", "b"]);
    if l.alphabet != sigma {
        return Err(Error::InvalidAutomaton(format!(
            "the shuffle reduction needs alphabet {{a, b}}, got {{{}}}",
            l.alphabet.iter().cloned().collect::<Vec<_>>().join(", ")
        )));
    }
    let univ = universal(&sigma);
    Ok(report(
        vec![
            ("L1", concat_sep(l, c, &univ)?),
            ("L2", gadget_l2(&sigma, c)?),
            ("L3", concat_fixed_delay(&univ, 1, c, &gadget_r1())?),
        ],
        "thm4",
    ))
}

/// `A·c·Σ^ω ∪ L2 ∪ Σ*·c·L` for a Büchi automaton `L`.
pub fn build_tba_reduction(l: &TimedBuchiAutomaton, c: &str) -> Result<ReductionReport<TimedBuchiAutomaton>> {
    let sigma = l.0.alphabet.clone();
    let a = gadget_letter(&sigma)?;
    let parts = vec![
        ("L1", concat_sep_omega(&gadget_a(&sigma, &a)?, c, &universal_omega(&sigma))?),
        ("L2", gadget_l2_omega(&sigma, c)?),
        ("L3", concat_sep_omega(&universal(&sigma), c, l)?),
    ];
    let refs: Vec<&TimedAutomaton> = parts.iter().map(|(_, b)| &b.0).collect();
    let automaton = union_all(&refs).with_name("tba");
    Ok(ReductionReport {
        summary: Resources::of(&automaton),
        automaton: TimedBuchiAutomaton(automaton),
        components: parts.into_iter().map(|(n, b)| (n.to_string(), b)).collect(),
    })
}
