//! The fixed languages used by the reductions.

use crate::automaton::{TimedAutomaton, TimedBuchiAutomaton, Transition};
use crate::error::{Error, Result};
use crate::format::{guard, Document};
use crate::word::Alphabet;

fn require_letter(sigma: &Alphabet, a: &str) -> Result<()> {
    if sigma.contains(a) {
        Ok(())
    } else {
        Err(Error::UnknownLetter(a.to_string()))
    }
}

/// Words of `a`'s only, with some pair of `a`'s exactly one time unit apart.
pub fn gadget_a(sigma: &Alphabet, a: &str) -> Result<TimedAutomaton> {
    require_letter(sigma, a)?;
    let mut g = TimedAutomaton::new("A", sigma.clone()).with_clocks(&["x"]);
    g.add_initial("q0");
    g.add_accepting("q2");
    g.add_transition(Transition::always("q0", a, "q0"));
    g.add_transition(Transition::new("q0", a, guard("true"), &["x"], "q1"));
    g.add_transition(Transition::always("q1", a, "q1"));
    g.add_transition(Transition::new("q1", a, guard("x=1"), &[], "q2"));
    g.add_transition(Transition::always("q2", a, "q2"));
    Ok(g)
}

/// Words of `a`'s only with at least `n` distinct index pairs `i < j` whose
/// events are exactly one time unit apart.
///
/// With positive delays every event starts at most one such pair, so it
/// suffices to guess `n` starting events: clock `x{k}` is reset at the
/// `k`-th guessed start and later checked for `= 1`. A location records how
/// many pairs were started and which of them are already closed.
pub fn gadget_an(sigma: &Alphabet, a: &str, n: usize) -> Result<TimedAutomaton> {
    require_letter(sigma, a)?;
    if n == 0 || n > 16 {
        return Err(Error::InvalidAutomaton(format!("gadget An needs 1 <= n <= 16, got {n}")));
    }
    let clock = |k: usize| format!("x{}", k + 1);
    let clocks: Vec<String> = (0..n).map(clock).collect();
    let clock_refs: Vec<&str> = clocks.iter().map(String::as_str).collect();
    let mut g = TimedAutomaton::new(format!("A{n}"), sigma.clone()).with_clocks(&clock_refs);
    let name = |s: usize, mask: u32| {
        let bits: String = (0..s).map(|k| if mask & (1 << k) != 0 { '1' } else { '0' }).collect();
        format!("s{s}_{bits}")
    };
    g.add_initial(name(0, 0));
    g.add_accepting(name(n, (1 << n) - 1));
    for s in 0..=n {
        for mask in 0u32..(1 << s) {
            let from = name(s, mask);
            g.add_location(from.clone());
            // Optionally close one open pair...
            let closes: Vec<Option<usize>> =
                std::iter::once(None).chain((0..s).filter(|k| mask & (1 << k) == 0).map(Some)).collect();
            for close in closes {
                let (guard_text, closed) = match close {
                    Some(k) => (format!("{}=1", clock(k)), mask | (1 << k)),
                    None => ("true".to_string(), mask),
                };
                // ...and optionally open the next one.
                g.add_transition(Transition::new(&from, a, guard(&guard_text), &[], name(s, closed)));
                if s < n {
                    let reset = clock(s);
                    g.add_transition(Transition::new(
                        &from,
                        a,
                        guard(&guard_text),
                        &[reset.as_str()],
                        name(s + 1, closed),
                    ));
                }
            }
        }
    }
    Ok(g)
}

/// `t1·a·1·a·t2·a` with `t1 + t2 = 1`: `x` measures the total, `y` the middle gap.
pub fn gadget_r1() -> TimedAutomaton {
    let mut g = TimedAutomaton::new("R1", Alphabet::new(["a", "b"])).with_clocks(&["x", "y"]);
    g.add_initial("r0");
    g.add_accepting("r3");
    g.add_transition(Transition::new("r0", "a", guard("true"), &["y"], "r1"));
    g.add_transition(Transition::new("r1", "a", guard("y=1"), &[], "r2"));
    g.add_transition(Transition::new("r2", "a", guard("x=2"), &[], "r3"));
    g
}

/// `1·b·s·b` for any `s`.
pub fn gadget_r2() -> TimedAutomaton {
    let mut g = TimedAutomaton::new("R2", Alphabet::new(["a", "b"])).with_clocks(&["x"]);
    g.add_initial("r0");
    g.add_accepting("r2");
    g.add_transition(Transition::new("r0", "b", guard("x=1"), &[], "r1"));
    g.add_transition(Transition::always("r1", "b", "r2"));
    g
}

/// `t1·a·1·b·s·b·1·a·t2·a` for any `t1`, `s`, `t2`.
pub fn gadget_r3() -> TimedAutomaton {
    let mut g = TimedAutomaton::new("R3", Alphabet::new(["a", "b"])).with_clocks(&["x"]);
    g.add_initial("r0");
    g.add_accepting("r5");
    let steps = [
        ("r0", "a", "true", "r1"),
        ("r1", "b", "x=1", "r2"),
        ("r2", "b", "true", "r3"),
        ("r3", "a", "x=1", "r4"),
        ("r4", "a", "true", "r5"),
    ];
    for (src, letter, g_text, dst) in steps {
        g.add_transition(Transition::new(src, letter, guard(g_text), &["x"], dst));
    }
    g
}

/// Words over `sigma ∪ {c}` with no `c` or at least two; deterministic and
/// clockless.
pub fn gadget_l2(sigma: &Alphabet, c: &str) -> Result<TimedAutomaton> {
    if sigma.contains(c) {
        return Err(Error::SeparatorInAlphabet(c.to_string()));
    }
    let mut g = TimedAutomaton::new("L2", sigma.with(c));
    g.add_initial("n0");
    g.add_accepting("n0");
    g.add_accepting("n2");
    for (from, to) in [("n0", "n1"), ("n1", "n2"), ("n2", "n2")] {
        for a in sigma {
            g.add_transition(Transition::always(from, a.clone(), from));
        }
        g.add_transition(Transition::always(from, c, to));
    }
    Ok(g)
}

/// Infinite words with no `c` or at least two.
pub fn gadget_l2_omega(sigma: &Alphabet, c: &str) -> Result<TimedBuchiAutomaton> {
    Ok(TimedBuchiAutomaton(gadget_l2(sigma, c)?.with_name("L2_omega")))
}

/// Looks a gadget up by name (`A`, `An`, `R1`, `R2`, `R3`, `L2`,
/// `L2-omega`; case-insensitive). `letter` is the distance-one letter, `c`
/// the separator, `n` the pair count for `An`. The R gadgets ignore `sigma`.
pub fn named_gadget(name: &str, sigma: &Alphabet, letter: &str, c: &str, n: usize) -> Result<Document> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "a" => Document::Timed(gadget_a(sigma, letter)?),
        "an" => Document::Timed(gadget_an(sigma, letter, n)?),
        "r1" => Document::Timed(gadget_r1()),
        "r2" => Document::Timed(gadget_r2()),
        "r3" => Document::Timed(gadget_r3()),
        "l2" => Document::Timed(gadget_l2(sigma, c)?),
        "l2-omega" | "l2_omega" => Document::Buchi(gadget_l2_omega(sigma, c)?),
        _ => return Err(Error::UnknownGadget(name.to_string())),
    })
}
