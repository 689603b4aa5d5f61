//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line; exits nonzero if any
//! criterion fails.

use std::process::ExitCode;

use rand::Rng;
use tempo::constructions::{
    build_tba_reduction, build_thm1, build_thm2, build_thm4, empty_language, gadget_a, gadget_an, gadget_l2, gadget_r1,
    gadget_r2, gadget_r3, universal, universal_omega,
};
use tempo::format::guard;
use tempo::grid::GridSpec;
use tempo::regions::{all_regions, build_region_automaton, region_count, untime, untimed_equivalent, witness};
use tempo::sample::{seeded_rng, WordSampler};
use tempo::semantics::{complement_det, is_deterministic, member, member_lasso, member_stopwatch};
use tempo::shuffle::{all_splits, sample_shuffle, shuffle_automaton, shuffle_member, Side};
use tempo::{Alphabet, LassoTimedWord, Rational, TimedAutomaton, TimedBuchiAutomaton, TimedWord, Transition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// ---- oracles -------------------------------------------------------------

/// Pairs `1 <= i < j <= n` with `t_{i+1} + ... + t_j = 1`, by prefix sums.
fn unit_pair_count(w: &TimedWord) -> usize {
    let delays: Vec<Rational> = w.delays().cloned().collect();
    let mut prefix = vec![Rational::zero()];
    for d in &delays {
        let next = prefix.last().unwrap().clone() + d.clone();
        prefix.push(next);
    }
    let n = delays.len();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if prefix[j].clone() - prefix[i].clone() == Rational::one() {
                count += 1;
            }
        }
    }
    count
}

fn only_letter(w: &TimedWord, a: &str) -> bool {
    w.letters().all(|l| l == a)
}

fn in_a(w: &TimedWord) -> bool {
    only_letter(w, "a") && unit_pair_count(w) >= 1
}

fn in_a2(w: &TimedWord) -> bool {
    only_letter(w, "a") && unit_pair_count(w) >= 2
}

// ---- helpers -------------------------------------------------------------

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"])
}

fn abc() -> Alphabet {
    Alphabet::new(["a", "b", "c"])
}

fn ev(delay: &Rational, letter: &str) -> TimedWord {
    TimedWord::from_pairs([(delay.clone(), letter)])
}

/// `count` words spread evenly over the whole grid enumeration.
fn grid_sample(grid: &GridSpec, letters: &[&str], count: usize) -> Vec<TimedWord> {
    let letters: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
    let all: Vec<TimedWord> = grid.words(&letters).collect();
    assert!(all.len() >= count, "grid too small: {}", all.len());
    (0..count).map(|i| all[i * all.len() / count].clone()).collect()
}

/// a-words whose delays `k/d` (`d <= 8`, `k <= d`) hit distance 1 often.
fn a_word(rng: &mut impl Rng, max_len: usize) -> TimedWord {
    let len = rng.gen_range(0..=max_len);
    let mut w = TimedWord::empty();
    for _ in 0..len {
        let d = rng.gen_range(1..=8i64);
        let k = rng.gen_range(1..=d);
        w.push(Rational::new(k, d), "a");
    }
    w
}

fn mismatch_report<T: std::fmt::Display>(checked: usize, extra: &str, bad: &[T]) -> Outcome {
    if bad.is_empty() {
        Ok(format!("{checked} checks, 0 mismatches{extra}"))
    } else {
        Err(format!("{} mismatches of {checked}; first: {}", bad.len(), bad[0]))
    }
}

// ---- criteria ------------------------------------------------------------

fn criterion_1() -> Outcome {
    let sigma = Alphabet::new(["a"]);
    let a = gadget_a(&sigma, "a").map_err(|e| e.to_string())?;
    let a2 = gadget_an(&sigma, "a", 2).map_err(|e| e.to_string())?;
    let mut rng = seeded_rng(1);
    let mut bad = Vec::new();
    let (mut pos1, mut pos2) = (0, 0);
    for _ in 0..500 {
        let w = a_word(&mut rng, 8);
        let (o1, o2) = (in_a(&w), in_a2(&w));
        pos1 += o1 as usize;
        pos2 += o2 as usize;
        if member(&a, &w).map_err(|e| e.to_string())? != o1 {
            bad.push(format!("A on {w}"));
        }
        if member(&a2, &w).map_err(|e| e.to_string())? != o2 {
            bad.push(format!("A2 on {w}"));
        }
    }
    mismatch_report(1000, &format!(" ({pos1} in A, {pos2} in A2)"), &bad)
}

fn criterion_2() -> Outcome {
    let univ = build_thm1(&universal(&ab()), "c").map_err(|e| e.to_string())?;
    let grid = GridSpec::new(3, &[1, 2, 4], 2);
    let words = grid_sample(&grid, &["a", "b", "c"], 300);
    let mut bad = Vec::new();
    for w in &words {
        if !member(&univ.automaton, w).map_err(|e| e.to_string())? {
            bad.push(format!("universal L rejects {w}"));
        }
    }

    let empty = build_thm1(&empty_language(&ab()), "c").map_err(|e| e.to_string())?;
    let gadget = gadget_a(&ab(), "a").map_err(|e| e.to_string())?;
    let general = WordSampler::new(&ab(), 4);
    let mut rng = seeded_rng(2);
    let mut positives = 0;
    for _ in 0..200 {
        let u = general.word(&mut rng);
        // Mostly a-words so that both outcomes occur.
        let x = if rng.gen_bool(0.8) { a_word(&mut rng, 6) } else { general.word(&mut rng) };
        let w = u.concat(&ev(&Rational::one(), "c")).concat(&x);
        let got = member(&empty.automaton, &w).map_err(|e| e.to_string())?;
        let via_gadget = member(&gadget, &x).map_err(|e| e.to_string())?;
        positives += got as usize;
        if got != via_gadget || got != in_a(&x) {
            bad.push(format!("empty L on {w}: got {got}, gadget {via_gadget}"));
        }
    }
    mismatch_report(500, &format!(" (300/300 grid words; {positives}/200 u·1·c·x accepted)"), &bad)
}

fn three_clocks() -> TimedAutomaton {
    let mut g = TimedAutomaton::new("three", ab()).with_clocks(&["x", "y", "z"]);
    g.add_initial("p");
    g.add_accepting("q");
    g.add_transition(Transition::new("p", "a", guard("x<1"), &["y"], "p"));
    g.add_transition(Transition::new("p", "b", guard("y=1 & z>2"), &[], "q"));
    g
}

fn criterion_3() -> Outcome {
    let sigma = ab();
    let ls: Vec<TimedAutomaton> = vec![
        empty_language(&sigma),
        universal(&sigma),
        gadget_a(&sigma, "a").map_err(|e| e.to_string())?,
        gadget_an(&sigma, "a", 2).map_err(|e| e.to_string())?,
        gadget_r1(),
        gadget_r3(),
        three_clocks(),
    ];
    let mut bad = Vec::new();
    let mut built = 0;
    for l in &ls {
        for n in [2usize, 3] {
            match build_thm2(l, n, "c") {
                Ok(r) => {
                    built += 1;
                    let bound = l.num_clocks().max(n);
                    if r.summary.clocks > bound || r.automaton.num_clocks() != r.summary.clocks {
                        bad.push(format!("{} n={n}: {} clocks > {bound}", l.name, r.summary.clocks));
                    }
                }
                Err(tempo::Error::TooManyClocks { .. }) if l.num_clocks() > n => {}
                Err(e) => bad.push(format!("{} n={n}: {e}", l.name)),
            }
        }
    }
    let grid = GridSpec::new(3, &[1, 2, 4], 2);
    let words = grid_sample(&grid, &["a", "b", "c"], 300);
    for n in [2usize, 3] {
        let r = build_thm2(&universal(&sigma), n, "c").map_err(|e| e.to_string())?;
        for w in &words {
            if !member(&r.automaton, w).map_err(|e| e.to_string())? {
                bad.push(format!("n={n}: universal L rejects {w}"));
            }
        }
    }
    mismatch_report(built + 600, &format!(" ({built} builds within the clock bound; 2x300 grid words)"), &bad)
}

fn criterion_4() -> Outcome {
    let sw = shuffle_automaton(&gadget_r1(), &gadget_r2()).map_err(|e| e.to_string())?;
    let (r1, r2) = (gadget_r1(), gadget_r2());
    let mut rng = seeded_rng(4);
    let mut bad = Vec::new();
    let mut positives = 0;
    for i in 0..200 {
        let d = rng.gen_range(2..=8i64);
        let k = rng.gen_range(1..d);
        let t1 = Rational::new(k, d);
        let t2 = if i % 2 == 0 {
            Rational::one() - t1.clone()
        } else {
            // Anything positive but the complement of t1.
            let mut t = Rational::new(rng.gen_range(1..=16), rng.gen_range(1..=8));
            if t.clone() + t1.clone() == Rational::one() {
                t += Rational::new(1, 3);
            }
            t
        };
        let s = Rational::new(rng.gen_range(1..=16), rng.gen_range(1..=8));
        let one = Rational::one();
        let w = TimedWord::from_pairs([(t1.clone(), "a"), (one.clone(), "b"), (s, "b"), (one, "a"), (t2.clone(), "a")]);
        let expected = t1 + t2 == Rational::one();
        positives += expected as usize;
        let got = member_stopwatch(&sw, &w).map_err(|e| e.to_string())?;
        if got != expected {
            bad.push(format!("stopwatch on {w}: got {got}"));
        }
        // Enumerate every split and look for a witness pair (x, y).
        let mut witnessed = false;
        for (x, y) in all_splits(&w) {
            if member(&r1, &x).map_err(|e| e.to_string())? && member(&r2, &y).map_err(|e| e.to_string())? {
                match shuffle_member(&w, &x, &y) {
                    Some(dec) if dec.verify(&w, &x, &y) => witnessed = true,
                    _ => bad.push(format!("split ({x}) | ({y}) of {w} not confirmed by shuffle_member")),
                }
            }
        }
        if witnessed != expected {
            bad.push(format!("enumerated witnesses on {w}: {witnessed}"));
        }
    }
    mismatch_report(400, &format!(" ({positives} positive, {} negative)", 200 - positives), &bad)
}

fn deterministic_suite() -> Vec<TimedAutomaton> {
    let mut d1 = TimedAutomaton::new("D1", ab()).with_clocks(&["x"]);
    d1.add_initial("p0");
    d1.add_accepting("p1");
    d1.add_transition(Transition::new("p0", "a", guard("x<1"), &[], "p1"));
    d1.add_transition(Transition::new("p0", "a", guard("x>=1"), &["x"], "p0"));
    d1.add_transition(Transition::new("p1", "b", guard("x<=2"), &["x"], "p0"));
    d1.add_transition(Transition::new("p1", "a", guard("true"), &[], "p1"));

    let mut d2 = TimedAutomaton::new("D2", ab()).with_clocks(&["x", "y"]);
    d2.add_initial("q0");
    d2.add_accepting("q2");
    d2.add_transition(Transition::new("q0", "a", guard("true"), &["x"], "q1"));
    d2.add_transition(Transition::new("q1", "b", guard("x=1"), &[], "q2"));
    d2.add_transition(Transition::new("q1", "b", guard("x>1"), &[], "q1"));
    d2.add_transition(Transition::new("q2", "a", guard("y<3"), &["y"], "q2"));

    let d3 = gadget_l2(&ab(), "c").expect("c is fresh");
    vec![d1, d2, d3]
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = seeded_rng(5);
    let mut accepted = Vec::new();
    for d in deterministic_suite() {
        if !is_deterministic(&d).deterministic {
            return Err(format!("{} is not deterministic", d.name));
        }
        let comp = complement_det(&d).map_err(|e| e.to_string())?;
        let sampler = WordSampler::new(&d.alphabet, 6).denominators(&[1, 2, 4]);
        let mut hits = 0;
        for _ in 0..500 {
            let w = sampler.word(&mut rng);
            let m = member(&d, &w).map_err(|e| e.to_string())?;
            hits += m as usize;
            if member(&comp, &w).map_err(|e| e.to_string())? == m {
                bad.push(format!("{} on {w}", d.name));
            }
        }
        accepted.push(format!("{}:{hits}", d.name));
    }
    mismatch_report(1500, &format!(" (accepted by D: {})", accepted.join(" ")), &bad)
}

fn criterion_6() -> Outcome {
    let sigma = ab();
    let e = |r: tempo::Result<TimedAutomaton>| r.map_err(|e| e.to_string());
    let empty = empty_language(&sigma);
    let suite: Vec<TimedAutomaton> = vec![
        e(gadget_a(&sigma, "a"))?,
        e(gadget_an(&sigma, "a", 2))?,
        e(gadget_an(&sigma, "a", 3))?,
        gadget_r1(),
        gadget_r2(),
        gadget_r3(),
        e(gadget_l2(&sigma, "c"))?,
        build_thm1(&empty, "c").map_err(|e| e.to_string())?.automaton,
        build_thm2(&empty, 2, "c").map_err(|e| e.to_string())?.automaton,
        build_thm4(&empty, "c").map_err(|e| e.to_string())?.automaton,
    ];
    let mut bad = Vec::new();
    for aut in &suite {
        match witness(aut).map_err(|e| e.to_string())? {
            Some(w) if member(aut, &w).map_err(|e| e.to_string())? => {}
            Some(w) => bad.push(format!("{}: witness {w} rejected", aut.name)),
            None => bad.push(format!("{}: reported empty", aut.name)),
        }
    }

    let ga = e(gadget_a(&Alphabet::new(["a"]), "a"))?;
    let mut at_least_two = TimedAutomaton::new("a^k, k>=2", Alphabet::new(["a"]));
    at_least_two.add_initial("m0");
    at_least_two.add_accepting("m2");
    at_least_two.add_transition(Transition::always("m0", "a", "m1"));
    at_least_two.add_transition(Transition::always("m1", "a", "m2"));
    at_least_two.add_transition(Transition::always("m2", "a", "m2"));
    let untimed = untime(&ga).map_err(|e| e.to_string())?;
    if !untimed_equivalent(&untimed, &at_least_two).map_err(|e| e.to_string())? {
        bad.push("untime(A) differs from a^k, k>=2".to_string());
    }

    if region_count(1, 1) != 4 || all_regions(1, 1).len() != 4 || all_regions(0, 3).len() != 1 {
        bad.push(format!("region count (1,1) = {}", region_count(1, 1)));
    }
    let ra = build_region_automaton(&ga).map_err(|e| e.to_string())?;
    if ra.num_states() > ga.locations.len() * 4 {
        bad.push(format!("region graph of A has {} states", ra.num_states()));
    }
    mismatch_report(suite.len() + 3, &format!(" ({} witnesses replayed)", suite.len()), &bad)
}

fn criterion_7() -> Outcome {
    let sigma = ab();
    let univ = build_tba_reduction(&universal_omega(&sigma), "c").map_err(|e| e.to_string())?;
    let empty = build_tba_reduction(&TimedBuchiAutomaton(empty_language(&sigma)), "c").map_err(|e| e.to_string())?;
    let mut rng = seeded_rng(7);
    let mut bad = Vec::new();

    let any = WordSampler::new(&abc(), 4);
    for _ in 0..100 {
        let l = any.lasso(&mut rng);
        if !member_lasso(&univ.automaton, &l).map_err(|e| e.to_string())? {
            bad.push(format!("universal L rejects {l}"));
        }
    }

    let c = ev(&Rational::one(), "c");
    for i in 0..100 {
        let l = if i % 2 == 0 {
            // Two c's in the prefix.
            let p = any.word(&mut rng).concat(&c).concat(&any.word(&mut rng)).concat(&c);
            LassoTimedWord::new(p, any.word_of_len(rng.gen_range(1..=3), &mut rng))
        } else {
            // Infinitely many c's.
            let period = any.word(&mut rng).concat(&c);
            LassoTimedWord::new(any.word(&mut rng), period)
        }
        .map_err(|e| e.to_string())?;
        if !member_lasso(&empty.automaton, &l).map_err(|e| e.to_string())? {
            bad.push(format!("two c's rejected: {l}"));
        }
    }

    let general = WordSampler::new(&sigma, 4);
    let ga = gadget_a(&sigma, "a").map_err(|e| e.to_string())?;
    let mut positives = 0;
    for _ in 0..100 {
        let u = if rng.gen_bool(0.8) { a_word(&mut rng, 6) } else { general.word(&mut rng) };
        let l = LassoTimedWord::new(
            u.concat(&c).concat(&general.word(&mut rng)),
            general.word_of_len(rng.gen_range(1..=3), &mut rng),
        )
        .map_err(|e| e.to_string())?;
        let got = member_lasso(&empty.automaton, &l).map_err(|e| e.to_string())?;
        positives += got as usize;
        if got != in_a(&u) || got != member(&ga, &u).map_err(|e| e.to_string())? {
            bad.push(format!("empty L on {l}: got {got}"));
        }
    }
    mismatch_report(300, &format!(" ({positives}/100 u·1·c lassos with u in A)"), &bad)
}

fn criterion_8() -> Outcome {
    let sampler = WordSampler::new(&ab(), 5);
    let mut rng = seeded_rng(8);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let x = sampler.word(&mut rng);
        let y = sampler.word(&mut rng);
        let w = sample_shuffle(&x, &y, 1, &mut rng).pop().ok_or("no sample")?;
        if w.duration() != x.duration() + y.duration() {
            bad.push(format!("duration of {w}"));
        }
        if shuffle_member(&w, &y, &x).is_none() {
            bad.push(format!("symmetry on {w}"));
        }
        match shuffle_member(&w, &x, &y) {
            None => bad.push(format!("round trip lost {w} from ({x}) and ({y})")),
            Some(dec) => {
                let ok = dec.verify(&w, &x, &y)
                    && dec.project(&w, Side::Left) == x
                    && dec.project(&w, Side::Right) == y
                    && w.len() == x.len() + y.len();
                if !ok {
                    bad.push(format!("interleaving of {w}"));
                }
            }
        }
    }
    mismatch_report(200, " (200/200 round trips)", &bad)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("gadget oracles", criterion_1),
        ("thm1 case dichotomy", criterion_2),
        ("thm2 clock bound", criterion_3),
        ("shuffle characterization", criterion_4),
        ("deterministic complement", criterion_5),
        ("region soundness", criterion_6),
        ("tba reduction", criterion_7),
        ("shuffle conservation", criterion_8),
    ];
    // `cargo test -- --list` and name filters come through here too.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for i in 1..=criteria.len() {
            println!("criterion_{i}: test");
        }
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} — {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} — {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
