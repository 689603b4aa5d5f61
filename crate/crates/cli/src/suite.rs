//! Reproducible check suites behind `tempo suite NAME --seed S`.
//!
//! Every suite samples from RNGs derived from the seed, so a report is a
//! pure function of `(name, seed)`.

use rand::Rng;
use serde::Serialize;
use tempo::constructions::{
    build_tba_reduction, build_thm1, build_thm2, build_thm4, empty_language, gadget_a, gadget_an, gadget_l2, gadget_r1,
    gadget_r2, gadget_r3, universal, universal_omega,
};
use tempo::grid::GridSpec;
use tempo::regions::{region_count, untime, untimed_equivalent, witness};
use tempo::sample::{seeded_rng, WordSampler};
use tempo::semantics::{complement_det, is_deterministic, member, member_lasso, member_stopwatch};
use tempo::shuffle::{sample_shuffle, shuffle_automaton, shuffle_member, Side};
use tempo::{
    Alphabet, Error, LassoTimedWord, Rational, Result, TimedAutomaton, TimedBuchiAutomaton, TimedWord, Transition,
};

pub const SUITES: [&str; 6] = ["thm1", "thm2", "thm4", "tba", "shuffle", "regions"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub mismatches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Accumulates case outcomes for one check.
struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    note: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failures: Vec::new(), note: None }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.to_string(),
            passed: self.failures.is_empty(),
            cases: self.cases,
            mismatches: self.failures.len(),
            first_failure: self.failures.into_iter().next(),
            note: self.note,
        }
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "thm1" => vec![gadget_oracle(seed, 1)?, thm1_universal()?, thm1_empty(seed)?],
        "thm2" => vec![gadget_oracle(seed, 2)?, thm2_clock_bound()?, thm2_universal()?],
        "thm4" => vec![shuffle_characterization(seed)?, thm4_separator(seed)?],
        "tba" => vec![tba_universal(seed)?, tba_two_separators(seed)?, tba_empty(seed)?],
        "shuffle" => vec![shuffle_conservation(seed)?],
        "regions" => vec![region_soundness()?, complement_law(seed)?],
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), seed, passed: checks.iter().all(|c| c.passed), checks })
}

// Independent oracles.

fn unit_pairs(w: &TimedWord) -> usize {
    let mut at = Vec::with_capacity(w.len());
    let mut now = Rational::zero();
    for d in w.delays() {
        now += d;
        at.push(now.clone());
    }
    let mut n = 0;
    for i in 0..at.len() {
        for j in i + 1..at.len() {
            n += usize::from(at[j].clone() - at[i].clone() == Rational::one());
        }
    }
    n
}

fn in_an(w: &TimedWord, n: usize) -> bool {
    w.letters().all(|l| l == "a") && unit_pairs(w) >= n
}

// Sampling helpers.

fn rng_for(seed: u64, stream: u64) -> impl Rng {
    seeded_rng(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ stream)
}

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"])
}

/// a-words with delays `k/d`, `k <= d <= 8`, so unit distances are common.
fn a_word(rng: &mut impl Rng, max_len: usize) -> TimedWord {
    let len = rng.gen_range(0..=max_len);
    let mut w = TimedWord::empty();
    for _ in 0..len {
        let d = rng.gen_range(1..=8i64);
        w.push(Rational::new(rng.gen_range(1..=d), d), "a");
    }
    w
}

fn sep() -> TimedWord {
    TimedWord::from_pairs([(Rational::one(), "c")])
}

fn grid_words(count: usize) -> Vec<TimedWord> {
    let letters: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let all: Vec<TimedWord> = GridSpec::new(3, &[1, 2, 4], 2).words(&letters).collect();
    (0..count).map(|i| all[i * all.len() / count].clone()).collect()
}

// Checks.

fn gadget_oracle(seed: u64, n: usize) -> Result<Check> {
    let sigma = Alphabet::new(["a"]);
    let g = if n == 1 { gadget_a(&sigma, "a")? } else { gadget_an(&sigma, "a", n)? };
    let mut rng = rng_for(seed, 1);
    let mut t = Tally::new(if n == 1 { "gadget A vs unit-pair oracle" } else { "gadget An vs pair-count oracle" });
    let mut hits = 0;
    for _ in 0..500 {
        let w = a_word(&mut rng, 8);
        let expected = in_an(&w, n);
        hits += usize::from(expected);
        t.expect(member(&g, &w)? == expected, || format!("{w}"));
    }
    Ok(t.note(format!("{hits} words in the language")).finish())
}

fn thm1_universal() -> Result<Check> {
    let r = build_thm1(&universal(&ab()), "c")?;
    let mut t = Tally::new("thm1 with universal L accepts grid words");
    for w in grid_words(300) {
        t.expect(member(&r.automaton, &w)?, || format!("{w}"));
    }
    Ok(t.finish())
}

fn thm1_empty(seed: u64) -> Result<Check> {
    let r = build_thm1(&empty_language(&ab()), "c")?;
    let general = WordSampler::new(&ab(), 4);
    let mut rng = rng_for(seed, 2);
    let mut t = Tally::new("thm1 with empty L: u·1·c·x accepted iff x in A");
    for _ in 0..200 {
        let u = general.word(&mut rng);
        let x = if rng.gen_bool(0.8) { a_word(&mut rng, 6) } else { general.word(&mut rng) };
        let w = u.concat(&sep()).concat(&x);
        t.expect(member(&r.automaton, &w)? == in_an(&x, 1), || format!("{w}"));
    }
    Ok(t.finish())
}

fn thm2_clock_bound() -> Result<Check> {
    let sigma = ab();
    let ls = [
        empty_language(&sigma),
        universal(&sigma),
        gadget_a(&sigma, "a")?,
        gadget_an(&sigma, "a", 2)?,
        gadget_an(&sigma, "a", 3)?,
        gadget_r1(),
    ];
    let mut t = Tally::new("thm2 uses at most max(clocks(L), n) clocks");
    for l in &ls {
        for n in [2, 3] {
            match build_thm2(l, n, "c") {
                Ok(r) => t.expect(r.summary.clocks <= l.num_clocks().max(n), || {
                    format!("{} with n={n}: {} clocks", l.name, r.summary.clocks)
                }),
                Err(Error::TooManyClocks { .. }) => t.expect(l.num_clocks() > n, || format!("{} refused", l.name)),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(t.finish())
}

fn thm2_universal() -> Result<Check> {
    let mut t = Tally::new("thm2 with universal L accepts grid words");
    let words = grid_words(300);
    for n in [2, 3] {
        let r = build_thm2(&universal(&ab()), n, "c")?;
        for w in &words {
            t.expect(member(&r.automaton, w)?, || format!("n={n}: {w}"));
        }
    }
    Ok(t.finish())
}

/// `t1 a 1 b s b 1 a t2 a`.
fn r3_shaped(rng: &mut impl Rng, balanced: bool) -> (TimedWord, bool) {
    let d = rng.gen_range(2..=8i64);
    let t1 = Rational::new(rng.gen_range(1..d), d);
    let mut t2 = if balanced {
        Rational::one() - t1.clone()
    } else {
        Rational::new(rng.gen_range(1..=16), rng.gen_range(1..=8))
    };
    if !balanced && t1.clone() + t2.clone() == Rational::one() {
        t2 += Rational::new(1, 3);
    }
    let s = Rational::new(rng.gen_range(1..=16), rng.gen_range(1..=8));
    let w = TimedWord::from_pairs([
        (t1.clone(), "a"),
        (Rational::one(), "b"),
        (s, "b"),
        (Rational::one(), "a"),
        (t2.clone(), "a"),
    ]);
    (w, t1 + t2 == Rational::one())
}

fn shuffle_characterization(seed: u64) -> Result<Check> {
    let sw = shuffle_automaton(&gadget_r1(), &gadget_r2())?;
    let r3 = gadget_r3();
    let mut rng = rng_for(seed, 3);
    let mut t = Tally::new("R1 shuffle R2 on R3-shaped words iff t1 + t2 = 1");
    for i in 0..200 {
        let (w, expected) = r3_shaped(&mut rng, i % 2 == 0);
        let ok = member(&r3, &w)? && member_stopwatch(&sw, &w)? == expected;
        t.expect(ok, || format!("{w}"));
    }
    Ok(t.finish())
}

fn thm4_separator(seed: u64) -> Result<Check> {
    let r = build_thm4(&empty_language(&ab()), "c")?;
    let general = WordSampler::new(&ab(), 3);
    let mut rng = rng_for(seed, 4);
    let mut t = Tally::new("thm4 with empty L: u·1·c·w accepted iff w is R1-shaped");
    for i in 0..200 {
        let u = general.word(&mut rng);
        let d = rng.gen_range(2..=8i64);
        let t1 = Rational::new(rng.gen_range(1..d), d);
        let t2 = if i % 2 == 0 { Rational::one() - t1.clone() } else { t1.clone() + Rational::new(1, 7) };
        let x = TimedWord::from_pairs([(t1.clone(), "a"), (Rational::one(), "a"), (t2.clone(), "a")]);
        let expected = t1 + t2 == Rational::one();
        t.expect(member(&r.automaton, &u.concat(&sep()).concat(&x))? == expected, || format!("{u} | {x}"));
        // Same tail behind a separator that is not exactly one unit late.
        let late = u.concat(&TimedWord::from_pairs([(Rational::new(1, 2), "c")])).concat(&x);
        t.expect(!member(&r.automaton, &late)?, || format!("{late}"));
    }
    Ok(t.finish())
}

fn lasso(prefix: TimedWord, period: TimedWord) -> Result<LassoTimedWord> {
    LassoTimedWord::new(prefix, period)
}

fn tba_universal(seed: u64) -> Result<Check> {
    let r = build_tba_reduction(&universal_omega(&ab()), "c")?;
    let sampler = WordSampler::new(&ab().with("c"), 4);
    let mut rng = rng_for(seed, 5);
    let mut t = Tally::new("tba reduction with universal L accepts every lasso");
    for _ in 0..100 {
        let l = sampler.lasso(&mut rng);
        t.expect(member_lasso(&r.automaton, &l)?, || format!("{l}"));
    }
    Ok(t.finish())
}

fn tba_two_separators(seed: u64) -> Result<Check> {
    let r = build_tba_reduction(&TimedBuchiAutomaton(empty_language(&ab())), "c")?;
    let sampler = WordSampler::new(&ab().with("c"), 3);
    let mut rng = rng_for(seed, 6);
    let mut t = Tally::new("lassos with two or more c's are accepted");
    for i in 0..100 {
        let l = if i % 2 == 0 {
            let p = sampler.word(&mut rng).concat(&sep()).concat(&sampler.word(&mut rng)).concat(&sep());
            lasso(p, sampler.word_of_len(2, &mut rng))?
        } else {
            lasso(sampler.word(&mut rng), sampler.word(&mut rng).concat(&sep()))?
        };
        t.expect(member_lasso(&r.automaton, &l)?, || format!("{l}"));
    }
    Ok(t.finish())
}

fn tba_empty(seed: u64) -> Result<Check> {
    let r = build_tba_reduction(&TimedBuchiAutomaton(empty_language(&ab())), "c")?;
    let general = WordSampler::new(&ab(), 4);
    let mut rng = rng_for(seed, 7);
    let mut t = Tally::new("tba reduction with empty L: u·1·c lassos accepted iff u in A");
    for _ in 0..100 {
        let u = if rng.gen_bool(0.8) { a_word(&mut rng, 6) } else { general.word(&mut rng) };
        let l = lasso(u.concat(&sep()).concat(&general.word(&mut rng)), general.word_of_len(2, &mut rng))?;
        t.expect(member_lasso(&r.automaton, &l)? == in_an(&u, 1), || format!("{l}"));
    }
    Ok(t.finish())
}

fn shuffle_conservation(seed: u64) -> Result<Check> {
    let sampler = WordSampler::new(&ab(), 5);
    let mut rng = rng_for(seed, 8);
    let mut t = Tally::new("sampled shuffles: symmetry, duration, interleaving, round trip");
    for _ in 0..200 {
        let x = sampler.word(&mut rng);
        let y = sampler.word(&mut rng);
        let Some(w) = sample_shuffle(&x, &y, 1, &mut rng).pop() else {
            t.expect(false, || format!("no sample for {x} / {y}"));
            continue;
        };
        let round_trip = shuffle_member(&w, &x, &y);
        let ok = w.duration() == x.duration() + y.duration()
            && shuffle_member(&w, &y, &x).is_some()
            && round_trip.is_some_and(|d| {
                d.verify(&w, &x, &y) && d.project(&w, Side::Left) == x && d.project(&w, Side::Right) == y
            });
        t.expect(ok, || format!("{w} from {x} / {y}"));
    }
    Ok(t.finish())
}

fn region_soundness() -> Result<Check> {
    let sigma = ab();
    let empty = empty_language(&sigma);
    let suite = [
        gadget_a(&sigma, "a")?,
        gadget_an(&sigma, "a", 2)?,
        gadget_an(&sigma, "a", 3)?,
        gadget_r1(),
        gadget_r2(),
        gadget_r3(),
        gadget_l2(&sigma, "c")?,
        build_thm1(&empty, "c")?.automaton,
        build_thm2(&empty, 2, "c")?.automaton,
        build_thm4(&empty, "c")?.automaton,
    ];
    let mut t = Tally::new("witnesses replay; untime(A) = a^k (k >= 2); 4 regions for one clock, K = 1");
    for aut in &suite {
        let ok = match witness(aut)? {
            Some(w) => member(aut, &w)?,
            None => false,
        };
        t.expect(ok, || aut.name.clone());
    }
    let mut two = TimedAutomaton::new("a^k", Alphabet::new(["a"]));
    two.add_initial("m0");
    two.add_accepting("m2");
    for (p, q) in [("m0", "m1"), ("m1", "m2"), ("m2", "m2")] {
        two.add_transition(Transition::always(p, "a", q));
    }
    let ga = gadget_a(&Alphabet::new(["a"]), "a")?;
    t.expect(untimed_equivalent(&untime(&ga)?, &two)?, || "untime(A)".into());
    t.expect(region_count(1, 1) == 4, || format!("{} regions", region_count(1, 1)));
    Ok(t.finish())
}

fn complement_law(seed: u64) -> Result<Check> {
    let sigma = ab();
    let dets = [gadget_r1(), gadget_r3(), gadget_l2(&sigma, "c")?];
    let mut rng = rng_for(seed, 9);
    let mut t = Tally::new("deterministic complement flips membership");
    for d in &dets {
        if !is_deterministic(d).deterministic {
            return Err(Error::NotDeterministic);
        }
        let comp = complement_det(d)?;
        let sampler = WordSampler::new(&d.alphabet, 5).denominators(&[1, 2, 4]);
        for _ in 0..500 {
            let w = sampler.word(&mut rng);
            t.expect(member(&comp, &w)? != member(d, &w)?, || format!("{} on {w}", d.name));
        }
    }
    Ok(t.finish())
}
