//! Seeded random timed words for tests and experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;
use crate::word::{Alphabet, LassoTimedWord, Letter, TimedWord};

/// The generator every sampled suite uses, so that a seed fixes all output.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random words with delays `k/d`, `d` drawn from `denominators` and
/// `1 <= k <= max_value * d`.
#[derive(Debug, Clone)]
pub struct WordSampler {
    pub letters: Vec<Letter>,
    pub min_len: usize,
    pub max_len: usize,
    pub denominators: Vec<u32>,
    pub max_value: u32,
}

impl WordSampler {
    /// Lengths `0..=max_len`, denominators `1..=8`, delays at most 2.
    pub fn new(alphabet: &Alphabet, max_len: usize) -> Self {
        WordSampler {
            letters: alphabet.iter().cloned().collect(),
            min_len: 0,
            max_len,
            denominators: (1..=8).collect(),
            max_value: 2,
        }
    }

    pub fn denominators(mut self, ds: &[u32]) -> Self {
        self.denominators = ds.to_vec();
        self
    }

    pub fn max_value(mut self, v: u32) -> Self {
        self.max_value = v;
        self
    }

    pub fn min_len(mut self, n: usize) -> Self {
        self.min_len = n;
        self
    }

    pub fn delay(&self, rng: &mut impl Rng) -> Rational {
        let d = *self.denominators.choose(rng).expect("nonempty denominators");
        let k = rng.gen_range(1..=self.max_value * d);
        Rational::new(i64::from(k), i64::from(d))
    }

    pub fn letter(&self, rng: &mut impl Rng) -> Letter {
        self.letters.choose(rng).expect("nonempty alphabet").clone()
    }

    pub fn word_of_len(&self, len: usize, rng: &mut impl Rng) -> TimedWord {
        let mut w = TimedWord::empty();
        for _ in 0..len {
            let d = self.delay(rng);
            w.push(d, self.letter(rng));
        }
        w
    }

    pub fn word(&self, rng: &mut impl Rng) -> TimedWord {
        let len = rng.gen_range(self.min_len..=self.max_len);
        self.word_of_len(len, rng)
    }

    pub fn words(&self, count: usize, rng: &mut impl Rng) -> Vec<TimedWord> {
        (0..count).map(|_| self.word(rng)).collect()
    }

    /// A lasso with a prefix of at most `max_len` events and a nonempty
    /// period of at most `max_len.max(1)` events.
    pub fn lasso(&self, rng: &mut impl Rng) -> LassoTimedWord {
        let prefix = self.word(rng);
        let len = rng.gen_range(1..=self.max_len.max(1));
        let period = self.word_of_len(len, rng);
        LassoTimedWord::new(prefix, period).expect("positive delays give a positive period")
    }
}
