//! Finite timed words and ultimately periodic (lasso) infinite timed words.
//!
//! A word is a sequence of events `(delay, letter)`, the delay being the time
//! elapsed since the previous event (or since time 0 for the first one).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Letter = String;

/// A finite, ordered set of letters.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Alphabet(BTreeSet<Letter>);

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Letter>,
    {
        Alphabet(letters.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.0.contains(letter)
    }

    pub fn insert(&mut self, letter: impl Into<Letter>) -> bool {
        self.0.insert(letter.into())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Letter> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet(self.0.union(&other.0).cloned().collect())
    }

    pub fn with(&self, letter: impl Into<Letter>) -> Alphabet {
        let mut out = self.clone();
        out.insert(letter);
        out
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl<S: Into<Letter>> FromIterator<S> for Alphabet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Alphabet::new(iter)
    }
}

impl<'a> IntoIterator for &'a Alphabet {
    type Item = &'a Letter;
    type IntoIter = std::collections::btree_set::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Whether delays must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DelayMode {
    #[default]
    Strict,
    /// Admits zero delays (never negative ones).
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    pub delay: Rational,
    pub letter: Letter,
}

impl Event {
    pub fn new(delay: Rational, letter: impl Into<Letter>) -> Self {
        Event { delay, letter: letter.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TimedWord {
    events: Vec<Event>,
}

impl TimedWord {
    pub fn empty() -> Self {
        TimedWord::default()
    }

    /// Builds a word without validating delays; see [`TimedWord::check`].
    pub fn new(events: Vec<Event>) -> Self {
        TimedWord { events }
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Rational, S)>,
        S: Into<Letter>,
    {
        TimedWord::new(pairs.into_iter().map(|(d, l)| Event::new(d, l)).collect())
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, delay: Rational, letter: impl Into<Letter>) {
        self.events.push(Event::new(delay, letter));
    }

    pub fn delays(&self) -> impl Iterator<Item = &Rational> {
        self.events.iter().map(|e| &e.delay)
    }

    pub fn letters(&self) -> impl Iterator<Item = &str> {
        self.events.iter().map(|e| e.letter.as_str())
    }

    pub fn duration(&self) -> Rational {
        self.delays().sum()
    }

    /// Absolute time of every event, starting with `0` for the origin:
    /// `times()[i]` is the time of event `i` (1-based), `times()[0] == 0`.
    pub fn times(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut t = Rational::zero();
        out.push(t.clone());
        for e in &self.events {
            t += &e.delay;
            out.push(t.clone());
        }
        out
    }

    pub fn concat(&self, other: &TimedWord) -> TimedWord {
        let mut events = self.events.clone();
        events.extend(other.events.iter().cloned());
        TimedWord { events }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.letters().collect()
    }

    /// Checks delay positivity and, when given, alphabet membership.
    pub fn check(&self, alphabet: Option<&Alphabet>, mode: DelayMode) -> Result<()> {
        for (index, e) in self.events.iter().enumerate() {
            if e.delay.is_negative() {
                return Err(Error::NegativeDelay { index, delay: e.delay.clone() });
            }
            if mode == DelayMode::Strict && e.delay.is_zero() {
                return Err(Error::NonPositiveDelay { index, delay: e.delay.clone() });
            }
            if let Some(alpha) = alphabet {
                if !alpha.contains(&e.letter) {
                    return Err(Error::UnknownLetter(e.letter.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn check_letters(&self, alphabet: &Alphabet) -> Result<()> {
        match self.letters().find(|l| !alphabet.contains(l)) {
            Some(l) => Err(Error::UnknownLetter(l.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{} {}", e.delay, e.letter)?;
        }
        Ok(())
    }
}

impl FromStr for TimedWord {
    type Err = Error;

    /// Strict mode, any letters.
    fn from_str(s: &str) -> Result<Self> {
        parse_timed_word_with(s, None, DelayMode::Strict)
    }
}

/// Parses `"DELAY LETTER DELAY LETTER ..."` in strict mode, checking letters
/// against `alphabet`.
pub fn parse_timed_word(text: &str, alphabet: &Alphabet) -> Result<TimedWord> {
    parse_timed_word_with(text, Some(alphabet), DelayMode::Strict)
}

pub fn parse_timed_word_with(text: &str, alphabet: Option<&Alphabet>, mode: DelayMode) -> Result<TimedWord> {
    let tokens = tokenize(text);
    if tokens.len() % 2 == 1 {
        return Err(Error::Syntax { position: text.len(), message: "expected a letter after the last delay".into() });
    }
    let mut events = Vec::with_capacity(tokens.len() / 2);
    for pair in tokens.chunks(2) {
        let (pos, delay_tok) = pair[0];
        let (letter_pos, letter) = pair[1];
        let delay: Rational = delay_tok
            .parse()
            .map_err(|_| Error::Syntax { position: pos, message: format!("expected a delay, found `{delay_tok}`") })?;
        if letter.parse::<Rational>().is_ok() || letter == "|" {
            return Err(Error::Syntax {
                position: letter_pos,
                message: format!("expected a letter, found `{letter}`"),
            });
        }
        events.push(Event::new(delay, letter));
    }
    let word = TimedWord { events };
    word.check(alphabet, mode)?;
    Ok(word)
}

fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// The infinite word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoTimedWord {
    prefix: TimedWord,
    period: TimedWord,
}

impl LassoTimedWord {
    pub fn new(prefix: TimedWord, period: TimedWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if !period.duration().is_positive() {
            return Err(Error::ZeroDurationPeriod);
        }
        Ok(LassoTimedWord { prefix, period })
    }

    pub fn prefix(&self) -> &TimedWord {
        &self.prefix
    }

    pub fn period(&self) -> &TimedWord {
        &self.period
    }

    /// `prefix · period^k`.
    pub fn unroll(&self, k: usize) -> TimedWord {
        let mut w = self.prefix.clone();
        for _ in 0..k {
            w = w.concat(&self.period);
        }
        w
    }

    pub fn alphabet(&self) -> Alphabet {
        self.prefix.alphabet().union(&self.period.alphabet())
    }
}

impl fmt::Display for LassoTimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "| {}", self.period)
        } else {
            write!(f, "{} | {}", self.prefix, self.period)
        }
    }
}

impl FromStr for LassoTimedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_lasso_word(s, None, DelayMode::Strict)
    }
}

/// Parses `"PREFIX | PERIOD"`.
pub fn parse_lasso_word(text: &str, alphabet: Option<&Alphabet>, mode: DelayMode) -> Result<LassoTimedWord> {
    let bar = text
        .find('|')
        .ok_or(Error::Syntax { position: text.len(), message: "expected `|` between prefix and period".into() })?;
    let (prefix, rest) = (&text[..bar], &text[bar + 1..]);
    if rest.contains('|') {
        return Err(Error::Syntax {
            position: bar + 1 + rest.find('|').unwrap_or(0),
            message: "more than one `|`".into(),
        });
    }
    let prefix = parse_timed_word_with(prefix, alphabet, mode)?;
    let period = parse_timed_word_with(rest, alphabet, mode).map_err(|e| match e {
        Error::Syntax { position, message } => Error::Syntax { position: position + bar + 1, message },
        other => other,
    })?;
    LassoTimedWord::new(prefix, period)
}
