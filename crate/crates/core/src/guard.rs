//! Diagonal-free clock guards and clock valuations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::rational::Rational;

pub type Clock = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, value: &Rational, constant: &Rational) -> bool {
        match self {
            Relation::Lt => value < constant,
            Relation::Le => value <= constant,
            Relation::Eq => value == constant,
            Relation::Ge => value >= constant,
            Relation::Gt => value > constant,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// `clock ◁ constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub clock: Clock,
    pub relation: Relation,
    pub constant: u32,
}

impl Atom {
    pub fn new(clock: impl Into<Clock>, relation: Relation, constant: u32) -> Self {
        Atom { clock: clock.into(), relation, constant }
    }

    pub fn holds(&self, value: &Rational) -> bool {
        self.relation.holds(value, &Rational::from(self.constant))
    }

    pub fn interval(&self) -> Interval {
        let c = self.constant;
        match self.relation {
            Relation::Lt => Interval::new(0, true, Some((c, false))),
            Relation::Le => Interval::new(0, true, Some((c, true))),
            Relation::Eq => Interval::point(c),
            Relation::Ge => Interval::new(c, true, None),
            Relation::Gt => Interval::new(c, false, None),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.clock, self.relation.symbol(), self.constant)
    }
}

/// A set of nonnegative reals with integer endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: u32,
    pub lo_closed: bool,
    /// `None` is `+∞`.
    pub hi: Option<(u32, bool)>,
}

impl Interval {
    pub const FULL: Interval = Interval { lo: 0, lo_closed: true, hi: None };

    pub fn new(lo: u32, lo_closed: bool, hi: Option<(u32, bool)>) -> Self {
        Interval { lo, lo_closed, hi }
    }

    pub fn point(c: u32) -> Self {
        Interval::new(c, true, Some((c, true)))
    }

    pub fn is_empty(&self) -> bool {
        match self.hi {
            None => false,
            Some((h, h_closed)) => self.lo > h || (self.lo == h && !(self.lo_closed && h_closed)),
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let lo = Rational::from(self.lo);
        let above = if self.lo_closed { v >= &lo } else { v > &lo };
        let below = match self.hi {
            None => true,
            Some((h, true)) => v <= &Rational::from(h),
            Some((h, false)) => v < &Rational::from(h),
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let hi = match (self.hi, other.hi) {
            (None, h) | (h, None) => h,
            (Some((a, ac)), Some((b, bc))) => Some(match a.cmp(&b) {
                std::cmp::Ordering::Less => (a, ac),
                std::cmp::Ordering::Greater => (b, bc),
                std::cmp::Ordering::Equal => (a, ac && bc),
            }),
        };
        Interval { lo, lo_closed, hi }
    }

    /// Atoms on `clock` describing exactly this interval (none for `[0, ∞)`).
    pub fn atoms(&self, clock: &str) -> Vec<Atom> {
        if let Some((h, true)) = self.hi {
            if h == self.lo && self.lo_closed {
                return vec![Atom::new(clock, Relation::Eq, h)];
            }
        }
        let mut out = Vec::new();
        if !(self.lo == 0 && self.lo_closed) {
            let rel = if self.lo_closed { Relation::Ge } else { Relation::Gt };
            out.push(Atom::new(clock, rel, self.lo));
        }
        if let Some((h, closed)) = self.hi {
            let rel = if closed { Relation::Le } else { Relation::Lt };
            out.push(Atom::new(clock, rel, h));
        }
        out
    }
}

/// Conjunction of atoms; the empty conjunction is `true`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Guard {
    pub atoms: Vec<Atom>,
}

impl Guard {
    pub fn always() -> Self {
        Guard::default()
    }

    pub fn new(atoms: Vec<Atom>) -> Self {
        Guard { atoms }
    }

    pub fn atom(clock: impl Into<Clock>, relation: Relation, constant: u32) -> Self {
        Guard::new(vec![Atom::new(clock, relation, constant)])
    }

    pub fn is_true(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn and(&self, other: &Guard) -> Guard {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Guard { atoms }
    }

    pub fn max_constant(&self) -> u32 {
        self.atoms.iter().map(|a| a.constant).max().unwrap_or(0)
    }

    pub fn clocks(&self) -> impl Iterator<Item = &Clock> {
        self.atoms.iter().map(|a| &a.clock)
    }

    pub fn holds(&self, value: impl Fn(&str) -> Rational) -> bool {
        self.atoms.iter().all(|a| a.holds(&value(&a.clock)))
    }

    /// The feasible interval of each mentioned clock.
    pub fn intervals(&self) -> BTreeMap<&str, Interval> {
        let mut out: BTreeMap<&str, Interval> = BTreeMap::new();
        for a in &self.atoms {
            let iv = a.interval();
            out.entry(a.clock.as_str()).and_modify(|cur| *cur = cur.intersect(&iv)).or_insert(iv);
        }
        out
    }

    /// Exact for diagonal-free conjunctions: satisfiable iff every clock's
    /// interval is nonempty.
    pub fn is_satisfiable(&self) -> bool {
        self.intervals().values().all(|iv| !iv.is_empty())
    }

    pub fn rename(&self, map: impl Fn(&str) -> Clock) -> Guard {
        Guard { atoms: self.atoms.iter().map(|a| Atom::new(map(&a.clock), a.relation, a.constant)).collect() }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("true");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Guard {
    type Err = Error;

    /// `x<1 & y>=2`, or `true`. Spaces around operators are optional.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "true" {
            return Ok(Guard::always());
        }
        let mut atoms = Vec::new();
        let mut offset = 0;
        for part in s.split('&') {
            atoms.push(parse_atom(part).map_err(|message| Error::Syntax { position: offset, message })?);
            offset += part.len() + 1;
        }
        Ok(Guard { atoms })
    }
}

fn parse_atom(text: &str) -> Result<Atom, String> {
    const OPS: [(&str, Relation); 8] = [
        ("<=", Relation::Le),
        (">=", Relation::Ge),
        ("==", Relation::Eq),
        ("≤", Relation::Le),
        ("≥", Relation::Ge),
        ("<", Relation::Lt),
        (">", Relation::Gt),
        ("=", Relation::Eq),
    ];
    let text = text.trim();
    for (op, rel) in OPS {
        if let Some(i) = text.find(op) {
            let clock = text[..i].trim();
            let constant = text[i + op.len()..].trim();
            if clock.is_empty() || !clock.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.') {
                return Err(format!("bad clock name in `{text}`"));
            }
            let constant: u32 =
                constant.parse().map_err(|_| format!("guard constants are nonnegative integers, got `{constant}`"))?;
            return Ok(Atom::new(clock, rel, constant));
        }
    }
    Err(format!("no comparison operator in `{text}`"))
}

/// Total map from clocks to nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClockValuation {
    values: BTreeMap<Clock, Rational>,
}

impl ClockValuation {
    pub fn zero<'a>(clocks: impl IntoIterator<Item = &'a Clock>) -> Self {
        ClockValuation { values: clocks.into_iter().map(|c| (c.clone(), Rational::zero())).collect() }
    }

    pub fn get(&self, clock: &str) -> Option<&Rational> {
        self.values.get(clock)
    }

    /// Lets `delay` elapse on the clocks selected by `active`.
    pub fn advance(&mut self, delay: &Rational, active: impl Fn(&str) -> bool) {
        for (c, v) in self.values.iter_mut() {
            if active(c) {
                *v += delay;
            }
        }
    }

    pub fn reset<'a>(&mut self, clocks: impl IntoIterator<Item = &'a Clock>) {
        for c in clocks {
            if let Some(v) = self.values.get_mut(c) {
                *v = Rational::zero();
            }
        }
    }

    pub fn satisfies(&self, guard: &Guard) -> bool {
        guard.holds(|c| self.values.get(c).cloned().unwrap_or_default())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clock, &Rational)> {
        self.values.iter()
    }
}
