//! Line-oriented text format for automata.
//!
//! ```text
//! # comment
//! automaton NAME            (or `buchi NAME`, `stopwatch NAME`)
//! alphabet a b c
//! clocks x y
//! locations q0 q1 q2        (optional; other lines declare locations too)
//! init q0
//! final q2
//! active q0 x               (stopwatch only; omitted = all clocks run)
//! trans q0 a when x<1 & y>=2 reset x -> q1
//! trans q1 eps -> q2        (stopwatch only: silent transition)
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automaton::{SilentTransition, StopwatchAutomaton, TimedAutomaton, TimedBuchiAutomaton, Transition};
use crate::error::{Error, Result};
use crate::guard::Guard;

pub const SILENT: &str = "eps";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Timed(TimedAutomaton),
    Buchi(TimedBuchiAutomaton),
    Stopwatch(StopwatchAutomaton),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Timed(_) => "automaton",
            Document::Buchi(_) => "buchi",
            Document::Stopwatch(_) => "stopwatch",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Document::Timed(a) => print_automaton(a),
            Document::Buchi(b) => print_buchi(b),
            Document::Stopwatch(s) => print_stopwatch(s),
        }
    }
}

fn fail(line: usize, message: impl Into<String>) -> Error {
    Error::Format { line, message: message.into() }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut kind: Option<&str> = None;
    let mut aut = TimedAutomaton::default();
    let mut silent = Vec::new();
    let mut active = std::collections::BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        if kind.is_none() {
            match head {
                "automaton" | "buchi" | "stopwatch" => {
                    if rest.len() != 1 {
                        return Err(fail(line_no, "header takes exactly one name"));
                    }
                    kind = Some(head);
                    aut.name = rest[0].to_string();
                    continue;
                }
                _ => return Err(fail(line_no, "expected `automaton`, `buchi` or `stopwatch` header")),
            }
        }
        match head {
            "alphabet" => {
                for l in &rest {
                    if *l == SILENT || *l == "->" || *l == "|" {
                        return Err(fail(line_no, format!("`{l}` is reserved")));
                    }
                    aut.alphabet.insert(*l);
                }
            }
            "clocks" => {
                for c in &rest {
                    if aut.clocks.iter().any(|x| x == c) {
                        return Err(fail(line_no, format!("clock `{c}` declared twice")));
                    }
                    aut.clocks.push(c.to_string());
                }
            }
            "locations" => rest.iter().for_each(|l| aut.add_location(*l)),
            "init" => rest.iter().for_each(|l| aut.add_initial(*l)),
            "final" => rest.iter().for_each(|l| aut.add_accepting(*l)),
            "active" => {
                if kind != Some("stopwatch") {
                    return Err(fail(line_no, "`active` only allowed in stopwatch automata"));
                }
                let (loc, clocks) = rest.split_first().ok_or_else(|| fail(line_no, "`active` needs a location"))?;
                aut.add_location(*loc);
                let set: BTreeSet<String> = clocks.iter().map(|c| c.to_string()).collect();
                active.insert(loc.to_string(), set);
            }
            "trans" => {
                let (src, letter, guard, resets, dst) = parse_trans(&rest).map_err(|m| fail(line_no, m))?;
                if letter == SILENT {
                    if kind != Some("stopwatch") {
                        return Err(fail(line_no, "silent transitions only allowed in stopwatch automata"));
                    }
                    aut.add_location(src.clone());
                    aut.add_location(dst.clone());
                    silent.push(SilentTransition { source: src, guard, resets, target: dst });
                } else {
                    aut.add_transition(Transition { source: src, letter, guard, resets, target: dst });
                }
            }
            "automaton" | "buchi" | "stopwatch" => return Err(fail(line_no, "duplicate header")),
            other => return Err(fail(line_no, format!("unknown directive `{other}`"))),
        }
    }

    let doc = match kind {
        None => return Err(fail(0, "empty document")),
        Some("automaton") => Document::Timed(aut),
        Some("buchi") => Document::Buchi(TimedBuchiAutomaton(aut)),
        _ => Document::Stopwatch(StopwatchAutomaton { automaton: aut, silent, active }),
    };
    let violations = match &doc {
        Document::Timed(a) => a.validate(),
        Document::Buchi(b) => b.validate(),
        Document::Stopwatch(s) => s.validate(),
    };
    if let Some(v) = violations.first() {
        return Err(Error::InvalidAutomaton(v.to_string()));
    }
    Ok(doc)
}

type ParsedTrans = (String, String, Guard, Vec<String>, String);

fn parse_trans(toks: &[&str]) -> std::result::Result<ParsedTrans, String> {
    let arrow = toks.iter().position(|t| *t == "->").ok_or("transition needs `-> TARGET`")?;
    if arrow + 2 != toks.len() {
        return Err("expected exactly one target after `->`".into());
    }
    let dst = toks[arrow + 1].to_string();
    let body = &toks[..arrow];
    if body.len() < 2 {
        return Err("expected `trans SOURCE LETTER ...`".into());
    }
    let (src, letter) = (body[0].to_string(), body[1].to_string());
    let mut guard = Guard::always();
    let mut resets = Vec::new();
    let mut i = 2;
    while i < body.len() {
        match body[i] {
            "when" => {
                let end = body[i + 1..].iter().position(|t| *t == "reset").map_or(body.len(), |p| i + 1 + p);
                let text = body[i + 1..end].join(" ");
                guard = text.parse().map_err(|e: Error| e.to_string())?;
                i = end;
            }
            "reset" => {
                let end = body[i + 1..].iter().position(|t| *t == "when").map_or(body.len(), |p| i + 1 + p);
                resets.extend(body[i + 1..end].iter().map(|c| c.to_string()));
                i = end;
            }
            other => return Err(format!("unexpected `{other}` in transition")),
        }
    }
    Ok((src, letter, guard, resets, dst))
}

pub fn parse_automaton(text: &str) -> Result<TimedAutomaton> {
    match parse_document(text)? {
        Document::Timed(a) => Ok(a),
        other => Err(fail(1, format!("expected `automaton`, found `{}`", other.kind()))),
    }
}

pub fn parse_buchi(text: &str) -> Result<TimedBuchiAutomaton> {
    match parse_document(text)? {
        Document::Buchi(b) => Ok(b),
        other => Err(fail(1, format!("expected `buchi`, found `{}`", other.kind()))),
    }
}

pub fn parse_stopwatch(text: &str) -> Result<StopwatchAutomaton> {
    match parse_document(text)? {
        Document::Stopwatch(s) => Ok(s),
        Document::Timed(a) => Ok(StopwatchAutomaton::from_timed(a)),
        other => Err(fail(1, format!("expected `stopwatch`, found `{}`", other.kind()))),
    }
}

fn write_body(out: &mut String, aut: &TimedAutomaton) {
    let join = |it: &mut dyn Iterator<Item = &String>| it.map(String::as_str).collect::<Vec<_>>().join(" ");
    let line = |out: &mut String, key: &str, vals: String| {
        if vals.is_empty() {
            let _ = writeln!(out, "{key}");
        } else {
            let _ = writeln!(out, "{key} {vals}");
        }
    };
    line(out, "alphabet", join(&mut aut.alphabet.iter()));
    line(out, "clocks", join(&mut aut.clocks.iter()));
    line(out, "locations", join(&mut aut.locations.iter()));
    line(out, "init", join(&mut aut.initial.iter()));
    line(out, "final", join(&mut aut.accepting.iter()));
}

fn write_edge(out: &mut String, source: &str, letter: &str, guard: &Guard, resets: &[String], target: &str) {
    let _ = write!(out, "trans {source} {letter}");
    if !guard.is_true() {
        let _ = write!(out, " when {guard}");
    }
    if !resets.is_empty() {
        let _ = write!(out, " reset {}", resets.join(" "));
    }
    let _ = writeln!(out, " -> {target}");
}

pub fn print_automaton(aut: &TimedAutomaton) -> String {
    print_with_header("automaton", aut)
}

pub fn print_buchi(aut: &TimedBuchiAutomaton) -> String {
    print_with_header("buchi", &aut.0)
}

fn print_with_header(header: &str, aut: &TimedAutomaton) -> String {
    let mut out = format!("{header} {}\n", display_name(&aut.name));
    write_body(&mut out, aut);
    for t in &aut.transitions {
        write_edge(&mut out, &t.source, &t.letter, &t.guard, &t.resets, &t.target);
    }
    out
}

pub fn print_stopwatch(sw: &StopwatchAutomaton) -> String {
    let aut = &sw.automaton;
    let mut out = format!("stopwatch {}\n", display_name(&aut.name));
    write_body(&mut out, aut);
    for (loc, clocks) in &sw.active {
        let list: Vec<&str> = clocks.iter().map(String::as_str).collect();
        if list.is_empty() {
            let _ = writeln!(out, "active {loc}");
        } else {
            let _ = writeln!(out, "active {loc} {}", list.join(" "));
        }
    }
    for t in &aut.transitions {
        write_edge(&mut out, &t.source, &t.letter, &t.guard, &t.resets, &t.target);
    }
    for t in &sw.silent {
        write_edge(&mut out, &t.source, SILENT, &t.guard, &t.resets, &t.target);
    }
    out
}

fn display_name(name: &str) -> String {
    if name.is_empty() {
        "unnamed".into()
    } else {
        name.split_whitespace().collect::<Vec<_>>().join("_")
    }
}

/// Convenience for tests and examples: parse a guard literal, panicking on error.
pub fn guard(text: &str) -> Guard {
    text.parse().expect("guard literal")
}
