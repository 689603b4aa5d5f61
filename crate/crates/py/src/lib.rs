//! Python bindings. Words and lasso words cross the boundary as text
//! (`"1/2 a 1 a"`, `"1 a | 1 b"`), rationals as exact strings.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use tempo::constructions as cons;
use tempo::format::{parse_document, Document};
use tempo::grid::{bounded_universality as grid_search, GridSpec, GridVerdict};
use tempo::regions;
use tempo::sample::seeded_rng;
use tempo::semantics;
use tempo::shuffle::{self, Side};
use tempo::word::{parse_lasso_word, parse_timed_word_with, DelayMode};
use tempo::{Alphabet, StopwatchAutomaton, TimedAutomaton, TimedBuchiAutomaton};

create_exception!(tempo, TempoError, PyException);
create_exception!(tempo, InconclusiveError, TempoError);

fn err(e: tempo::Error) -> PyErr {
    match e {
        tempo::Error::Inconclusive { .. } => InconclusiveError::new_err(e.to_string()),
        _ => TempoError::new_err(e.to_string()),
    }
}

/// A finite timed word.
#[pyclass(name = "TimedWord", module = "tempo", frozen, eq, skip_from_py_object)]
#[derive(Debug, Clone, PartialEq)]
struct PyTimedWord(tempo::TimedWord);

#[pymethods]
impl PyTimedWord {
    #[new]
    #[pyo3(signature = (text="", permissive=false))]
    fn new(text: &str, permissive: bool) -> PyResult<Self> {
        let mode = if permissive { DelayMode::Permissive } else { DelayMode::Strict };
        parse_timed_word_with(text, None, mode).map(PyTimedWord).map_err(err)
    }

    /// `(delay, letter)` pairs with delays as exact strings.
    fn events(&self) -> Vec<(String, String)> {
        self.0.events().iter().map(|e| (e.delay.to_string(), e.letter.clone())).collect()
    }

    fn duration(&self) -> String {
        self.0.duration().to_string()
    }

    fn concat(&self, other: &PyTimedWord) -> PyTimedWord {
        PyTimedWord(self.0.concat(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TimedWord({:?})", self.0.to_string())
    }
}

/// A timed, Büchi or stopwatch automaton.
#[pyclass(name = "Automaton", module = "tempo", frozen, eq, skip_from_py_object)]
#[derive(Debug, Clone, PartialEq)]
struct PyAutomaton(Document);

impl PyAutomaton {
    fn timed(&self) -> PyResult<&TimedAutomaton> {
        match &self.0 {
            Document::Timed(a) => Ok(a),
            other => Err(PyValueError::new_err(format!("expected a timed automaton, got {}", other.kind()))),
        }
    }

    fn buchi(&self) -> PyResult<TimedBuchiAutomaton> {
        match &self.0 {
            Document::Buchi(b) => Ok(b.clone()),
            Document::Timed(a) => Ok(TimedBuchiAutomaton(a.clone())),
            Document::Stopwatch(_) => Err(PyValueError::new_err("stopwatch automata have no Büchi semantics")),
        }
    }

    fn stopwatch(&self) -> PyResult<StopwatchAutomaton> {
        match &self.0 {
            Document::Stopwatch(s) => Ok(s.clone()),
            Document::Timed(a) => Ok(StopwatchAutomaton::from_timed(a.clone())),
            Document::Buchi(_) => Err(PyValueError::new_err("expected a finite-word automaton")),
        }
    }

    fn inner(&self) -> &TimedAutomaton {
        match &self.0 {
            Document::Timed(a) => a,
            Document::Buchi(b) => &b.0,
            Document::Stopwatch(s) => &s.automaton,
        }
    }
}

fn ta(a: TimedAutomaton) -> PyAutomaton {
    PyAutomaton(Document::Timed(a))
}

#[pymethods]
impl PyAutomaton {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_document(text).map(PyAutomaton).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    /// `"automaton"`, `"buchi"` or `"stopwatch"`.
    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner().name.clone()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner().alphabet.iter().cloned().collect()
    }

    #[getter]
    fn num_clocks(&self) -> usize {
        self.inner().num_clocks()
    }

    #[getter]
    fn max_constant(&self) -> u32 {
        self.inner().max_constant()
    }

    #[getter]
    fn num_locations(&self) -> usize {
        self.inner().locations.len()
    }

    fn validate(&self) -> Vec<String> {
        let v = match &self.0 {
            Document::Stopwatch(s) => s.validate(),
            _ => self.inner().validate(),
        };
        v.iter().map(ToString::to_string).collect()
    }

    fn __str__(&self) -> String {
        self.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Automaton(kind={:?}, name={:?})", self.kind(), self.name())
    }
}

fn word_of(aut: &TimedAutomaton, text: &str) -> PyResult<tempo::TimedWord> {
    parse_timed_word_with(text, Some(&aut.alphabet), DelayMode::Strict).map_err(err)
}

#[pyfunction]
fn member(aut: &PyAutomaton, word: &str) -> PyResult<bool> {
    let a = aut.timed()?;
    semantics::member(a, &word_of(a, word)?).map_err(err)
}

#[pyfunction]
fn member_lasso(aut: &PyAutomaton, word: &str) -> PyResult<bool> {
    let b = aut.buchi()?;
    let w = parse_lasso_word(word, Some(&b.0.alphabet), DelayMode::Strict).map_err(err)?;
    semantics::member_lasso(&b, &w).map_err(err)
}

/// Raises `InconclusiveError` when a gap needs more than `cap` silent moves.
#[pyfunction]
#[pyo3(signature = (aut, word, cap=semantics::DEFAULT_SILENT_CAP))]
fn member_stopwatch(aut: &PyAutomaton, word: &str, cap: usize) -> PyResult<bool> {
    let sw = aut.stopwatch()?;
    let w = word_of(&sw.automaton, word)?;
    semantics::member_stopwatch_with(&sw, &w, cap).map_err(err)
}

#[pyfunction]
fn is_deterministic(aut: &PyAutomaton) -> PyResult<bool> {
    Ok(semantics::is_deterministic(aut.timed()?).deterministic)
}

#[pyfunction]
fn complement(aut: &PyAutomaton) -> PyResult<PyAutomaton> {
    semantics::complement_det(aut.timed()?).map(ta).map_err(err)
}

#[pyfunction]
fn is_empty(aut: &PyAutomaton) -> PyResult<bool> {
    match &aut.0 {
        Document::Buchi(b) => regions::is_empty_buchi(b).map_err(err),
        _ => regions::is_empty(aut.timed()?).map_err(err),
    }
}

#[pyfunction]
fn witness(aut: &PyAutomaton) -> PyResult<Option<String>> {
    Ok(regions::witness(aut.timed()?).map_err(err)?.map(|w| w.to_string()))
}

#[pyfunction]
fn untime(aut: &PyAutomaton) -> PyResult<PyAutomaton> {
    regions::untime(aut.timed()?).map(ta).map_err(err)
}

#[pyfunction]
fn untimed_equivalent(a: &PyAutomaton, b: &PyAutomaton) -> PyResult<bool> {
    regions::untimed_equivalent(a.timed()?, b.timed()?).map_err(err)
}

#[pyfunction]
fn region_count(clocks: usize, max_constant: u32) -> u128 {
    regions::region_count(clocks, max_constant)
}

#[pyfunction]
fn region_states(aut: &PyAutomaton) -> PyResult<usize> {
    Ok(regions::build_region_automaton(aut.timed()?).map_err(err)?.num_states())
}

/// Owner (`"x"` or `"y"`) of each event of `w`, or `None`.
#[pyfunction]
fn shuffle_member(w: &PyTimedWord, x: &PyTimedWord, y: &PyTimedWord) -> Option<Vec<&'static str>> {
    shuffle::shuffle_member(&w.0, &x.0, &y.0)
        .map(|d| d.assignment.iter().map(|s| if *s == Side::Left { "x" } else { "y" }).collect())
}

#[pyfunction]
#[pyo3(signature = (x, y, count=1, seed=0))]
fn sample_shuffle(x: &PyTimedWord, y: &PyTimedWord, count: usize, seed: u64) -> Vec<PyTimedWord> {
    shuffle::sample_shuffle(&x.0, &y.0, count, &mut seeded_rng(seed)).into_iter().map(PyTimedWord).collect()
}

#[pyfunction]
fn shuffle_automaton(a: &PyAutomaton, b: &PyAutomaton) -> PyResult<PyAutomaton> {
    shuffle::shuffle_automaton(a.timed()?, b.timed()?).map(|s| PyAutomaton(Document::Stopwatch(s))).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (name, alphabet=vec!["a".to_string()], letter="a", c="c", n=1))]
fn gadget(name: &str, alphabet: Vec<String>, letter: &str, c: &str, n: usize) -> PyResult<PyAutomaton> {
    cons::named_gadget(name, &Alphabet::new(alphabet), letter, c, n).map(PyAutomaton).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (l, c="c"))]
fn build_thm1(l: &PyAutomaton, c: &str) -> PyResult<PyAutomaton> {
    Ok(ta(cons::build_thm1(l.timed()?, c).map_err(err)?.automaton))
}

#[pyfunction]
#[pyo3(signature = (l, n, c="c"))]
fn build_thm2(l: &PyAutomaton, n: usize, c: &str) -> PyResult<PyAutomaton> {
    Ok(ta(cons::build_thm2(l.timed()?, n, c).map_err(err)?.automaton))
}

#[pyfunction]
#[pyo3(signature = (l, c="c"))]
fn build_thm4(l: &PyAutomaton, c: &str) -> PyResult<PyAutomaton> {
    Ok(ta(cons::build_thm4(l.timed()?, c).map_err(err)?.automaton))
}

#[pyfunction]
#[pyo3(signature = (l, c="c"))]
fn build_tba_reduction(l: &PyAutomaton, c: &str) -> PyResult<PyAutomaton> {
    let r = cons::build_tba_reduction(&l.buchi()?, c).map_err(err)?;
    Ok(PyAutomaton(Document::Buchi(r.automaton)))
}

#[pyfunction]
fn union(a: &PyAutomaton, b: &PyAutomaton) -> PyResult<PyAutomaton> {
    Ok(ta(cons::union(a.timed()?, b.timed()?)))
}

#[pyfunction]
fn product(a: &PyAutomaton, b: &PyAutomaton) -> PyResult<PyAutomaton> {
    Ok(ta(cons::product(a.timed()?, b.timed()?)))
}

#[pyfunction]
fn concat_sep(a: &PyAutomaton, sep: &str, b: &PyAutomaton) -> PyResult<PyAutomaton> {
    cons::concat_sep(a.timed()?, sep, b.timed()?).map(ta).map_err(err)
}

/// A rejected grid word, or `None` when the whole grid is accepted.
#[pyfunction]
#[pyo3(signature = (aut, max_len=3, denominators=vec![1, 2, 4], max_numerator=2))]
fn bounded_universality(
    aut: &PyAutomaton,
    max_len: usize,
    denominators: Vec<u32>,
    max_numerator: u32,
) -> PyResult<Option<String>> {
    let grid = GridSpec::new(max_len, &denominators, max_numerator);
    Ok(match grid_search(aut.timed()?, &grid).map_err(err)? {
        GridVerdict::Counterexample { word, .. } => Some(word),
        GridVerdict::NoCounterexampleInGrid { .. } => None,
    })
}

#[pymodule(name = "tempo")]
fn tempo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TempoError", m.py().get_type::<TempoError>())?;
    m.add("InconclusiveError", m.py().get_type::<InconclusiveError>())?;
    m.add_class::<PyTimedWord>()?;
    m.add_class::<PyAutomaton>()?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(member_lasso, m)?)?;
    m.add_function(wrap_pyfunction!(member_stopwatch, m)?)?;
    m.add_function(wrap_pyfunction!(is_deterministic, m)?)?;
    m.add_function(wrap_pyfunction!(complement, m)?)?;
    m.add_function(wrap_pyfunction!(is_empty, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(untime, m)?)?;
    m.add_function(wrap_pyfunction!(untimed_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(region_count, m)?)?;
    m.add_function(wrap_pyfunction!(region_states, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle_member, m)?)?;
    m.add_function(wrap_pyfunction!(sample_shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle_automaton, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    m.add_function(wrap_pyfunction!(build_thm1, m)?)?;
    m.add_function(wrap_pyfunction!(build_thm2, m)?)?;
    m.add_function(wrap_pyfunction!(build_thm4, m)?)?;
    m.add_function(wrap_pyfunction!(build_tba_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(union, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(concat_sep, m)?)?;
    m.add_function(wrap_pyfunction!(bounded_universality, m)?)?;
    Ok(())
}
