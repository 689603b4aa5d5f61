use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use tempo::constructions::{
    build_tba_reduction, build_thm1, build_thm2, build_thm4, concat_sep, named_gadget, product, union,
};
use tempo::format::{parse_document, print_automaton, print_buchi, print_stopwatch, Document};
use tempo::grid::{bounded_universality, GridSpec};
use tempo::regions::{is_empty, is_empty_buchi, untime, witness};
use tempo::sample::seeded_rng;
use tempo::semantics::{
    complement_det, is_deterministic, member, member_lasso, member_stopwatch_with, DEFAULT_SILENT_CAP,
};
use tempo::shuffle::{sample_shuffle, shuffle_automaton, shuffle_member, Side};
use tempo::word::{parse_lasso_word, parse_timed_word_with, DelayMode};
use tempo::{Alphabet, StopwatchAutomaton, TimedAutomaton, TimedBuchiAutomaton, TimedWord};
use tempo_cli::exit;
use tempo_cli::suite::run_suite;

/// Timed automata toolkit: membership, regions, shuffle and reductions.
#[derive(Parser)]
#[command(name = "tempo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-word membership.
    Member {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
        /// Admit zero delays.
        #[arg(long)]
        permissive: bool,
    },
    /// Büchi membership of a lasso word `PREFIX | PERIOD`.
    MemberOmega {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Membership for a stopwatch automaton.
    MemberSw {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
        /// Most silent transitions allowed between two events.
        #[arg(long, default_value_t = DEFAULT_SILENT_CAP)]
        cap: usize,
    },
    /// Reports whether the automaton is deterministic.
    DetCheck {
        automaton: PathBuf,
    },
    /// Complement of a deterministic automaton.
    Complement {
        automaton: PathBuf,
    },
    /// Exit 0 when the language is empty.
    Empty {
        automaton: PathBuf,
    },
    /// Exit 0 when the Büchi language is empty.
    EmptyOmega {
        automaton: PathBuf,
    },
    /// Prints an accepted word, if any.
    Witness {
        automaton: PathBuf,
    },
    /// Prints the clockless automaton of the untimed language.
    Untime {
        automaton: PathBuf,
    },
    /// Prints a fixed gadget: A, An, R1, R2, R3, L2, L2-omega.
    Gadget {
        name: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        /// Comma-separated alphabet.
        #[arg(long, default_value = "a")]
        alphabet: String,
        #[arg(long, default_value = "a")]
        letter: String,
        #[arg(short = 'c', default_value = "c")]
        separator: String,
    },
    /// Builds a reduction from the automaton for L.
    Build {
        kind: BuildKind,
        #[arg(short = 'L')]
        language: PathBuf,
        #[arg(short = 'c', default_value = "c")]
        separator: String,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        /// Print the resource summary as JSON instead of the automaton.
        #[arg(long)]
        summary: bool,
    },
    Union {
        left: PathBuf,
        right: PathBuf,
    },
    Product {
        left: PathBuf,
        right: PathBuf,
    },
    /// `L(left) · c · L(right)` for a fresh separator letter.
    ConcatSep {
        left: PathBuf,
        separator: String,
        right: PathBuf,
    },
    /// Whether `word` is a shuffle of `x` and `y`.
    ShuffleMember {
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Stopwatch automaton for the shuffle of two languages.
    ShuffleAut {
        left: PathBuf,
        right: PathBuf,
    },
    /// Random shuffles of `x` and `y`.
    ShuffleSample {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Searches a finite grid of words for one the automaton rejects.
    GridUniv {
        automaton: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
        denoms: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        max_num: u32,
    },
    /// Runs a check suite: thm1, thm2, thm4, tba, shuffle, regions.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Thm1,
    Thm2,
    Thm4,
    Tba,
}

/// A failure with its exit code.
struct Failure(u8, anyhow::Error);

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let code = match e.downcast_ref::<tempo::Error>() {
            Some(tempo::Error::Inconclusive { .. }) => exit::INCONCLUSIVE,
            _ => exit::USAGE,
        };
        Failure(code, e)
    }
}

impl From<tempo::Error> for Failure {
    fn from(e: tempo::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, e)) => {
            eprintln!("tempo: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn load(path: &Path) -> anyhow::Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_timed(path: &Path) -> anyhow::Result<TimedAutomaton> {
    match load(path)? {
        Document::Timed(a) => Ok(a),
        other => bail!("{}: expected a timed automaton, found `{}`", path.display(), other.kind()),
    }
}

/// Büchi files, or plain automata read with Büchi acceptance.
fn load_buchi(path: &Path) -> anyhow::Result<TimedBuchiAutomaton> {
    match load(path)? {
        Document::Buchi(b) => Ok(b),
        Document::Timed(a) => Ok(TimedBuchiAutomaton(a)),
        Document::Stopwatch(_) => bail!("{}: stopwatch automata have no Büchi semantics", path.display()),
    }
}

fn load_stopwatch(path: &Path) -> anyhow::Result<StopwatchAutomaton> {
    match load(path)? {
        Document::Stopwatch(s) => Ok(s),
        Document::Timed(a) => Ok(StopwatchAutomaton::from_timed(a)),
        Document::Buchi(_) => bail!("{}: expected a finite-word automaton", path.display()),
    }
}

fn word(text: &str, alphabet: Option<&Alphabet>, mode: DelayMode) -> anyhow::Result<TimedWord> {
    parse_timed_word_with(text, alphabet, mode).with_context(|| format!("word `{text}`"))
}

fn verdict(accepted: bool) -> u8 {
    println!("{}", if accepted { "accept" } else { "reject" });
    if accepted {
        exit::ACCEPT
    } else {
        exit::REJECT
    }
}

fn show_word(w: &TimedWord) -> String {
    if w.is_empty() {
        "(empty word)".into()
    } else {
        w.to_string()
    }
}

fn json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Member { automaton, word: w, permissive } => {
            let aut = load_timed(&automaton)?;
            let mode = if permissive { DelayMode::Permissive } else { DelayMode::Strict };
            let w = word(&w, Some(&aut.alphabet), mode)?;
            Ok(verdict(member(&aut, &w)?))
        }
        Command::MemberOmega { automaton, word: w } => {
            let aut = load_buchi(&automaton)?;
            let w = parse_lasso_word(&w, Some(&aut.0.alphabet), DelayMode::Strict)
                .with_context(|| format!("word `{w}`"))?;
            Ok(verdict(member_lasso(&aut, &w)?))
        }
        Command::MemberSw { automaton, word: w, cap } => {
            let sw = load_stopwatch(&automaton)?;
            let w = word(&w, Some(&sw.automaton.alphabet), DelayMode::Strict)?;
            Ok(verdict(member_stopwatch_with(&sw, &w, cap)?))
        }
        Command::DetCheck { automaton } => {
            let aut = load_timed(&automaton)?;
            let report = is_deterministic(&aut);
            if report.deterministic {
                println!("deterministic");
                return Ok(exit::ACCEPT);
            }
            println!("not deterministic");
            if report.initial_count != 1 {
                println!("  {} initial locations", report.initial_count);
            }
            for (i, j) in report.conflicts {
                let (a, b) = (&aut.transitions[i], &aut.transitions[j]);
                println!(
                    "  transitions {i} and {j} overlap: {} --{}--> {} / {}",
                    a.source, a.letter, a.target, b.target
                );
            }
            Ok(exit::REJECT)
        }
        Command::Complement { automaton } => {
            print!("{}", print_automaton(&complement_det(&load_timed(&automaton)?)?));
            Ok(exit::ACCEPT)
        }
        Command::Empty { automaton } => {
            let empty = is_empty(&load_timed(&automaton)?)?;
            println!("{}", if empty { "empty" } else { "nonempty" });
            Ok(if empty { exit::ACCEPT } else { exit::REJECT })
        }
        Command::EmptyOmega { automaton } => {
            let empty = is_empty_buchi(&load_buchi(&automaton)?)?;
            println!("{}", if empty { "empty" } else { "nonempty" });
            Ok(if empty { exit::ACCEPT } else { exit::REJECT })
        }
        Command::Witness { automaton } => match witness(&load_timed(&automaton)?)? {
            Some(w) => {
                println!("{}", show_word(&w));
                Ok(exit::ACCEPT)
            }
            None => {
                println!("empty");
                Ok(exit::REJECT)
            }
        },
        Command::Untime { automaton } => {
            print!("{}", print_automaton(&untime(&load_timed(&automaton)?)?));
            Ok(exit::ACCEPT)
        }
        Command::Gadget { name, n, alphabet, letter, separator } => {
            let sigma = Alphabet::new(alphabet.split(',').map(str::trim).filter(|s| !s.is_empty()));
            print!("{}", named_gadget(&name, &sigma, &letter, &separator, n)?.to_text());
            Ok(exit::ACCEPT)
        }
        Command::Build { kind, language, separator, n, summary } => {
            let (text, resources) = match kind {
                BuildKind::Tba => {
                    let r = build_tba_reduction(&load_buchi(&language)?, &separator)?;
                    (print_buchi(&r.automaton), r.summary)
                }
                _ => {
                    let l = load_timed(&language)?;
                    let r = match kind {
                        BuildKind::Thm1 => build_thm1(&l, &separator)?,
                        BuildKind::Thm2 => build_thm2(&l, n, &separator)?,
                        _ => build_thm4(&l, &separator)?,
                    };
                    (print_automaton(&r.automaton), r.summary)
                }
            };
            if summary {
                json(&resources)?;
            } else {
                print!("{text}");
            }
            Ok(exit::ACCEPT)
        }
        Command::Union { left, right } => {
            print!("{}", print_automaton(&union(&load_timed(&left)?, &load_timed(&right)?)));
            Ok(exit::ACCEPT)
        }
        Command::Product { left, right } => {
            print!("{}", print_automaton(&product(&load_timed(&left)?, &load_timed(&right)?)));
            Ok(exit::ACCEPT)
        }
        Command::ConcatSep { left, separator, right } => {
            print!("{}", print_automaton(&concat_sep(&load_timed(&left)?, &separator, &load_timed(&right)?)?));
            Ok(exit::ACCEPT)
        }
        Command::ShuffleMember { word: w, x, y } => {
            let (w, x, y) = (
                word(&w, None, DelayMode::Strict)?,
                word(&x, None, DelayMode::Strict)?,
                word(&y, None, DelayMode::Strict)?,
            );
            match shuffle_member(&w, &x, &y) {
                Some(d) => {
                    println!("accept");
                    let sides: Vec<&str> =
                        d.assignment.iter().map(|s| if *s == Side::Left { "x" } else { "y" }).collect();
                    println!("owners: {}", sides.join(" "));
                    Ok(exit::ACCEPT)
                }
                None => Ok(verdict(false)),
            }
        }
        Command::ShuffleAut { left, right } => {
            print!("{}", print_stopwatch(&shuffle_automaton(&load_timed(&left)?, &load_timed(&right)?)?));
            Ok(exit::ACCEPT)
        }
        Command::ShuffleSample { x, y, count, seed } => {
            let (x, y) = (word(&x, None, DelayMode::Strict)?, word(&y, None, DelayMode::Strict)?);
            for w in sample_shuffle(&x, &y, count, &mut seeded_rng(seed)) {
                println!("{}", show_word(&w));
            }
            Ok(exit::ACCEPT)
        }
        Command::GridUniv { automaton, max_len, denoms, max_num } => {
            let aut = load_timed(&automaton)?;
            if denoms.is_empty() || denoms.contains(&0) || max_num == 0 {
                return Err(anyhow!("denominators and --max-num must be positive").into());
            }
            let grid = GridSpec::new(max_len, &denoms, max_num);
            let v = bounded_universality(&aut, &grid)?;
            if let Some(w) = v.counterexample() {
                // Never print a counterexample that membership does not confirm.
                if member(&aut, &w)? {
                    return Err(anyhow!("internal error: grid counterexample {w} is accepted").into());
                }
                json(&v)?;
                return Ok(exit::REJECT);
            }
            json(&v)?;
            Ok(exit::ACCEPT)
        }
        Command::Suite { name, seed } => {
            let report = run_suite(&name, seed)?;
            json(&report)?;
            Ok(if report.passed { exit::ACCEPT } else { exit::REJECT })
        }
    }
}
