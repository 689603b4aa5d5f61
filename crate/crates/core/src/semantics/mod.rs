//! Acceptance of timed words by the various automaton classes.

mod determinism;
mod lasso;
pub(crate) mod lp;
mod member;
mod stopwatch;

pub use determinism::{complement_det, complete, is_deterministic, DeterminismReport};
pub use lasso::{lasso_run, member_lasso, LassoRun};
pub(crate) use lasso::{path_from, tarjan};
pub use member::{member, simulate, RunState, RunStats};
pub use stopwatch::{member_stopwatch, member_stopwatch_with, DEFAULT_SILENT_CAP};
