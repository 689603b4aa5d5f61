//! Library side of the `tempo` command: the reproducible check suites and
//! the exit-code contract.

pub mod suite;

/// Process exit codes.
pub mod exit {
    pub const ACCEPT: u8 = 0;
    pub const REJECT: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
}
