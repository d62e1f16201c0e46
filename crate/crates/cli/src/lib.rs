//! JSON formats and the batch driver for `wittsen-core`.
//!
//! Exit status: 0 when every check in the report passes, 1 when a check fails
//! or the computation stops on a mathematical obstruction, 2 on malformed input.

pub mod commands;
pub mod format;
pub mod verify;

pub use commands::{run, Params, Report, Verdict, COMMANDS, DEFAULT_SEED};
pub use format::SchemaError;
pub use verify::verify_report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_SCHEMA: u8 = 2;

pub fn exit_code(report: &Report) -> u8 {
    if report.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
