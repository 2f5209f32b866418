//! Batch front end for `fracode`: configuration, experiment runners and
//! deterministic CSV / JSON output.

pub mod config;
pub mod run;
pub mod table;

use std::io::Write;

pub use config::{Command, ConfigError, Format, RunConfig};
pub use run::{run, Outcome};
pub use table::Table;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PRECONDITION: u8 = 1;
pub const EXIT_INCOMPLETE: u8 = 2;

pub fn write_table(t: &Table, format: Format, w: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Csv => table::emit_csv(t, w),
        Format::Json => table::emit_json(t, w),
    }
}
