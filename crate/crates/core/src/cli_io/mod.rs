//! File formats and the command implementations behind the `ratpat` binary.

mod commands;
pub mod report;
pub mod wire;

pub use commands::{cmd_check, cmd_info_index, cmd_score, cmd_tau, CommandOutput, OutputFormat};
pub use report::{Fixed8, ReportDocument};
