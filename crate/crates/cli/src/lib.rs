//! File formats, reports and commands for the `wildrank` tool.

pub mod certfile;
pub mod commands;
pub mod modfile;
pub mod report;
pub mod specfile;

pub use commands::{certify, classify, recheck_text, tilt, variety, CertifyOptions, Outcome, Status, TiltOptions, VarietyOptions};
pub use specfile::{parse_quiver_spec, write_quiver_spec, QuiverSpec, SpecError};
