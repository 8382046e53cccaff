//! File formats, reports and the command-line front end for the
//! flex-variety certificate. The mathematics lives in `flexcert-core`.

pub mod cli;
pub mod formats;
pub mod reports;
