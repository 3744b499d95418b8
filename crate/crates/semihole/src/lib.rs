//! File formats, reports, parallelism and the command-line front end for
//! [`semihole_core`].

pub mod cli;
pub mod format;
pub mod oracle;
pub mod parallel;
pub mod pipeline;
pub mod report;
