//! File formats, the verification harness and the command-line front end
//! for [`superpattern_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod verify;
