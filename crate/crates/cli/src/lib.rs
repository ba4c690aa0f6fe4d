//! Library surface of the experiment runner, split out so integration
//! tests can drive configs and commands directly.

pub mod commands;
pub mod config;
pub mod output;
