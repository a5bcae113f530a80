//! Text front end and command-line driver for `tower-core`.

pub mod cli;
pub mod frontend;
pub mod sample;
pub mod selftest;
