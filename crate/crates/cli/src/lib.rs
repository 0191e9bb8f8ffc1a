//! Command line entry points and the HTTP job service for `mirrorplan`.

pub mod commands;
pub mod service;
