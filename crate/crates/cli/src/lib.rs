//! Argument handling for the `redlint` and `reduction-atlas` binaries.

pub mod lint;
pub mod serve;
