#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod connection;
pub mod curvature;
pub mod error;
pub mod fixtures;
pub mod manifest;
pub mod manifold;
pub mod oracle;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod soliton;
pub mod structure;

#[cfg(test)]
mod testing;
