//! Manifests shipped with the crate.

pub const EXAMPLE: &str = include_str!("../fixtures/example.tsm");
pub const S3: &str = include_str!("../fixtures/s3.tsm");
pub const FLAT: &str = include_str!("../fixtures/flat.tsm");

/// `(name, text)` of every bundled manifest.
pub const ALL: [(&str, &str); 3] = [("example", EXAMPLE), ("s3", S3), ("flat", FLAT)];

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
