//! Library side of the `meansq` command-line driver: configuration,
//! verification suites, and the resumable (X, Y) scan.

pub mod config;
pub mod scan;
pub mod suites;
