//! Circular split systems, Kalmanson metrics, and the simplicial complex
//! they span.
//!
//! The crate revolves around one family of objects seen from three sides:
//!
//! * **Splits** ([`splits`]) — bipartitions of `{1, …, n}`, systems of
//!   them, and circularity: can all splits be drawn as arcs of one circle?
//! * **Matrices** ([`ones`]) — the consecutive-ones and circular-ones
//!   properties that decide circularity, with certificates, plus the
//!   forbidden-configuration families characterizing them.
//! * **Metrics** ([`geometry`]) — symmetric distance matrices, the
//!   Kalmanson inequalities, exact decomposition into weighted arc splits,
//!   recognition up to relabeling, and the travelling-salesman shortcut
//!   such metrics admit.
//!
//! [`enumeration`] counts the resulting simplicial complex (whose vertices
//! are non-trivial splits and whose faces are circular systems): facets,
//! f-vectors, and closed-form triangle counts. [`generate`] provides
//! seeded random instances for tests and experiments, and [`cli`] backs
//! the `kalmanson` binary.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example circular_splits`.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod ones;
pub mod splits;

pub use error::Error;
