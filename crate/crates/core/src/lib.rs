//! Deformation invariants of representations of finitely presented groups
//! into `GL(n,C)`, `SL(n,C)` and `PSL(n,C)`: twisted cohomology through Fox
//! calculus, smoothness verdicts, stabilizers, and surface-group tools.

pub mod catalog;
pub mod cohomology;
pub mod document;
pub mod presentation;
pub mod rep;
pub mod smoothness;
mod serde_util;
pub mod surfaces;
