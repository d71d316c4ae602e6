//! Runs the code blocks of the guide as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}

#[doc = include_str!("../../../book/src/gaps.md")]
pub mod gaps {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/tables.md")]
pub mod tables {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
