//! Runs every Rust block of the guide as a doctest of this crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}
#[doc = include_str!("../../../book/src/chains.md")]
pub mod chains {}
#[doc = include_str!("../../../book/src/morphisms.md")]
pub mod morphisms {}
#[doc = include_str!("../../../book/src/unification.md")]
pub mod unification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
