//! Unification in the modal logics `Alt1 + []^d false` for `d ≥ 2`.
//!
//! Formulas over `n` variables are interpreted on finite chains
//! ([`chains`]); substitutions act on chain spaces through depth-respecting
//! maps ([`morphisms`]); and [`unification`] decides unifiability, compares
//! unifiers and computes a most general one.
//!
//! ```
//! use alt1_unify::{formula::parse, chains::LogicParams, unification::{mgu, UnifProblem}};
//!
//! let p = LogicParams::new(1, 2)?;
//! let problem = UnifProblem::new(parse("[]x1")?, p)?;
//! let best = mgu(&problem)?.expect("[]x1 is unifiable");
//! let expected = parse("x1 | []false")?;
//! assert!(alt1_unify::chains::equivalent(best.image(1).unwrap(), &expected, &p)?);
//! # Ok::<(), alt1_unify::Error>(())
//! ```

pub mod chains;
mod error;
pub mod formula;
pub mod morphisms;
pub mod simplify;
#[cfg(feature = "testing")]
pub mod testing;
pub mod unification;

pub use error::{BudgetError, CardinalityError, Error, Result};
