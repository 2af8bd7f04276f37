//! Modal formulas over the core connectives `x_i`, `false`, `~`, `|` and `[]`.
//!
//! The derived connectives (`true`, `&`, `->`, `<->`, `<>`) only exist as
//! constructors: they build their usual definitions out of the core, so every
//! [`Formula`] value has exactly five shapes.

mod parse;
mod render;
mod substitution;

use std::fmt;

pub use parse::parse;
pub use substitution::{compose_subs, substitute, Substitution};

/// A formula in the core syntax. Variables are 1-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(usize),
    Falsum,
    Neg(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    /// `x_index`. Panics on index 0; the parser rejects it with an error instead.
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        Formula::Var(index)
    }

    pub fn falsum() -> Self {
        Formula::Falsum
    }

    /// `~false`
    pub fn top() -> Self {
        Formula::neg(Formula::Falsum)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    /// `~(~a | ~b)`
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::neg(Formula::or(Formula::neg(a), Formula::neg(b)))
    }

    /// `~a | b`
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::neg(a), b)
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// `~[]~f`
    pub fn diamond(f: Formula) -> Self {
        Formula::neg(Formula::boxed(Formula::neg(f)))
    }

    /// `[]` applied `times` times.
    pub fn box_pow(times: usize, f: Formula) -> Self {
        (0..times).fold(f, |acc, _| Formula::boxed(acc))
    }

    /// `<>` applied `times` times.
    pub fn diamond_pow(times: usize, f: Formula) -> Self {
        (0..times).fold(f, |acc, _| Formula::diamond(acc))
    }

    /// `f` for `sign == true`, `~f` otherwise.
    pub fn signed(f: Formula, sign: bool) -> Self {
        if sign {
            f
        } else {
            Formula::neg(f)
        }
    }

    /// Left-nested disjunction of `items`, `false` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Falsum)
    }

    /// Left-nested conjunction of `items`, `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// The modal degree: nesting depth of `[]`.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Falsum => 0,
            Formula::Neg(f) => f.degree(),
            Formula::Or(a, b) => a.degree().max(b.degree()),
            Formula::Box(f) => f.degree() + 1,
        }
    }

    /// Largest variable index occurring in the formula, 0 if there is none.
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Var(i) => *i,
            Formula::Falsum => 0,
            Formula::Neg(f) | Formula::Box(f) => f.max_var(),
            Formula::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Falsum => 1,
            Formula::Neg(f) | Formula::Box(f) => 1 + f.size(),
            Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Errors unless every variable index is at most `width`.
    pub fn check_width(&self, width: usize) -> crate::Result<()> {
        let index = self.max_var();
        if index > width {
            return Err(crate::Error::VariableOutOfRange { index, width });
        }
        Ok(())
    }
}

/// `deg_n` as a free function.
pub fn degree(f: &Formula) -> usize {
    f.degree()
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&render::render(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Formula({self})")
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(text: &str) -> crate::Result<Self> {
        parse(text)
    }
}

pub use render::render;
