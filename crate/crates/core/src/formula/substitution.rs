use std::fmt;

use super::{parse, Formula};
use crate::{Error, Result};

/// An n-substitution `(k, σ)`: images for `x_1..x_n`, each a formula over
/// `x_1..x_k`. Applying it to a formula replaces variables and commutes with
/// every connective.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    codomain: usize,
    images: Vec<Formula>,
}

impl Substitution {
    /// Builds `(k, σ)` with `σ(x_i) = images[i - 1]`.
    pub fn new(codomain: usize, images: Vec<Formula>) -> Result<Self> {
        if codomain == 0 {
            return Err(Error::Arity("codomain needs at least one variable".into()));
        }
        if images.is_empty() {
            return Err(Error::Arity("substitution maps no variables".into()));
        }
        for image in &images {
            image.check_width(codomain)?;
        }
        Ok(Substitution { codomain, images })
    }

    /// Same images, codomain widened to the smallest `k` they fit in.
    pub fn tight(images: Vec<Formula>) -> Result<Self> {
        let codomain = images
            .iter()
            .map(Formula::max_var)
            .max()
            .unwrap_or(0)
            .max(1);
        Self::new(codomain, images)
    }

    /// `x_i ↦ x_i` for `i ≤ n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity needs at least one variable");
        Substitution {
            codomain: n,
            images: (1..=n).map(Formula::Var).collect(),
        }
    }

    /// Number of mapped variables (`n`).
    pub fn domain(&self) -> usize {
        self.images.len()
    }

    /// Number of variables the images may use (`k`).
    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn images(&self) -> &[Formula] {
        &self.images
    }

    /// Image of `x_var` (1-indexed).
    pub fn image(&self, var: usize) -> Option<&Formula> {
        var.checked_sub(1).and_then(|i| self.images.get(i))
    }

    /// Same images seen as formulas over `max(k, codomain)` variables.
    pub fn padded(&self, codomain: usize) -> Self {
        Substitution {
            codomain: self.codomain.max(codomain),
            images: self.images.clone(),
        }
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula> {
        substitute(self, f)
    }

    /// Parses `x1:=F; x2:=G; ...`. The entries must name `x1..xn` exactly
    /// once each, in any order; `k` is the largest variable the images use
    /// (at least 1).
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, Formula)> = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, body) = part
                .split_once(":=")
                .ok_or_else(|| Error::SubstitutionSyntax(format!("missing `:=` in `{part}`")))?;
            let index = match parse(name.trim()) {
                Ok(Formula::Var(i)) => i,
                _ => {
                    return Err(Error::SubstitutionSyntax(format!(
                        "`{}` is not a variable",
                        name.trim()
                    )))
                }
            };
            let image = parse(body)?;
            entries.push((index, image));
        }
        Self::from_entries(entries)
    }

    /// Builds a substitution from `(variable index, image)` pairs covering
    /// `1..=n` exactly once.
    pub fn from_entries(mut entries: Vec<(usize, Formula)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::SubstitutionSyntax("no entries".into()));
        }
        entries.sort_by_key(|(i, _)| *i);
        for (position, (index, _)) in entries.iter().enumerate() {
            if *index != position + 1 {
                return Err(Error::SubstitutionSyntax(format!(
                    "entries must cover x1..x{} exactly once",
                    entries.len()
                )));
            }
        }
        Self::tight(entries.into_iter().map(|(_, f)| f).collect())
    }
}

/// Applies `s` homomorphically: `s(false) = false`, and `s` commutes with
/// `~`, `|` and `[]`.
pub fn substitute(s: &Substitution, f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Var(i) => s.image(*i).cloned().ok_or(Error::VariableOutOfRange {
            index: *i,
            width: s.domain(),
        })?,
        Formula::Falsum => Formula::Falsum,
        Formula::Neg(g) => Formula::neg(substitute(s, g)?),
        Formula::Or(a, b) => Formula::or(substitute(s, a)?, substitute(s, b)?),
        Formula::Box(g) => Formula::boxed(substitute(s, g)?),
    })
}

/// `outer ∘ inner`: maps `x_i` to `outer(inner(x_i))`.
pub fn compose_subs(outer: &Substitution, inner: &Substitution) -> Result<Substitution> {
    if inner.codomain() != outer.domain() {
        return Err(Error::Arity(format!(
            "inner substitution produces {} variable(s) but outer maps {}",
            inner.codomain(),
            outer.domain()
        )));
    }
    let images = inner
        .images()
        .iter()
        .map(|f| substitute(outer, f))
        .collect::<Result<Vec<_>>>()?;
    Substitution::new(outer.codomain(), images)
}

impl fmt::Display for Substitution {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                out.write_str("; ")?;
            }
            write!(out, "x{}:={}", i + 1, image)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Substitution(k={}; {})", self.codomain, self)
    }
}
