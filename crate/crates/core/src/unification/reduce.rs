use crate::chains::ChainSpace;
use crate::formula::{Formula, Substitution};
use crate::morphisms::{build_f, build_g, ChainMap};
use crate::{Error, Result};

use super::{is_unifier, UnifProblem};

/// The output of [`filter_combine`]: `mu` over `m` variables, and the two
/// specializations that send `x_m` to `true` and to `false`.
#[derive(Debug, Clone)]
pub struct Combined {
    pub mu: Substitution,
    pub lambda_top: Substitution,
    pub lambda_bottom: Substitution,
}

/// `⋁_{e<d} <>^e(x_m & []false)`: the last world of the chain makes `x_m` true.
fn last_world_marked(m: usize, d: usize) -> Formula {
    Formula::disjunction((0..d).map(|e| {
        Formula::diamond_pow(
            e,
            Formula::and(Formula::Var(m), Formula::boxed(Formula::Falsum)),
        )
    }))
}

/// `⋀_{e<d} []^e(~x_m | <>true)`: the last world of the chain makes `x_m` false.
fn last_world_unmarked(m: usize, d: usize) -> Formula {
    Formula::conjunction((0..d).map(|e| {
        Formula::box_pow(
            e,
            Formula::or(
                Formula::neg(Formula::Var(m)),
                Formula::diamond(Formula::top()),
            ),
        )
    }))
}

/// Merges two unifiers into one more general than both, switching between
/// them on the value of a fresh variable `x_m` at the last world, with
/// `m = max(k, l) + 1` after padding both codomains to at least `n`.
pub fn filter_combine(s: &Substitution, t: &Substitution, u: &UnifProblem) -> Result<Combined> {
    if !is_unifier(s, u)? || !is_unifier(t, u)? {
        return Err(Error::NotUnifier);
    }
    let n = u.params().n;
    let m = s.codomain().max(t.codomain()).max(n) + 1;
    let d = u.params().d;
    let marked = last_world_marked(m, d);
    let unmarked = last_world_unmarked(m, d);
    let images = s
        .images()
        .iter()
        .zip(t.images())
        .map(|(a, b)| {
            Formula::or(
                Formula::and(marked.clone(), a.clone()),
                Formula::and(unmarked.clone(), b.clone()),
            )
        })
        .collect();
    let mu = Substitution::new(m, images)?;
    let lambda = |last: Formula| {
        Substitution::new(
            m,
            (1..m)
                .map(Formula::Var)
                .chain(std::iter::once(last))
                .collect(),
        )
    };
    Ok(Combined {
        mu,
        lambda_top: lambda(Formula::top())?,
        lambda_bottom: lambda(Formula::Falsum)?,
    })
}

/// A unifier over `n` variables more general than a given one, with the
/// morphisms that produced it.
#[derive(Debug, Clone)]
pub struct ReductionWitness {
    /// `(n, τ)`: `τ(x_i)` is the set of images under `f` of the chains
    /// satisfying `σ(x_i)`.
    pub tau: Substitution,
    /// `(k, ν)`: `ν(x_i)` is the set of chains whose image under `f`
    /// satisfies `x_i`; `ν ∘ τ ≃ σ`.
    pub nu: Substitution,
    pub f: ChainMap,
    pub g: ChainMap,
}

/// Reduces a unifier over `k ≥ n` variables to one over `n` variables that is
/// at least as general. A codomain below `n` is padded to `n` first.
pub fn reduce_unifier(s: &Substitution, u: &UnifProblem) -> Result<ReductionWitness> {
    if !is_unifier(s, u)? {
        return Err(Error::NotUnifier);
    }
    let p = u.params();
    let s = s.padded(p.n);
    let g = build_g(&s, p)?;
    let f = build_f(&g)?;
    let (source, target): (&ChainSpace, &ChainSpace) = (f.source(), f.target());
    let tau = s
        .images()
        .iter()
        .map(|image| {
            let satisfying = source.denote(image)?;
            Ok(target
                .from_indices(satisfying.indices().map(|a| f.apply(a)))
                .to_formula())
        })
        .collect::<Result<Vec<_>>>()?;
    let nu = (1..=p.n)
        .map(|i| {
            source
                .from_indices((0..source.len() as u32).filter(|&a| target.head_bit(f.apply(a), i)))
                .to_formula()
        })
        .collect();
    Ok(ReductionWitness {
        tau: Substitution::new(p.n, tau)?,
        nu: Substitution::new(s.codomain(), nu)?,
        f,
        g,
    })
}
