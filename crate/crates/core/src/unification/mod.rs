//! Unifiers and how they compare.
//!
//! A substitution `σ` over `k` variables unifies `φ` when `σ(φ)` is valid.
//! Validity of `σ(ψ)` at a chain `α` is validity of `ψ` at `g(α)`, where `g`
//! is the chain map induced by `σ`, so every question here is answered on
//! chain tables rather than on the substituted formulas.

mod order;
mod reduce;

use crate::chains::{ChainSpace, Denotation, LogicParams};
use crate::formula::{substitute, Formula, Substitution};
use crate::morphisms::induced_table;
use crate::simplify::simplify;
use crate::{Error, Result};

pub use reduce::{filter_combine, reduce_unifier, Combined, ReductionWitness};

/// A formula over `params.n` variables to be unified in the logic with bound
/// `params.d`.
#[derive(Debug, Clone)]
pub struct UnifProblem {
    formula: Formula,
    params: LogicParams,
}

impl UnifProblem {
    pub fn new(formula: Formula, params: LogicParams) -> Result<Self> {
        formula.check_width(params.n)?;
        Ok(UnifProblem { formula, params })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn params(&self) -> &LogicParams {
        &self.params
    }

    /// The chains of width `n` satisfying the formula.
    pub fn denotation(&self) -> Result<Denotation> {
        self.params.space()?.denote(&self.formula)
    }
}

fn check_maps_problem(s: &Substitution, u: &UnifProblem) -> Result<()> {
    if s.domain() != u.params.n {
        return Err(Error::Arity(format!(
            "substitution maps {} variable(s) but the problem has {}",
            s.domain(),
            u.params.n
        )));
    }
    Ok(())
}

/// Whether `s(φ)` is valid over `s.codomain()` variables.
pub fn is_unifier(s: &Substitution, u: &UnifProblem) -> Result<bool> {
    check_maps_problem(s, u)?;
    let p = &u.params;
    let source = ChainSpace::new(s.codomain(), p.d, &p.budget)?;
    let target = p.space()?;
    let images = s
        .images()
        .iter()
        .map(|f| source.denote(f))
        .collect::<Result<Vec<_>>>()?;
    let goal = target.denote(&u.formula)?;
    Ok(induced_table(&source, &target, &images)
        .into_iter()
        .all(|c| goal.contains(c)))
}

/// `⋁_{e ∈ depths} <>^e []false`: true exactly at chains whose depth is in
/// `depths` (bit `e` for depth `e`).
fn depth_formula(depths: u64, d: usize) -> Formula {
    if depths == (1u64 << d) - 1 {
        return Formula::top();
    }
    Formula::disjunction(
        (0..d)
            .filter(|e| (depths >> e) & 1 == 1)
            .map(|e| Formula::diamond_pow(e, Formula::boxed(Formula::Falsum))),
    )
}

/// The first variable-free unifier, each image being a set of depths, in
/// the order that reads the depth sets of `x_1..x_n` as one number with
/// `x_1` most significant. `None` proves `φ` has no unifier at all.
pub fn find_ground_unifier(u: &UnifProblem) -> Result<Option<Substitution>> {
    let p = &u.params;
    let (n, d) = (p.n, p.d);
    p.budget.check_candidates((n * d) as u32)?;
    let target = p.space()?;
    let goal = target.denote(&u.formula)?;
    // A ground image only sees depth, so the induced map sends a chain of
    // depth e to the one whose level-i bits are the depth sets at e - i.
    for code in 0u64..(1u64 << (n * d)) {
        let sets: Vec<u64> = (0..n)
            .map(|j| (code >> (d * (n - 1 - j))) & ((1u64 << d) - 1))
            .collect();
        let head = |depth: usize| {
            sets.iter()
                .fold(0u32, |acc, set| (acc << 1) | ((set >> depth) & 1) as u32)
        };
        let unifies = (0..d).all(|depth| {
            let mut chain = target.root(head(0));
            for e in 1..=depth {
                chain = target.prepend(head(e), chain);
            }
            goal.contains(chain)
        });
        if unifies {
            let images = sets.iter().map(|&set| depth_formula(set, d)).collect();
            return Ok(Some(Substitution::new(1, images)?));
        }
    }
    Ok(None)
}

/// Each image replaced by the canonical formula of its denotation over
/// `s.codomain()` variables.
pub fn canonicalize_sub(s: &Substitution, p: &LogicParams) -> Result<Substitution> {
    let space = ChainSpace::new(s.codomain(), p.d, &p.budget)?;
    let images = s
        .images()
        .iter()
        .map(|f| Ok(space.denote(f)?.to_formula()))
        .collect::<Result<Vec<_>>>()?;
    Substitution::new(s.codomain(), images)
}

/// Pointwise equivalence, both sides read over the larger codomain.
pub fn sub_equivalent(a: &Substitution, b: &Substitution, p: &LogicParams) -> Result<bool> {
    order::check_domains(a, b)?;
    let space = ChainSpace::new(a.codomain().max(b.codomain()), p.d, &p.budget)?;
    for (x, y) in a.images().iter().zip(b.images()) {
        if space.denote(x)? != space.denote(y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides `t ≼ s`: returns `υ` over `s.codomain()` variables with
/// `υ ∘ t ≃ s`, or `None` when no substitution does this.
pub fn more_general(
    t: &Substitution,
    s: &Substitution,
    u: &UnifProblem,
) -> Result<Option<Substitution>> {
    more_general_with_hints(t, s, u, &[])
}

/// [`more_general`], trying each of `hints` as the witness before searching.
pub fn more_general_with_hints(
    t: &Substitution,
    s: &Substitution,
    u: &UnifProblem,
    hints: &[Substitution],
) -> Result<Option<Substitution>> {
    order::check_domains(t, s)?;
    check_maps_problem(t, u)?;
    for hint in hints {
        if order::is_witness(hint, t, s, &u.params)? {
            return Ok(Some(hint.clone()));
        }
    }
    order::search_witness(t, s, &u.params)
}

/// Per-variable chain masks of a substitution over `n` variables whose
/// images are sets of width-`n` chains; bit `c` of `masks[j]` says chain `c`
/// satisfies the image of `x_{j+1}`.
type Masks = Vec<u64>;

fn masks_of_code(code: u64, chains: usize, n: usize) -> Masks {
    let all = (1u64 << chains) - 1;
    (0..n)
        .map(|j| (code >> (chains * (n - 1 - j))) & all)
        .collect()
}

fn unifies_masks(space: &ChainSpace, masks: &[u64], goal: &[bool]) -> bool {
    let n = masks.len();
    let mut table: Vec<u32> = Vec::with_capacity(space.len());
    for a in 0..space.len() as u32 {
        let head = masks.iter().enumerate().fold(0u32, |acc, (j, m)| {
            acc | (((m >> a) & 1) as u32) << (n - 1 - j)
        });
        let tail = space.suffix(a);
        let image = if tail == crate::chains::NO_SUFFIX {
            space.root(head)
        } else {
            space.prepend(head, table[tail as usize])
        };
        if !goal[image as usize] {
            return false;
        }
        table.push(image);
    }
    true
}

fn signature_of_masks(space: &ChainSpace, masks: &[u64]) -> Vec<u64> {
    (0..space.len())
        .map(|c| {
            masks
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, m)| acc | ((m >> c) & 1) << i)
        })
        .collect()
}

fn sub_of_masks(space: &ChainSpace, masks: &[u64]) -> Result<Substitution> {
    Substitution::new(
        space.width(),
        masks
            .iter()
            .map(|&m| space.from_mask(m).to_formula())
            .collect(),
    )
}

fn masks_of_sub(space: &ChainSpace, s: &Substitution) -> Result<Masks> {
    s.images()
        .iter()
        .map(|f| Ok(space.denote(f)?.mask()))
        .collect()
}

/// Every canonical substitution over `n` variables unifying `φ`, as chain
/// masks, in the fixed order: images read as one number with `x_1` most
/// significant.
fn canonical_unifiers(u: &UnifProblem, space: &ChainSpace) -> Result<Vec<Masks>> {
    let p = &u.params;
    let chains = space.len();
    let log2 = chains.saturating_mul(p.n);
    p.budget
        .check_candidates(log2.min(u32::MAX as usize) as u32)?;
    let goal_set = space.denote(&u.formula)?;
    let goal: Vec<bool> = (0..chains as u32).map(|c| goal_set.contains(c)).collect();
    let total = 1u64 << log2;
    let threads = p.threads.max(1) as u64;
    let chunk = total.div_ceil(threads);
    let scan = |range: std::ops::Range<u64>| -> Vec<Masks> {
        range
            .map(|code| masks_of_code(code, chains, p.n))
            .filter(|masks| unifies_masks(space, masks, &goal))
            .collect()
    };
    if threads == 1 {
        return Ok(scan(0..total));
    }
    let parts = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let range = (t * chunk).min(total)..((t + 1) * chunk).min(total);
                scope.spawn(move || scan(range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan thread panicked"))
            .collect::<Vec<_>>()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// A most general unifier over `n` variables, or `None` when `φ` has no
/// unifier.
///
/// Every unifier is dominated by a canonical one over `n` variables, so the
/// canonical unifiers form a complete set. They are folded in the fixed
/// order: a unifier already dominated by the current one is skipped, and
/// otherwise the two are merged by [`filter_combine`] and brought back to
/// `n` variables by [`reduce_unifier`]. Among the canonical unifiers at least
/// as general as the outcome, the one with the shortest simplified images is
/// returned, earliest in the fixed order on ties.
pub fn mgu(u: &UnifProblem) -> Result<Option<Substitution>> {
    let space = u.params.space()?;
    let unifiers = canonical_unifiers(u, &space)?;
    let Some(first) = unifiers.first() else {
        return Ok(None);
    };
    let mut current = first.clone();
    let mut current_signature = signature_of_masks(&space, &current);
    for next in &unifiers[1..] {
        let wanted = signature_of_masks(&space, next);
        if order::witness_table(&space, &space, &wanted, &current_signature).is_some() {
            continue;
        }
        let combined = filter_combine(
            &sub_of_masks(&space, &current)?,
            &sub_of_masks(&space, next)?,
            u,
        )?;
        let reduced = reduce_unifier(&combined.mu, u)?;
        current = masks_of_sub(&space, &reduced.tau)?;
        current_signature = signature_of_masks(&space, &current);
    }
    // Every unifier dominating the fold's result is most general as well;
    // report the one with the shortest simplified images, earliest on ties.
    let mut best: Option<(usize, Vec<Formula>)> = None;
    for candidate in &unifiers {
        let have = signature_of_masks(&space, candidate);
        if order::witness_table(&space, &space, &current_signature, &have).is_none() {
            continue;
        }
        let images: Vec<Formula> = candidate
            .iter()
            .map(|&m| {
                let set = space.from_mask(m);
                let pretty = simplify(&set);
                debug_assert_eq!(space.denote(&pretty).ok().as_ref(), Some(&set));
                pretty
            })
            .collect();
        let size = images.iter().map(Formula::size).sum();
        if best.as_ref().is_none_or(|(smallest, _)| size < *smallest) {
            best = Some((size, images));
        }
    }
    let (_, images) = best.expect("the fold's result dominates itself");
    Ok(Some(Substitution::new(u.params.n, images)?))
}

/// Whether every unifier of `premise` also unifies `conclusion`: vacuously
/// when `premise` has none, otherwise iff the most general unifier does.
pub fn admissible(premise: &Formula, conclusion: &Formula, p: &LogicParams) -> Result<bool> {
    conclusion.check_width(p.n)?;
    let u = UnifProblem::new(premise.clone(), *p)?;
    if find_ground_unifier(&u)?.is_none() {
        return Ok(true);
    }
    let best = mgu(&u)?.expect("a ground unifier exists");
    let instance = substitute(&best, conclusion)?;
    Ok(p.space()?.denote(&instance)?.is_full())
}
