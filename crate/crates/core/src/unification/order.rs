use crate::chains::{ChainSpace, Denotation, LogicParams, NO_SUFFIX};
use crate::formula::Substitution;
use crate::morphisms::induced_table;
use crate::{BudgetError, Error, Result};

/// For each chain of `space`, the bitmask of the sets in `sets` containing it.
pub(crate) fn signatures(space: &ChainSpace, sets: &[Denotation]) -> Vec<u64> {
    (0..space.len() as u32)
        .map(|c| {
            sets.iter()
                .enumerate()
                .fold(0u64, |acc, (i, v)| acc | ((v.contains(c) as u64) << i))
        })
        .collect()
}

fn denote_images(space: &ChainSpace, s: &Substitution) -> Result<Vec<Denotation>> {
    s.images().iter().map(|f| space.denote(f)).collect()
}

/// Whether `hint ∘ general ≃ specific`, compared over the larger codomain.
pub(crate) fn is_witness(
    hint: &Substitution,
    general: &Substitution,
    specific: &Substitution,
    p: &LogicParams,
) -> Result<bool> {
    if hint.domain() != general.codomain() {
        return Ok(false);
    }
    let width = hint.codomain().max(specific.codomain());
    let source = ChainSpace::new(width, p.d, &p.budget)?;
    let middle = ChainSpace::new(hint.domain(), p.d, &p.budget)?;
    let hint_images = denote_images(&source, hint)?;
    let g = induced_table(&source, &middle, &hint_images);
    let wanted = signatures(&source, &denote_images(&source, specific)?);
    let have = signatures(&middle, &denote_images(&middle, general)?);
    Ok(g.iter()
        .zip(&wanted)
        .all(|(&image, &w)| have[image as usize] == w))
}

/// Searches `υ` from `general.codomain()` variables into `specific.codomain()`
/// variables with `υ ∘ general ≃ specific`.
///
/// A candidate `υ` acts on chains through its induced map, so it is fixed by
/// the level-0 bits `b(α)` it assigns to every chain `α`; the image of `α` is
/// then `b(α)` followed by the image of its suffix. The requirement is local
/// (the image of `α` must satisfy `general(x_i)` exactly when `α` satisfies
/// `specific(x_i)`), and the chains form a forest under the suffix relation,
/// so feasibility is decided exactly by one pass from the deepest chains up,
/// and the least witness is read off top-down.
pub(crate) fn search_witness(
    general: &Substitution,
    specific: &Substitution,
    p: &LogicParams,
) -> Result<Option<Substitution>> {
    let (k, l) = (specific.codomain(), general.codomain());
    let source = ChainSpace::new(k, p.d, &p.budget)?;
    let middle = ChainSpace::new(l, p.d, &p.budget)?;
    let states = (0..p.d)
        .map(|e| source.depth_range(e).len() as u128 * middle.depth_range(e).len() as u128)
        .max()
        .unwrap_or(0);
    if states > p.budget.max_candidates as u128 {
        return Err(BudgetError::Candidates {
            required_log2: 128 - states.leading_zeros(),
            cap: p.budget.max_candidates,
        }
        .into());
    }
    let wanted = signatures(&source, &denote_images(&source, specific)?);
    let have = signatures(&middle, &denote_images(&middle, general)?);
    let Some(image) = witness_table(&source, &middle, &wanted, &have) else {
        return Ok(None);
    };
    let images = (1..=l)
        .map(|j| {
            let set = source.from_indices(
                (0..source.len() as u32).filter(|&a| middle.head_bit(image[a as usize], j)),
            );
            set.to_formula()
        })
        .collect();
    Ok(Some(Substitution::new(k, images)?))
}

pub(crate) fn check_domains(a: &Substitution, b: &Substitution) -> Result<()> {
    if a.domain() != b.domain() {
        return Err(Error::Arity(format!(
            "substitutions map {} and {} variables",
            a.domain(),
            b.domain()
        )));
    }
    Ok(())
}

/// The least induced map `source → middle` sending every chain to one with
/// the same signature, if any exists. Signatures come from [`signatures`].
pub(crate) fn witness_table(
    source: &ChainSpace,
    middle: &ChainSpace,
    wanted: &[u64],
    have: &[u64],
) -> Option<Vec<u32>> {
    let bound = source.bound();
    let (k, l) = (source.width(), middle.width());
    let heads_k = 1u32 << k;
    let heads_l = 1u32 << l;
    // feasible[e][(α - start_k) * |L_e| + (γ - start_l)] for chains of depth e.
    let mut feasible: Vec<Vec<bool>> = vec![Vec::new(); bound];
    for e in (0..bound).rev() {
        let (ks, ls) = (source.depth_range(e), middle.depth_range(e));
        let width = ls.len();
        let mut table = vec![false; ks.len() * width];
        for a in ks.clone() {
            for c in ls.clone() {
                let mut ok = wanted[a as usize] == have[c as usize];
                if ok && e + 1 < bound {
                    let below = &feasible[e + 1];
                    let (ks1, ls1) = (source.depth_range(e + 1), middle.depth_range(e + 1));
                    let width1 = ls1.len();
                    ok = (0..heads_k).all(|h| {
                        let child = source.prepend(h, a) - ks1.start;
                        (0..heads_l).any(|b| {
                            let image = middle.prepend(b, c) - ls1.start;
                            below[child as usize * width1 + image as usize]
                        })
                    });
                }
                table[(a - ks.start) as usize * width + (c - ls.start) as usize] = ok;
            }
        }
        feasible[e] = table;
    }

    let mut image = vec![0u32; source.len()];
    for a in 0..source.len() as u32 {
        let e = source.depth(a);
        let ls = middle.depth_range(e);
        let row = (a - source.depth_range(e).start) as usize * ls.len();
        let tail = source.suffix(a);
        image[a as usize] = (0..heads_l)
            .map(|b| {
                if tail == NO_SUFFIX {
                    middle.root(b)
                } else {
                    middle.prepend(b, image[tail as usize])
                }
            })
            .find(|&c| feasible[e][row + (c - ls.start) as usize])?;
    }
    Some(image)
}
