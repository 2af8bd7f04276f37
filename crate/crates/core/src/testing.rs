//! Random formulas, substitutions and chain sets for property suites.

use rand::Rng;

use crate::chains::{ChainSpace, Denotation};
use crate::formula::{Formula, Substitution};

/// A random formula over `x_1..x_vars` with syntax trees at most `height`
/// deep. Every core connective and the usual sugar can appear.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, vars: usize, height: usize) -> Formula {
    if height == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..6) {
            0 => Formula::Falsum,
            1 => Formula::top(),
            _ => Formula::Var(rng.gen_range(1..=vars)),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, vars, height - 1);
    match rng.gen_range(0..7) {
        0 => Formula::neg(sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::and(sub(rng), sub(rng)),
        3 => Formula::boxed(sub(rng)),
        4 => Formula::diamond(sub(rng)),
        5 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// A random substitution for `x_1..x_n` with images over `x_1..x_k`.
pub fn random_substitution<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    height: usize,
) -> Substitution {
    let images = (0..n).map(|_| random_formula(rng, k, height)).collect();
    Substitution::new(k, images).expect("images are generated within width k")
}

/// A uniformly random subset of `space`.
pub fn random_denotation<R: Rng + ?Sized>(rng: &mut R, space: &ChainSpace) -> Denotation {
    space.from_indices((0..space.len() as u32).filter(|_| rng.gen_bool(0.5)))
}

/// A substitution over `k` variables whose images are uniformly random
/// chain sets, written as canonical formulas.
pub fn random_semantic_substitution<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    space: &ChainSpace,
) -> Substitution {
    let images = (0..n)
        .map(|_| random_denotation(rng, space).to_formula())
        .collect();
    Substitution::new(space.width(), images).expect("canonical images fit the space")
}
