//! Strategies and brute-force oracles shared by the property suites.

#![allow(dead_code)]

use alt1_unify::chains::{satisfies, ChainSpace, LogicParams};
use alt1_unify::formula::{compose_subs, substitute, Formula, Substitution};
use alt1_unify::Result;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn params(n: usize, d: usize) -> LogicParams {
    LogicParams::new(n, d).unwrap()
}

/// Formulas over `x_1..x_vars` built from the core connectives and sugar.
pub fn arb_formula(vars: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Falsum),
        Just(Formula::top()),
        (1..=vars).prop_map(Formula::Var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

/// Substitutions for `x_1..x_n` with images over `x_1..x_k`.
pub fn arb_substitution(n: usize, k: usize) -> impl Strategy<Value = Substitution> {
    proptest::collection::vec(arb_formula(k), n)
        .prop_map(move |images| Substitution::new(k, images).unwrap())
}

/// A seeded generator for the `rand`-based helpers.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Validity of `f` checked chain by chain with direct satisfaction.
pub fn valid_by_satisfaction(f: &Formula, space: &ChainSpace) -> bool {
    space.chains().all(|c| satisfies(&c, f).unwrap())
}

/// `s(φ)` valid, computed on the substituted formula itself.
pub fn unifies_syntactically(s: &Substitution, phi: &Formula, d: usize) -> Result<bool> {
    let instance = substitute(s, phi)?;
    let space = ChainSpace::new(s.codomain(), d, &Default::default())?;
    Ok(valid_by_satisfaction(&instance, &space))
}

/// Every substitution over `l` variables into `k`, images ranging over all
/// chain sets of `CHA_d^k`. Only for tiny spaces.
pub fn all_semantic_substitutions(l: usize, k: usize, d: usize) -> Vec<Substitution> {
    let space = params(k, d).space().unwrap();
    let sets = 1u64 << space.len();
    let total = sets.pow(l as u32);
    (0..total)
        .map(|mut code| {
            let images = (0..l)
                .map(|_| {
                    let mask = code % sets;
                    code /= sets;
                    space.from_mask(mask).to_formula()
                })
                .collect();
            Substitution::new(k, images).unwrap()
        })
        .collect()
}

/// Brute-force `t ≼ s`: some `υ` with images over `s.codomain()` variables
/// makes `υ ∘ t` pointwise equivalent to `s`.
pub fn more_general_by_enumeration(t: &Substitution, s: &Substitution, d: usize) -> bool {
    let space = params(s.codomain(), d).space().unwrap();
    let wanted: Vec<_> = s
        .images()
        .iter()
        .map(|f| space.denote(f).unwrap())
        .collect();
    all_semantic_substitutions(t.codomain(), s.codomain(), d)
        .iter()
        .any(|upsilon| {
            let composed = compose_subs(upsilon, t).unwrap();
            composed
                .images()
                .iter()
                .zip(&wanted)
                .all(|(f, w)| &space.denote(f).unwrap() == w)
        })
}

/// Brute-force existence of a surjection from `0..classes.len()` onto
/// `0..target` merging only equal labels.
pub fn surjection_exists(classes: &[usize], target: usize) -> bool {
    fn assign(i: usize, classes: &[usize], target: usize, f: &mut Vec<usize>) -> bool {
        if i == classes.len() {
            let mut hit = vec![false; target];
            f.iter().for_each(|&t| hit[t] = true);
            return hit.into_iter().all(|h| h);
        }
        for t in 0..target {
            let clash = (0..i).any(|j| f[j] == t && classes[j] != classes[i]);
            if !clash {
                f.push(t);
                if assign(i + 1, classes, target, f) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    if classes.is_empty() || target == 0 {
        return false;
    }
    assign(0, classes, target, &mut Vec::new())
}
