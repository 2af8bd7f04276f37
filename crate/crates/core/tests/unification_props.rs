//! Properties of unification:
//! - the unifier test agrees with validity of the substituted formula;
//! - the `≼` decision agrees with brute-force enumeration of witnesses;
//! - ground search finds a unifier exactly when one exists;
//! - the reduction yields a unifier `τ` and a `ν` with `ν ∘ τ ≃ σ`;
//! - the merged unifier is below both inputs via its two specializations;
//! - padding a codomain changes nothing up to `≼` in both directions;
//! - the most general unifier dominates every canonical unifier.

mod common;

use alt1_unify::chains::{char_formula, valid, LogicParams};
use alt1_unify::formula::{compose_subs, parse, substitute, Formula, Substitution};
use alt1_unify::morphisms::build_g;
use alt1_unify::testing::{random_denotation, random_formula, random_substitution};
use alt1_unify::unification::{
    admissible, canonicalize_sub, filter_combine, find_ground_unifier, is_unifier, mgu,
    more_general, more_general_with_hints, reduce_unifier, sub_equivalent, UnifProblem,
};
use common::{
    all_semantic_substitutions, more_general_by_enumeration, params, rng, unifies_syntactically,
};
use proptest::prelude::*;
use rand::Rng;

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn sub(text: &str) -> Substitution {
    Substitution::parse(text).unwrap()
}

/// A problem that `s` unifies: its denotation is the image of the map `s`
/// induces, plus random extra chains.
fn problem_unified_by<R: Rng>(r: &mut R, s: &Substitution, p: &LogicParams) -> UnifProblem {
    let g = build_g(s, p).unwrap();
    let target = g.target().clone();
    let extra = random_denotation(r, &target);
    let image = target.from_indices(g.table().iter().copied());
    UnifProblem::new(image.union(&extra).to_formula(), *p).unwrap()
}

#[test]
fn unifier_test_agrees_with_substitution() {
    let mut r = rng(21);
    for d in 2..=3 {
        for n in 1..=2 {
            let p = params(n, d);
            for _ in 0..80 {
                let phi = random_formula(&mut r, n, 3);
                let k = r.gen_range(1..=3);
                let s = random_substitution(&mut r, n, k, 3);
                let u = UnifProblem::new(phi.clone(), p).unwrap();
                assert_eq!(
                    is_unifier(&s, &u).unwrap(),
                    unifies_syntactically(&s, &phi, d).unwrap()
                );
            }
        }
    }
}

#[test]
fn generated_problems_are_unified() {
    let mut r = rng(22);
    let p = params(2, 3);
    for _ in 0..50 {
        let s = random_substitution(&mut r, 2, 3, 3);
        let u = problem_unified_by(&mut r, &s, &p);
        assert!(is_unifier(&s, &u).unwrap());
    }
}

#[test]
fn order_agrees_with_enumeration_of_witnesses() {
    let mut r = rng(23);
    let p = params(1, 2);
    let u = UnifProblem::new(Formula::top(), p).unwrap();
    for _ in 0..150 {
        let t = random_substitution(&mut r, 1, 1, 3);
        let s = random_substitution(&mut r, 1, 1, 3);
        let decided = more_general(&t, &s, &u).unwrap();
        assert_eq!(
            decided.is_some(),
            more_general_by_enumeration(&t, &s, 2),
            "{t} vs {s}"
        );
        if let Some(w) = decided {
            assert!(sub_equivalent(&compose_subs(&w, &t).unwrap(), &s, &p).unwrap());
        }
    }
    for _ in 0..12 {
        let t = random_substitution(&mut r, 1, 2, 2);
        let s = random_substitution(&mut r, 1, 1, 3);
        let decided = more_general(&t, &s, &u).unwrap();
        assert_eq!(
            decided.is_some(),
            more_general_by_enumeration(&t, &s, 2),
            "{t} vs {s}"
        );
    }
}

#[test]
fn ground_search_is_sound_and_complete_at_one_variable() {
    for d in 2..=3 {
        let p = params(1, d);
        let space = p.space().unwrap();
        let mut r = rng(24 + d as u64);
        let mut candidates = all_semantic_substitutions(1, 1, d);
        let classes: Vec<u64> = if d == 2 {
            (0..64).collect()
        } else {
            candidates.retain(|_| r.gen_ratio(1, 64));
            (0..200)
                .map(|_| r.gen_range(0..1u64 << space.len()))
                .collect()
        };
        let depth_sets: Vec<Substitution> = (0..1u64 << d)
            .map(|set| Substitution::new(1, vec![space.by_depths(set).to_formula()]).unwrap())
            .collect();
        let ground = Substitution::new(1, vec![Formula::top()]).unwrap();
        for mask in classes {
            let u = UnifProblem::new(space.from_mask(mask).to_formula(), p).unwrap();
            let found = find_ground_unifier(&u).unwrap();
            let mut any = false;
            for s in candidates.iter().filter(|s| is_unifier(s, &u).unwrap()) {
                any = true;
                let grounded = compose_subs(&ground, s).unwrap();
                assert!(is_unifier(&grounded, &u).unwrap());
            }
            let ground_exists = depth_sets
                .iter()
                .any(|g| unifies_syntactically(g, u.formula(), d).unwrap());
            assert_eq!(found.is_some(), ground_exists, "class {mask:b}");
            assert!(ground_exists || !any);
            if let Some(g) = found {
                assert!(is_unifier(&g, &u).unwrap());
                assert!(g.images().iter().all(|i| i.max_var() == 0));
            }
        }
    }
}

#[test]
fn reduction_contract() {
    let mut r = rng(25);
    for d in 2..=3 {
        for n in 1..=2 {
            for k in 1..=3 {
                let p = params(n, d);
                let runs = if k == 3 && d == 3 { 3 } else { 15 };
                for _ in 0..runs {
                    let s = random_substitution(&mut r, n, k, 3);
                    let u = problem_unified_by(&mut r, &s, &p);
                    let w = reduce_unifier(&s, &u).unwrap();
                    assert_eq!(w.tau.codomain(), n);
                    assert!(is_unifier(&w.tau, &u).unwrap());
                    let composed = compose_subs(&w.nu, &w.tau).unwrap();
                    assert!(sub_equivalent(&composed, &s, &p).unwrap(), "{s}");
                    assert!(w.f.refines(&w.g));
                    let psi = random_formula(&mut r, n, 3);
                    let (src, tgt) = (w.f.source(), w.f.target());
                    let s_psi = src
                        .denote(&substitute(&s.padded(src.width()), &psi).unwrap())
                        .unwrap();
                    let tau_psi = tgt.denote(&substitute(&w.tau, &psi).unwrap()).unwrap();
                    for c in 0..tgt.len() as u32 {
                        let fiber: Vec<u32> = (0..src.len() as u32)
                            .filter(|&a| w.f.apply(a) == c)
                            .collect();
                        assert!(
                            fiber
                                .iter()
                                .all(|&a| s_psi.contains(a) == tau_psi.contains(c)),
                            "{psi}"
                        );
                    }
                    let (source, target) = (w.f.source(), w.f.target());
                    for (i, nu_i) in w.nu.images().iter().enumerate() {
                        let set = source.denote(nu_i).unwrap();
                        for b in 0..source.len() as u32 {
                            assert_eq!(set.contains(b), target.head_bit(w.f.apply(b), i + 1));
                        }
                    }
                    for (c, gamma) in target.chains().enumerate() {
                        let fiber = source
                            .denote(&substitute(&w.nu, &char_formula(&gamma)).unwrap())
                            .unwrap();
                        for b in 0..source.len() as u32 {
                            assert_eq!(fiber.contains(b), w.f.apply(b) == c as u32);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reduction_examples() {
    let p = params(1, 2);
    let u = UnifProblem::new(f("x1"), p).unwrap();
    let w = reduce_unifier(&Substitution::new(2, vec![f("x2 | ~x2")]).unwrap(), &u).unwrap();
    assert!(valid(&w.tau.images()[0], &p).unwrap());
    let top = UnifProblem::new(Formula::top(), p).unwrap();
    // With k = n the staged map is a bijection, so τ is `s` relabelled by a
    // chain automorphism: equivalent in both directions of `≼`, not always `≃`.
    let mut relabelled = 0;
    for s in all_semantic_substitutions(1, 1, 2) {
        let w = reduce_unifier(&s, &top).unwrap();
        assert_eq!(
            w.f.table()
                .iter()
                .collect::<std::collections::HashSet<_>>()
                .len(),
            6
        );
        assert!(more_general(&w.tau, &s, &top).unwrap().is_some());
        assert!(more_general(&s, &w.tau, &top).unwrap().is_some());
        if !sub_equivalent(&w.tau, &s, &p).unwrap() {
            relabelled += 1;
        }
    }
    assert!(sub_equivalent(
        &reduce_unifier(&sub("x1:=x1"), &top).unwrap().tau,
        &sub("x1:=x1"),
        &p
    )
    .unwrap());
    assert_eq!(relabelled, 28);
    assert!(reduce_unifier(&sub("x1:=false"), &u).is_err());
}

#[test]
fn filtering_contract() {
    let mut r = rng(26);
    for (n, d) in [(1, 2), (1, 3), (2, 2)] {
        let p = params(n, d);
        for _ in 0..40 {
            let (ks, kt) = (r.gen_range(1..=2), r.gen_range(1..=2));
            let s = random_substitution(&mut r, n, ks, 3);
            let g = build_g(&s, &p).unwrap();
            let image = g.target().from_indices(g.table().iter().copied());
            let t = random_substitution(&mut r, n, kt, 3);
            let gt = build_g(&t, &p).unwrap();
            let both = image.union(&gt.target().from_indices(gt.table().iter().copied()));
            let u = UnifProblem::new(both.to_formula(), p).unwrap();
            let c = filter_combine(&s, &t, &u).unwrap();
            assert!(is_unifier(&c.mu, &u).unwrap());
            let top = compose_subs(&c.lambda_top, &c.mu).unwrap();
            let bottom = compose_subs(&c.lambda_bottom, &c.mu).unwrap();
            assert!(sub_equivalent(&top, &s, &p).unwrap());
            assert!(sub_equivalent(&bottom, &t, &p).unwrap());
            let hinted = more_general_with_hints(
                &c.mu,
                &s.padded(c.mu.codomain()),
                &u,
                std::slice::from_ref(&c.lambda_top),
            )
            .unwrap();
            assert_eq!(hinted.as_ref(), Some(&c.lambda_top));
        }
    }
}

#[test]
fn filtering_rejects_non_unifiers() {
    let u = UnifProblem::new(f("[]x1"), params(1, 2)).unwrap();
    assert!(filter_combine(&sub("x1:=true"), &sub("x1:=false"), &u).is_err());
}

#[test]
fn padding_is_neutral() {
    let mut r = rng(27);
    let p = params(1, 2);
    let u = UnifProblem::new(Formula::top(), p).unwrap();
    for _ in 0..30 {
        let k = r.gen_range(1..=2);
        let s = random_substitution(&mut r, 1, k, 3);
        let padded = s.padded(k + 1);
        let embed = Substitution::new(k + 1, (1..=k).map(Formula::Var).collect()).unwrap();
        let project = Substitution::new(
            k,
            (1..=k)
                .map(Formula::Var)
                .chain(std::iter::once(Formula::top()))
                .collect(),
        )
        .unwrap();
        assert!(sub_equivalent(&compose_subs(&embed, &s).unwrap(), &padded, &p).unwrap());
        assert!(sub_equivalent(&compose_subs(&project, &padded).unwrap(), &s, &p).unwrap());
        assert!(more_general(&s, &padded, &u).unwrap().is_some());
        assert!(more_general(&padded, &s, &u).unwrap().is_some());
    }
}

#[test]
fn mgu_is_a_dominating_unifier_on_random_classes() {
    let p = params(1, 2);
    let space = p.space().unwrap();
    let candidates = all_semantic_substitutions(1, 1, 2);
    let mut r = rng(28);
    for _ in 0..12 {
        let u = UnifProblem::new(random_denotation(&mut r, &space).to_formula(), p).unwrap();
        let Some(best) = mgu(&u).unwrap() else {
            assert!(find_ground_unifier(&u).unwrap().is_none());
            continue;
        };
        assert!(is_unifier(&best, &u).unwrap());
        for v in candidates.iter().filter(|v| is_unifier(v, &u).unwrap()) {
            assert!(more_general_by_enumeration(&best, v, 2), "{best} vs {v}");
        }
    }
}

#[test]
fn mgu_examples() {
    let p = params(1, 2);
    let mgu_of = |text: &str| mgu(&UnifProblem::new(f(text), p).unwrap()).unwrap();
    assert!(sub_equivalent(&mgu_of("x1").unwrap(), &sub("x1:=true"), &p).unwrap());
    assert!(sub_equivalent(&mgu_of("true").unwrap(), &Substitution::identity(1), &p).unwrap());
    assert!(sub_equivalent(&mgu_of("[]x1").unwrap(), &sub("x1:=x1 | []false"), &p).unwrap());
    assert!(mgu_of("x1 & ~x1").is_none());
}

#[test]
fn admissibility_examples() {
    let p = params(1, 2);
    assert!(admissible(&f("x1 & ~x1"), &f("x1"), &p).unwrap());
    assert!(admissible(&f("x1"), &f("[]x1"), &p).unwrap());
    assert!(!admissible(&f("[]x1"), &f("x1"), &p).unwrap());
}

#[test]
fn ordering_examples() {
    let p = params(1, 2);
    let u = UnifProblem::new(Formula::top(), p).unwrap();
    let s = sub("x1:=[]x1 & ~x1");
    assert!(more_general(&Substitution::identity(1), &s, &u)
        .unwrap()
        .is_some());
    assert!(more_general(&sub("x1:=x1 | []false"), &sub("x1:=true"), &u)
        .unwrap()
        .is_some());
    assert!(more_general(&sub("x1:=true"), &sub("x1:=x1"), &u)
        .unwrap()
        .is_none());
    assert!(sub_equivalent(&sub("x1:=true"), &sub("x1:=x1 | ~x1"), &p).unwrap());
    assert!(!sub_equivalent(&sub("x1:=[]false"), &sub("x1:=true"), &p).unwrap());
    let canonical = canonicalize_sub(&sub("x1:=true"), &p).unwrap();
    assert_eq!(
        canonical,
        canonicalize_sub(&sub("x1:=x1 | ~x1"), &p).unwrap()
    );
    assert_eq!(canonicalize_sub(&canonical, &p).unwrap(), canonical);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalization_preserves_classes(seed in any::<u64>(), n in 1usize..=2, k in 1usize..=2) {
        let p = params(n, 2);
        let s = random_substitution(&mut rng(seed), n, k, 3);
        let c = canonicalize_sub(&s, &p).unwrap();
        prop_assert!(sub_equivalent(&c, &s, &p).unwrap());
        prop_assert_eq!(canonicalize_sub(&c, &p).unwrap(), c);
    }

    #[test]
    fn reduced_unifiers_dominate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = params(1, 2);
        let s = random_substitution(&mut r, 1, 2, 3);
        let u = problem_unified_by(&mut r, &s, &p);
        let w = reduce_unifier(&s, &u).unwrap();
        prop_assert!(more_general(&w.tau, &s, &u).unwrap().is_some());
    }
}
