//! Short formulas for denotations.
//!
//! A cube fixes some variables at each of the first `e + 1` levels of a chain
//! and requires depth exactly `e` or at least `e`. Starting from one exact
//! cube per member, each cube is greedily widened while it stays inside the
//! denotation, then cubes covered by the others are dropped. The result
//! always denotes exactly the input set.

use crate::chains::{ChainSpace, Denotation, NO_SUFFIX};
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cube {
    /// `levels[i][j]` constrains `x_{j+1}` at level `i`.
    levels: Vec<Vec<Option<bool>>>,
    exact: bool,
}

impl Cube {
    fn of_chain(space: &ChainSpace, index: u32) -> Self {
        let c = space.chain(index);
        Cube {
            levels: (0..=c.depth())
                .map(|i| (1..=c.width()).map(|j| Some(c.bit(i, j))).collect())
                .collect(),
            exact: true,
        }
    }

    fn matches(&self, space: &ChainSpace, index: u32) -> bool {
        let depth = space.depth(index);
        let last = self.levels.len() - 1;
        if depth < last || (self.exact && depth != last) {
            return false;
        }
        let mut cur = index;
        for level in &self.levels {
            let ok = level
                .iter()
                .enumerate()
                .all(|(j, lit)| lit.is_none_or(|b| space.head_bit(cur, j + 1) == b));
            if !ok {
                return false;
            }
            cur = space.suffix(cur);
            if cur == NO_SUFFIX {
                break;
            }
        }
        true
    }

    fn set(&self, space: &ChainSpace) -> Denotation {
        space.from_indices((0..space.len() as u32).filter(|&c| self.matches(space, c)))
    }

    fn to_formula(&self) -> Formula {
        let literals = |level: &[Option<bool>]| -> Vec<Formula> {
            level
                .iter()
                .enumerate()
                .filter_map(|(j, lit)| lit.map(|b| Formula::signed(Formula::Var(j + 1), b)))
                .collect()
        };
        let last = self.levels.len() - 1;
        let mut parts = literals(&self.levels[last]);
        if self.exact {
            parts.push(Formula::boxed(Formula::Falsum));
        }
        let mut inner = if parts.is_empty() && last == 0 {
            Formula::top()
        } else {
            Formula::conjunction(parts)
        };
        let mut inner_is_top = inner == Formula::top();
        for level in self.levels[..last].iter().rev() {
            let step = if inner_is_top {
                Formula::diamond(Formula::top())
            } else {
                Formula::diamond(inner)
            };
            let mut parts = literals(level);
            parts.push(step);
            inner = Formula::conjunction(parts);
            inner_is_top = false;
        }
        inner
    }
}

/// A short formula denoting exactly `d`.
pub fn simplify(d: &Denotation) -> Formula {
    let space = d.space();
    if d.is_empty() {
        return Formula::Falsum;
    }
    if d.is_full() {
        return Formula::top();
    }
    let fits = |cube: &Cube| cube.set(space).is_subset(d);
    let mut cubes: Vec<Cube> = Vec::new();
    for member in d.indices() {
        if cubes.iter().any(|c| c.matches(space, member)) {
            continue;
        }
        let mut cube = Cube::of_chain(space, member);
        loop {
            let before = cube.clone();
            if cube.exact {
                cube.exact = false;
                if !fits(&cube) {
                    cube.exact = true;
                }
            }
            while !cube.exact
                && cube.levels.len() > 1
                && cube
                    .levels
                    .last()
                    .is_some_and(|l| l.iter().all(Option::is_none))
            {
                let dropped = cube.levels.pop().expect("more than one level");
                if !fits(&cube) {
                    cube.levels.push(dropped);
                    break;
                }
            }
            for i in 0..cube.levels.len() {
                for j in 0..space.width() {
                    if let Some(b) = cube.levels[i][j] {
                        cube.levels[i][j] = None;
                        if !fits(&cube) {
                            cube.levels[i][j] = Some(b);
                        }
                    }
                }
            }
            if cube == before {
                break;
            }
        }
        cubes.push(cube);
    }
    // Drop cubes that the others already cover, latest first.
    let sets: Vec<Denotation> = cubes.iter().map(|c| c.set(space)).collect();
    let mut keep = vec![true; cubes.len()];
    for i in (0..cubes.len()).rev() {
        let others = (0..cubes.len())
            .filter(|&j| j != i && keep[j])
            .fold(space.empty(), |acc, j| acc.union(&sets[j]));
        if sets[i].is_subset(&others) {
            keep[i] = false;
        }
    }
    Formula::disjunction(
        cubes
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(c, _)| c.to_formula()),
    )
}
