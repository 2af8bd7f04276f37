//! Depth-respecting maps between chain spaces.
//!
//! A `d`-`(k,n)`-morphism sends `CHA_d^k` to `CHA_d^n` so that a chain has a
//! suffix exactly when its image does, and the image of the suffix is the
//! suffix of the image. A substitution `σ` induces one such map `g`; the
//! staged construction [`build_f`] turns `g` into a surjective morphism that
//! refines it.

mod surjection;

use std::fmt;

use crate::chains::{Chain, ChainSpace, LogicParams, NO_SUFFIX};
use crate::formula::Substitution;
use crate::{Error, Result};

pub use surjection::quotient_surjection;

/// A total map from a width-`k` chain space to a width-`n` chain space of the
/// same bound, stored as a table over the fixed source order.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainSpace,
    target: ChainSpace,
    table: Vec<u32>,
}

impl ChainMap {
    pub fn new(source: ChainSpace, target: ChainSpace, table: Vec<u32>) -> Result<Self> {
        if source.bound() != target.bound() {
            return Err(Error::Arity(format!(
                "chain spaces have bounds {} and {}",
                source.bound(),
                target.bound()
            )));
        }
        if table.len() != source.len() {
            return Err(Error::Arity(format!(
                "table has {} entries for {} source chains",
                table.len(),
                source.len()
            )));
        }
        if table.iter().any(|&t| t as usize >= target.len()) {
            return Err(Error::Arity(
                "table names a chain outside the target".into(),
            ));
        }
        Ok(ChainMap {
            source,
            target,
            table,
        })
    }

    /// The identity on `space`.
    pub fn identity(space: &ChainSpace) -> Self {
        ChainMap {
            source: space.clone(),
            target: space.clone(),
            table: (0..space.len() as u32).collect(),
        }
    }

    pub fn source(&self) -> &ChainSpace {
        &self.source
    }

    pub fn target(&self) -> &ChainSpace {
        &self.target
    }

    /// Source width.
    pub fn k(&self) -> usize {
        self.source.width()
    }

    /// Target width.
    pub fn n(&self) -> usize {
        self.target.width()
    }

    /// Shared bound.
    pub fn d(&self) -> usize {
        self.source.bound()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, index: u32) -> u32 {
        self.table[index as usize]
    }

    pub fn apply_chain(&self, c: &Chain) -> Result<Chain> {
        Ok(self.target.chain(self.apply(self.source.index_of(c)?)))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &t in &self.table {
            hit[t as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `self(a) = self(b)` implies `other(a) = other(b)`.
    pub fn refines(&self, other: &ChainMap) -> bool {
        assert_eq!(self.source, other.source, "maps over different sources");
        let mut seen = vec![u32::MAX; self.target.len()];
        self.table.iter().zip(&other.table).all(|(&mine, &theirs)| {
            let slot = &mut seen[mine as usize];
            if *slot == u32::MAX {
                *slot = theirs;
            }
            *slot == theirs
        })
    }

    /// `(source, image)` chain pairs in source order.
    pub fn pairs(&self) -> Vec<(Chain, Chain)> {
        (0..self.source.len() as u32)
            .map(|i| (self.source.chain(i), self.target.chain(self.apply(i))))
            .collect()
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "ChainMap(k={}, n={}, d={})",
            self.k(),
            self.n(),
            self.d()
        )
    }
}

/// Both the forward and the backward condition at every source chain.
pub fn check_morphism(m: &ChainMap) -> bool {
    (0..m.source.len() as u32).all(|a| {
        let image = m.apply(a);
        let (tail, image_tail) = (m.source.suffix(a), m.target.suffix(image));
        match (tail == NO_SUFFIX, image_tail == NO_SUFFIX) {
            (true, true) => true,
            (false, false) => m.apply(tail) == image_tail,
            _ => false,
        }
    })
}

/// Whether the hypotheses determining `m(beta) = gamma` hold: `m(beta)` has
/// level 0 equal to that of `gamma`, and `beta` has a suffix exactly when
/// `gamma` does, with `m` sending the one to the other. Errors with
/// [`Error::NotMorphism`] if the hypotheses hold but `m(beta) ≠ gamma`.
pub fn determination_check(m: &ChainMap, beta: &Chain, gamma: &Chain) -> Result<bool> {
    let b = m.source.index_of(beta)?;
    let c = m.target.index_of(gamma)?;
    let image = m.apply(b);
    let level_zero = m.target.head(image) == m.target.head(c);
    let tails = match (m.source.suffix(b), m.target.suffix(c)) {
        (NO_SUFFIX, NO_SUFFIX) => true,
        (NO_SUFFIX, _) | (_, NO_SUFFIX) => false,
        (bt, ct) => m.apply(bt) == ct,
    };
    let hypotheses = level_zero && tails;
    if hypotheses && image != c {
        return Err(Error::NotMorphism);
    }
    Ok(hypotheses)
}

/// The map `g` induced by `s`: `g(α)` has the depth of `α`, and bit `j` of its
/// level `i` is set iff the `i`-th suffix of `α` satisfies `s(x_j)`.
///
/// `p.n` must be the domain of `s`; chains are taken over `s.codomain()`.
pub fn build_g(s: &Substitution, p: &LogicParams) -> Result<ChainMap> {
    if s.domain() != p.n {
        return Err(Error::Arity(format!(
            "substitution maps {} variable(s) but the problem has {}",
            s.domain(),
            p.n
        )));
    }
    let source = ChainSpace::new(s.codomain(), p.d, &p.budget)?;
    let target = ChainSpace::new(s.domain(), p.d, &p.budget)?;
    let images = s
        .images()
        .iter()
        .map(|f| source.denote(f))
        .collect::<Result<Vec<_>>>()?;
    let table = induced_table(&source, &target, &images);
    ChainMap::new(source, target, table)
}

/// The table of the map induced by semantic images: `images[j]` is the set
/// of source chains satisfying the image of `x_{j+1}`, and `target` has width
/// `images.len()`.
pub(crate) fn induced_table(
    source: &ChainSpace,
    target: &ChainSpace,
    images: &[crate::chains::Denotation],
) -> Vec<u32> {
    let n = images.len();
    debug_assert_eq!(target.width(), n);
    let mut table: Vec<u32> = Vec::with_capacity(source.len());
    for a in 0..source.len() as u32 {
        let head = images.iter().enumerate().fold(0u32, |acc, (j, v)| {
            acc | ((v.contains(a) as u32) << (n - 1 - j))
        });
        let tail = source.suffix(a);
        // Depth-major order puts every suffix before its extensions.
        table.push(if tail == NO_SUFFIX {
            target.root(head)
        } else {
            target.prepend(head, table[tail as usize])
        });
    }
    table
}

/// One fiber of the staged construction at depth `d' ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// `δ`, a width-`n` chain of depth `d' - 1`.
    pub delta: u32,
    /// `S(δ)`: depth-`d'` sources whose suffix lands on `δ`, in order.
    pub sources: Vec<u32>,
    /// `T(δ)`: depth-`d'` targets with suffix `δ`, in order.
    pub targets: Vec<u32>,
}

/// The intermediate choices of [`build_f`], all resolved by least elements.
#[derive(Debug, Clone)]
pub struct FTrace {
    pub f: ChainMap,
    /// `U`: images of the depth-0 sources under `g`.
    pub image_zero: Vec<u32>,
    /// The section `h` on `U`, as `(u, least preimage)` pairs.
    pub section: Vec<(u32, u32)>,
    /// `S`: depth-0 sources sent onto the depth-0 targets missing from `U`.
    pub spare: Vec<u32>,
    pub fibers: Vec<Fiber>,
}

/// A surjective morphism refining `g`, built depth by depth.
pub fn build_f(g: &ChainMap) -> Result<ChainMap> {
    Ok(build_f_traced(g)?.f)
}

/// [`build_f`] together with the choices it made.
pub fn build_f_traced(g: &ChainMap) -> Result<FTrace> {
    let (source, target) = (g.source(), g.target());
    if g.k() < g.n() {
        return Err(Error::Arity(format!(
            "the staged construction needs k >= n, got k={} and n={}",
            g.k(),
            g.n()
        )));
    }
    let mut table = vec![u32::MAX; source.len()];

    let zero_sources = source.depth_range(0);
    let mut first_preimage = vec![u32::MAX; target.depth_range(0).len()];
    for a in zero_sources.clone() {
        let slot = &mut first_preimage[g.apply(a) as usize];
        if *slot == u32::MAX {
            *slot = a;
        }
    }
    let image_zero: Vec<u32> = (0..first_preimage.len() as u32)
        .filter(|&u| first_preimage[u as usize] != u32::MAX)
        .collect();
    let section: Vec<(u32, u32)> = image_zero
        .iter()
        .map(|&u| (u, first_preimage[u as usize]))
        .collect();
    let missing: Vec<u32> = (0..first_preimage.len() as u32)
        .filter(|&u| first_preimage[u as usize] == u32::MAX)
        .collect();
    let representatives: Vec<u32> = section.iter().map(|&(_, a)| a).collect();
    let spare: Vec<u32> = zero_sources
        .clone()
        .filter(|a| !representatives.contains(a))
        .take(missing.len())
        .collect();
    debug_assert_eq!(
        spare.len(),
        missing.len(),
        "k >= n leaves enough spare chains"
    );
    for a in zero_sources {
        table[a as usize] = g.apply(a);
    }
    for (&a, &u) in spare.iter().zip(&missing) {
        table[a as usize] = u;
    }

    let mut fibers = Vec::new();
    for depth in 1..source.bound() {
        let previous = target.depth_range(depth - 1);
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); previous.len()];
        for b in source.depth_range(depth) {
            let delta = table[source.suffix(b) as usize];
            buckets[(delta - previous.start) as usize].push(b);
        }
        for (offset, sources) in buckets.into_iter().enumerate() {
            let delta = previous.start + offset as u32;
            let targets: Vec<u32> = (0..1u32 << target.width())
                .map(|head| target.prepend(head, delta))
                .collect();
            let keys: Vec<u32> = sources.iter().map(|&b| g.apply(b)).collect();
            let local = quotient_surjection(&keys, targets.len())?;
            for (&b, &t) in sources.iter().zip(&local) {
                table[b as usize] = targets[t];
            }
            fibers.push(Fiber {
                delta,
                sources,
                targets,
            });
        }
    }
    Ok(FTrace {
        f: ChainMap::new(source.clone(), target.clone(), table)?,
        image_zero,
        section,
        spare,
        fibers,
    })
}
