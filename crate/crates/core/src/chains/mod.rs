//! Finite chain semantics.
//!
//! A chain of width `n` and depth `d'` is a sequence of `d' + 1` bit vectors
//! of width `n`; it stands for the pointed linear model whose `i`-th world
//! makes `x_j` true exactly when bit `j` of level `i` is set. Validity in the
//! logic with bound `d` is satisfaction at every chain of depth `< d`, so a
//! formula's meaning is the set of chains satisfying it: a [`Denotation`].
//!
//! All chains of a given width and bound are laid out in one fixed total
//! order (depth first, then the concatenated bit string read with level 0 and
//! `x_1` most significant). [`ChainSpace`] precomputes that layout and every
//! later construction breaks ties against it.

mod kripke;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::formula::Formula;
use crate::{BudgetError, Error, Result};

pub use kripke::{enumerate_det_frames, kripke_valid, DetFrame};

/// Caps on the doubly exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest chain space that may be materialized.
    pub max_chains: usize,
    /// Largest number of candidates an exhaustive search may visit.
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_chains: 1 << 20,
            max_candidates: 1 << 24,
        }
    }
}

impl Budget {
    /// Errors when `2^log2` candidates exceed the cap.
    pub fn check_candidates(&self, log2: u32) -> Result<()> {
        if log2 >= 64 || (1u64 << log2) > self.max_candidates {
            return Err(BudgetError::Candidates {
                required_log2: log2,
                cap: self.max_candidates,
            }
            .into());
        }
        Ok(())
    }
}

/// The variable count `n ≥ 1` and the depth bound `d ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicParams {
    pub n: usize,
    pub d: usize,
    pub budget: Budget,
    /// Worker threads for candidate scans; 1 keeps everything on the caller.
    pub threads: usize,
}

impl LogicParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("need at least one variable".into()));
        }
        if d < 2 {
            return Err(Error::InvalidParams(format!(
                "depth bound must be at least 2, got {d}"
            )));
        }
        Ok(LogicParams {
            n,
            d,
            budget: Budget::default(),
            threads: 1,
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Same bound and budget, different width.
    pub fn with_vars(mut self, n: usize) -> Self {
        assert!(n >= 1);
        self.n = n;
        self
    }

    pub fn space(&self) -> Result<ChainSpace> {
        ChainSpace::new(self.n, self.d, &self.budget)
    }
}

/// Number of chains of width `n` and depth `< d`, saturating at `u128::MAX`.
pub fn chain_count(n: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    for depth in 0..d {
        let bits = n.saturating_mul(depth + 1);
        if bits >= 127 {
            return u128::MAX;
        }
        total = total.saturating_add(1u128 << bits);
    }
    total
}

/// A chain `(α⁰, …, α^{d'})`. Each level is stored as an `n`-bit word with
/// `x_1` in the most significant position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    width: usize,
    levels: Vec<u32>,
}

impl Chain {
    /// Builds a chain from rows of booleans, `rows[i][j - 1]` being `x_j` at
    /// level `i`.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || width == 0 || width > 32 {
            return Err(Error::ChainSyntax {
                text: format!("{rows:?}"),
                reason: "need at least one level of width 1..=32".into(),
            });
        }
        let mut levels = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != width {
                return Err(Error::ChainSyntax {
                    text: format!("{rows:?}"),
                    reason: "levels differ in width".into(),
                });
            }
            levels.push(row.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32));
        }
        Ok(Chain { width, levels })
    }

    /// Parses the text form `[10,01]`: comma-separated levels, level 0
    /// first, each a 0/1 string with `x_1` first.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ChainSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let body = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected `[...]`"))?;
        let rows = body
            .split(',')
            .map(|level| {
                level
                    .trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(bad("levels are 0/1 strings")),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Chain::from_rows(&rows).map_err(|_| bad("levels must share a nonzero width"))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `d'`: number of levels minus one.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Bit `var` (1-indexed) of level `level`.
    pub fn bit(&self, level: usize, var: usize) -> bool {
        assert!((1..=self.width).contains(&var), "variable out of range");
        (self.levels[level] >> (self.width - var)) & 1 == 1
    }

    /// Level `level` as a word, `x_1` most significant.
    pub fn level_word(&self, level: usize) -> u32 {
        self.levels[level]
    }

    /// `(α¹, …, α^{d'})`, or `None` at depth 0.
    pub fn tail(&self) -> Option<Chain> {
        (self.levels.len() > 1).then(|| Chain {
            width: self.width,
            levels: self.levels[1..].to_vec(),
        })
    }
}

impl Ord for Chain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.width, self.levels.len(), &self.levels).cmp(&(
            other.width,
            other.levels.len(),
            &other.levels,
        ))
    }
}

impl PartialOrd for Chain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str("[")?;
        for (i, word) in self.levels.iter().enumerate() {
            if i > 0 {
                out.write_str(",")?;
            }
            write!(out, "{:0width$b}", word, width = self.width)?;
        }
        out.write_str("]")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Chain{self}")
    }
}

/// Drops level 0. Errors on a depth-0 chain.
pub fn suffix(c: &Chain) -> Result<Chain> {
    c.tail().ok_or(Error::NoSuffix)
}

/// Direct satisfaction `c ⊨ f`, clause by clause.
pub fn satisfies(c: &Chain, f: &Formula) -> Result<bool> {
    f.check_width(c.width())?;
    Ok(sat_levels(c.width, &c.levels, f))
}

fn sat_levels(width: usize, levels: &[u32], f: &Formula) -> bool {
    match f {
        Formula::Var(j) => (levels[0] >> (width - j)) & 1 == 1,
        Formula::Falsum => false,
        Formula::Neg(g) => !sat_levels(width, levels, g),
        Formula::Or(a, b) => sat_levels(width, levels, a) || sat_levels(width, levels, b),
        Formula::Box(g) => levels.len() == 1 || sat_levels(width, &levels[1..], g),
    }
}

/// The characteristic formula of `c`: the `n` signed literals of level 0,
/// then `<>` of the tail's characteristic formula, or `[]false` at depth 0.
pub fn char_formula(c: &Chain) -> Formula {
    let literals = (1..=c.width).map(|j| Formula::signed(Formula::Var(j), c.bit(0, j)));
    let rest = match c.tail() {
        Some(tail) => Formula::diamond(char_formula(&tail)),
        None => Formula::boxed(Formula::Falsum),
    };
    Formula::conjunction(literals.chain(std::iter::once(rest)))
}

struct SpaceInner {
    width: usize,
    bound: usize,
    /// `offsets[e]` is the index of the first chain of depth `e`;
    /// `offsets[bound]` is the total.
    offsets: Vec<usize>,
    depth: Vec<u8>,
    suffix: Vec<u32>,
    head: Vec<u32>,
    var_sets: Vec<FixedBitSet>,
    depth_zero: FixedBitSet,
}

/// `CHA_d^n` laid out in the fixed order, with suffix and level-0 tables.
#[derive(Clone)]
pub struct ChainSpace(Arc<SpaceInner>);

pub const NO_SUFFIX: u32 = u32::MAX;

impl ChainSpace {
    pub fn new(width: usize, bound: usize, budget: &Budget) -> Result<Self> {
        if width == 0 || bound == 0 {
            return Err(Error::InvalidParams(format!(
                "chain space needs width and bound at least 1, got {width} and {bound}"
            )));
        }
        let required = chain_count(width, bound);
        if required > budget.max_chains as u128 || required >= u32::MAX as u128 {
            return Err(BudgetError::ChainSpace {
                width,
                depth: bound,
                required,
                cap: budget.max_chains,
            }
            .into());
        }
        let total = required as usize;
        let mut offsets = Vec::with_capacity(bound + 1);
        let mut acc = 0usize;
        for e in 0..bound {
            offsets.push(acc);
            acc += 1usize << (width * (e + 1));
        }
        offsets.push(acc);

        let mut depth = Vec::with_capacity(total);
        let mut suffix = Vec::with_capacity(total);
        let mut head = Vec::with_capacity(total);
        for e in 0..bound {
            let tail_bits = width * e;
            for code in 0..(1usize << (width * (e + 1))) {
                depth.push(e as u8);
                head.push((code >> tail_bits) as u32);
                suffix.push(if e == 0 {
                    NO_SUFFIX
                } else {
                    (offsets[e - 1] + (code & ((1usize << tail_bits) - 1))) as u32
                });
            }
        }
        let var_sets = (1..=width)
            .map(|j| {
                let mut set = FixedBitSet::with_capacity(total);
                for (i, h) in head.iter().enumerate() {
                    if (h >> (width - j)) & 1 == 1 {
                        set.insert(i);
                    }
                }
                set
            })
            .collect();
        let mut depth_zero = FixedBitSet::with_capacity(total);
        depth_zero.insert_range(0..offsets[1]);
        Ok(ChainSpace(Arc::new(SpaceInner {
            width,
            bound,
            offsets,
            depth,
            suffix,
            head,
            var_sets,
            depth_zero,
        })))
    }

    pub fn width(&self) -> usize {
        self.0.width
    }

    pub fn bound(&self) -> usize {
        self.0.bound
    }

    pub fn len(&self) -> usize {
        self.0.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn depth(&self, index: u32) -> usize {
        self.0.depth[index as usize] as usize
    }

    /// Index of the suffix, [`NO_SUFFIX`] at depth 0.
    pub fn suffix(&self, index: u32) -> u32 {
        self.0.suffix[index as usize]
    }

    /// Level-0 word, `x_1` most significant.
    pub fn head(&self, index: u32) -> u32 {
        self.0.head[index as usize]
    }

    /// Whether level 0 of the chain makes `x_var` true.
    pub fn head_bit(&self, index: u32, var: usize) -> bool {
        (self.head(index) >> (self.width() - var)) & 1 == 1
    }

    /// Indices of the chains of depth exactly `depth`.
    pub fn depth_range(&self, depth: usize) -> std::ops::Range<u32> {
        self.0.offsets[depth] as u32..self.0.offsets[depth + 1] as u32
    }

    /// Position of the chain within its depth layer.
    pub fn code(&self, index: u32) -> u64 {
        (index as usize - self.0.offsets[self.depth(index)]) as u64
    }

    /// Index of the chain with level 0 `head` followed by the chain `tail`.
    pub fn prepend(&self, head: u32, tail: u32) -> u32 {
        let e = self.depth(tail) + 1;
        debug_assert!(e < self.bound());
        let code = ((head as usize) << (self.width() * e)) + self.code(tail) as usize;
        (self.0.offsets[e] + code) as u32
    }

    /// Index of the depth-0 chain with level 0 `head`.
    pub fn root(&self, head: u32) -> u32 {
        head
    }

    pub fn chain(&self, index: u32) -> Chain {
        let mut levels = Vec::with_capacity(self.depth(index) + 1);
        let mut cur = index;
        loop {
            levels.push(self.head(cur));
            cur = self.suffix(cur);
            if cur == NO_SUFFIX {
                break;
            }
        }
        Chain {
            width: self.width(),
            levels,
        }
    }

    pub fn index_of(&self, c: &Chain) -> Result<u32> {
        if c.width() != self.width() {
            return Err(Error::Arity(format!(
                "chain {c} has width {} but the space has width {}",
                c.width(),
                self.width()
            )));
        }
        if c.depth() >= self.bound() {
            return Err(Error::Arity(format!(
                "chain {c} has depth {} but the bound is {}",
                c.depth(),
                self.bound()
            )));
        }
        let code = c
            .levels
            .iter()
            .fold(0usize, |acc, &w| (acc << self.width()) | w as usize);
        Ok((self.0.offsets[c.depth()] + code) as u32)
    }

    /// Every chain in the fixed order.
    pub fn chains(&self) -> impl Iterator<Item = Chain> + '_ {
        (0..self.len() as u32).map(move |i| self.chain(i))
    }

    pub fn empty(&self) -> Denotation {
        Denotation {
            space: self.clone(),
            bits: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full(&self) -> Denotation {
        let mut d = self.empty();
        d.bits.insert_range(..);
        d
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(&self, indices: I) -> Denotation {
        let mut d = self.empty();
        for i in indices {
            d.bits.insert(i as usize);
        }
        d
    }

    /// The denotation whose members are the set bits of `mask`; only for
    /// spaces of at most 64 chains.
    pub fn from_mask(&self, mask: u64) -> Denotation {
        assert!(self.len() <= 64, "mask form needs at most 64 chains");
        self.from_indices((0..self.len() as u32).filter(|i| (mask >> i) & 1 == 1))
    }

    /// Chains whose depth lies in `depths` (bit `e` set for depth `e`).
    pub fn by_depths(&self, depths: u64) -> Denotation {
        let mut d = self.empty();
        for e in 0..self.bound() {
            if (depths >> e) & 1 == 1 {
                let range = self.depth_range(e);
                d.bits
                    .insert_range(range.start as usize..range.end as usize);
            }
        }
        d
    }

    /// `{c : c ⊨ f}`, computed with set operations.
    pub fn denote(&self, f: &Formula) -> Result<Denotation> {
        f.check_width(self.width())?;
        Ok(Denotation {
            space: self.clone(),
            bits: self.eval(f),
        })
    }

    fn eval(&self, f: &Formula) -> FixedBitSet {
        match f {
            Formula::Var(j) => self.0.var_sets[j - 1].clone(),
            Formula::Falsum => FixedBitSet::with_capacity(self.len()),
            Formula::Neg(g) => {
                let mut set = self.eval(g);
                set.toggle_range(..);
                set
            }
            Formula::Or(..) => {
                // Canonical forms are long left-nested disjunctions; walk the
                // spine instead of recursing down it.
                let mut rights = Vec::new();
                let mut cur = f;
                while let Formula::Or(a, b) = cur {
                    rights.push(&**b);
                    cur = a;
                }
                let mut acc = self.eval(cur);
                for r in rights.into_iter().rev() {
                    acc.union_with(&self.eval(r));
                }
                acc
            }
            Formula::Box(g) => self.box_of(&self.eval(g)),
        }
    }

    fn box_of(&self, inner: &FixedBitSet) -> FixedBitSet {
        let mut out = self.0.depth_zero.clone();
        for i in self.0.offsets[1]..self.len() {
            if inner.contains(self.0.suffix[i] as usize) {
                out.insert(i);
            }
        }
        out
    }

    /// `{c : c ⊨ x_var}`.
    pub fn var_set(&self, var: usize) -> Denotation {
        Denotation {
            space: self.clone(),
            bits: self.0.var_sets[var - 1].clone(),
        }
    }

    /// The disjunction of characteristic formulas of the members, in order.
    pub fn formula_of(&self, d: &Denotation) -> Formula {
        Formula::disjunction(d.indices().map(|i| char_formula(&self.chain(i))))
    }
}

impl PartialEq for ChainSpace {
    fn eq(&self, other: &Self) -> bool {
        self.width() == other.width() && self.bound() == other.bound()
    }
}

impl Eq for ChainSpace {}

impl fmt::Debug for ChainSpace {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "ChainSpace(width={}, bound={}, chains={})",
            self.width(),
            self.bound(),
            self.len()
        )
    }
}

/// A set of chains of one space: the semantic value of a formula.
#[derive(Clone)]
pub struct Denotation {
    space: ChainSpace,
    bits: FixedBitSet,
}

impl Denotation {
    pub fn space(&self) -> &ChainSpace {
        &self.space
    }

    pub fn contains(&self, index: u32) -> bool {
        self.bits.contains(index as usize)
    }

    pub fn contains_chain(&self, c: &Chain) -> Result<bool> {
        Ok(self.contains(self.space.index_of(c)?))
    }

    pub fn insert(&mut self, index: u32) {
        self.bits.insert(index as usize);
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.space.len()
    }

    /// Member indices in the fixed order.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn members(&self) -> Vec<Chain> {
        self.indices().map(|i| self.space.chain(i)).collect()
    }

    /// Members as sorted chain strings.
    pub fn to_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.members().iter().map(Chain::to_string).collect();
        out.sort();
        out
    }

    pub fn is_subset(&self, other: &Denotation) -> bool {
        self.same_space(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Denotation) -> Denotation {
        self.same_space(other);
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &Denotation) -> Denotation {
        self.same_space(other);
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn complement(&self) -> Denotation {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    /// Members as a bitmask; only for spaces of at most 64 chains.
    pub fn mask(&self) -> u64 {
        assert!(self.space.len() <= 64);
        self.indices().fold(0u64, |acc, i| acc | (1u64 << i))
    }

    /// The canonical formula of this set.
    pub fn to_formula(&self) -> Formula {
        self.space.formula_of(self)
    }

    fn same_space(&self, other: &Denotation) {
        assert_eq!(
            self.space, other.space,
            "denotations over different chain spaces"
        );
    }
}

impl PartialEq for Denotation {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.bits == other.bits
    }
}

impl Eq for Denotation {}

impl Hash for Denotation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.width().hash(state);
        self.space.bound().hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for Denotation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Denotation{:?}", self.to_strings())
    }
}

/// All chains of width `p.n` and depth `< p.d`, in the fixed order.
pub fn enumerate_chains(p: &LogicParams) -> Result<Vec<Chain>> {
    Ok(p.space()?.chains().collect())
}

pub fn denote(f: &Formula, p: &LogicParams) -> Result<Denotation> {
    p.space()?.denote(f)
}

/// The canonical formula of `d`: `false` when empty, otherwise the
/// disjunction of the members' characteristic formulas in the fixed order.
pub fn formula_of_denotation(d: &Denotation) -> Formula {
    d.to_formula()
}

/// Validity in the logic: satisfaction at every chain.
pub fn valid(f: &Formula, p: &LogicParams) -> Result<bool> {
    Ok(denote(f, p)?.is_full())
}

pub fn equivalent(f: &Formula, g: &Formula, p: &LogicParams) -> Result<bool> {
    let space = p.space()?;
    Ok(space.denote(f)? == space.denote(g)?)
}
