//! The divisibility bridge between a group of divisibility and the prime
//! spectrum of the Bézout domain it models.
//!
//! Nonzero principal ideals correspond to elements `g >= 0`; containment of
//! ideals is the reverse of the group order, and a nonzero prime ideal is a
//! prime filter of the positive cone. For the shipped families the prime
//! filters are indexed by `(block, level)`: the filter of level `j` in a
//! lexicographic block holds the elements whose first `j` block coordinates
//! are lexicographically positive.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lgroup::{GroupElement, LGroup, LGroupDescriptor};
use crate::spectral_poset::{PointId, PointSet, SpectralPoset};

pub const ROOT_NAME: &str = "root";

/// Structural address of a prime filter: the chain of product components
/// followed by the level inside a lexicographic leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterPath {
    Level(usize),
    Component {
        index: usize,
        inner: Box<FilterPath>,
    },
}

/// A nonzero prime ideal in value-group form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFilter {
    path: FilterPath,
    block: usize,
    level: usize,
}

impl PrimeFilter {
    pub fn path(&self) -> &FilterPath {
        &self.path
    }

    /// Index of the lexicographic leaf the filter lives in.
    pub fn block(&self) -> usize {
        self.block
    }

    /// 1-based depth inside the leaf.
    pub fn level(&self) -> usize {
        self.level
    }
}

impl Serialize for PrimeFilter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.path.serialize(serializer)
    }
}

/// A realizable closed set: either `V(g)` for some `g >= 0` or the whole
/// space, which is `V` of the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSetPattern {
    pub members: PointSet,
    pub witness: PatternWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternWitness {
    Element(GroupElement),
    ZeroIdeal,
}

impl PatternWitness {
    pub fn element(&self) -> Option<&GroupElement> {
        match self {
            PatternWitness::Element(g) => Some(g),
            PatternWitness::ZeroIdeal => None,
        }
    }
}

/// Principal ideals `aD ⊆ bD` with `0 <= b <= a`, stored through their
/// `V`-sets. `sub_ideal` is `aD`, `super_ideal` is `bD`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedPair {
    pub sub_ideal: VSetPattern,
    pub super_ideal: VSetPattern,
}

/// Prime spectrum of the Bézout domain whose group of divisibility is the
/// given l-group.
#[derive(Debug, Clone)]
pub struct BezoutSpectrum {
    group: Arc<LGroup>,
    poset: SpectralPoset,
    root: PointId,
    filters: Vec<Option<PrimeFilter>>,
    /// `block_points[b][j - 1]` is the point of level `j` in block `b`.
    block_points: Vec<Vec<PointId>>,
}

struct Leaf {
    prefix: String,
    components: Vec<usize>,
}

fn collect_leaves(
    desc: &LGroupDescriptor,
    prefix: &str,
    components: &mut Vec<usize>,
    out: &mut Vec<Leaf>,
) {
    match desc {
        LGroupDescriptor::Lex { .. } => out.push(Leaf {
            prefix: prefix.to_string(),
            components: components.clone(),
        }),
        LGroupDescriptor::Product {
            components: children,
        } => {
            for (i, child) in children.iter().enumerate() {
                components.push(i);
                collect_leaves(child, &format!("{prefix}c{}.", i + 1), components, out);
                components.pop();
            }
        }
    }
}

/// Choice of one realizable `V`-set per block: `0` is empty, `s >= 1` is the
/// tail of levels `s..=rank`.
type BlockChoice = Vec<usize>;

/// Mixed-radix counter over `sizes`.
struct Odometer {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.contains(&0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        Odometer { sizes, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

impl BezoutSpectrum {
    /// Root-glued union of one chain per lexicographic leaf.
    pub fn build(descriptor: LGroupDescriptor) -> Result<Self> {
        let group = LGroup::new(descriptor)?;
        let mut leaves = Vec::new();
        collect_leaves(group.descriptor(), "", &mut Vec::new(), &mut leaves);

        let mut names = vec![ROOT_NAME.to_string()];
        let mut filters = vec![None];
        let mut relations = Vec::new();
        let mut block_points = Vec::with_capacity(leaves.len());
        for (b, (leaf, range)) in leaves.iter().zip(group.blocks()).enumerate() {
            let mut chain = Vec::with_capacity(range.len());
            let mut below = 0usize;
            for level in 1..=range.len() {
                let id = names.len();
                names.push(format!("{}P{level}", leaf.prefix));
                let path =
                    leaf.components
                        .iter()
                        .rev()
                        .fold(FilterPath::Level(level), |inner, &index| {
                            FilterPath::Component {
                                index,
                                inner: Box::new(inner),
                            }
                        });
                filters.push(Some(PrimeFilter {
                    path,
                    block: b,
                    level,
                }));
                relations.push((below, id));
                below = id;
                chain.push(PointId(id));
            }
            block_points.push(chain);
        }
        let poset = SpectralPoset::from_indices(names, &relations)?;
        Ok(BezoutSpectrum {
            group,
            poset,
            root: PointId(0),
            filters,
            block_points,
        })
    }

    pub fn group(&self) -> &Arc<LGroup> {
        &self.group
    }

    pub fn descriptor(&self) -> &LGroupDescriptor {
        self.group.descriptor()
    }

    pub fn poset(&self) -> &SpectralPoset {
        &self.poset
    }

    pub fn root(&self) -> PointId {
        self.root
    }

    pub fn filter(&self, p: PointId) -> Option<&PrimeFilter> {
        self.filters.get(p.0).and_then(Option::as_ref)
    }

    /// Point carrying level `level` (1-based) of block `block`.
    pub fn point_at(&self, block: usize, level: usize) -> Option<PointId> {
        self.block_points
            .get(block)?
            .get(level.checked_sub(1)?)
            .copied()
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(g.group(), &self.group) || **g.group() == *self.group {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    /// `g ∈ f`: the first `level` coordinates of the filter's block are
    /// lexicographically positive.
    pub fn filter_contains(&self, f: &PrimeFilter, g: &GroupElement) -> Result<bool> {
        self.check_element(g)?;
        let range = self
            .group
            .blocks()
            .get(f.block)
            .filter(|r| (1..=r.len()).contains(&f.level))
            .ok_or(Error::DescriptorMismatch)?;
        Ok(prefix_positive(
            &g.coords()[range.start..range.start + f.level],
        ))
    }

    /// `V(gD)`. The root never belongs to it; `V(0) = ∅`.
    pub fn v_set(&self, g: &GroupElement) -> Result<VSetPattern> {
        self.check_element(g)?;
        if !g.is_nonnegative() {
            return Err(Error::NotNonnegative(g.to_string()));
        }
        let mut members = self.poset.empty_set();
        for (p, filter) in self.filters.iter().enumerate() {
            if let Some(f) = filter {
                if self.filter_contains(f, g)? {
                    members.insert(PointId(p));
                }
            }
        }
        Ok(VSetPattern {
            members,
            witness: PatternWitness::Element(g.clone()),
        })
    }

    /// `Min(gD)` for a proper nonzero principal ideal.
    pub fn min_primes(&self, g: &GroupElement) -> Result<PointSet> {
        let v = self.v_set(g)?;
        if g.is_zero() {
            return Err(Error::UnitElement(g.to_string()));
        }
        self.poset.minimal_elements(&v.members)
    }

    fn choice_members(&self, choice: &[usize]) -> PointSet {
        let mut members = self.poset.empty_set();
        for (chain, &start) in self.block_points.iter().zip(choice) {
            if start > 0 {
                for &p in &chain[start - 1..] {
                    members.insert(p);
                }
            }
        }
        members
    }

    /// Canonical witness: the sum of the unit vectors at each chosen start.
    fn choice_witness(&self, choice: &[usize]) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.group.dim()];
        for (range, &start) in self.group.blocks().iter().zip(choice) {
            if start > 0 {
                coords[range.start + start - 1] = BigInt::from(1);
            }
        }
        self.group
            .element(coords)
            .expect("choice has one entry per block")
    }

    fn choice_pattern(&self, choice: &[usize]) -> VSetPattern {
        VSetPattern {
            members: self.choice_members(choice),
            witness: PatternWitness::Element(self.choice_witness(choice)),
        }
    }

    /// The whole space, as `V` of the zero ideal.
    pub fn whole_space_pattern(&self) -> VSetPattern {
        VSetPattern {
            members: self.poset.all_points(),
            witness: PatternWitness::ZeroIdeal,
        }
    }

    /// Every realizable closed cocompact set: the image of `g ↦ V(g)` over
    /// `g >= 0`, followed by the whole space.
    ///
    /// Inside a lexicographic block the nonempty realizable sets are the
    /// chain tails; across blocks the choices are independent.
    pub fn enumerate_v_sets(&self) -> Vec<VSetPattern> {
        let sizes = self.block_points.iter().map(|c| c.len() + 1).collect();
        let mut out: Vec<VSetPattern> = Odometer::new(sizes)
            .map(|choice| self.choice_pattern(&choice))
            .collect();
        out.push(self.whole_space_pattern());
        out
    }

    /// Number of patterns [`enumerate_v_sets`](Self::enumerate_v_sets) returns.
    pub fn v_set_count(&self) -> usize {
        self.block_points
            .iter()
            .map(|c| c.len() + 1)
            .product::<usize>()
            + 1
    }

    fn block_pair_options(rank: usize, cap: Option<usize>) -> Vec<(usize, usize)> {
        let mut options = Vec::new();
        if cap.is_none() {
            options.push((0, 0));
            options.extend((1..=rank).map(|s| (s, 0)));
        }
        let top = cap.unwrap_or(rank);
        for t in 1..=top {
            for s in 1..=t {
                options.push((s, t));
            }
        }
        options
    }

    fn pair_options(&self, p: PointId) -> Result<Vec<Vec<(usize, usize)>>> {
        self.poset.check_point(p)?;
        let filter = self.filter(p).ok_or(Error::RootPoint)?;
        Ok(self
            .block_points
            .iter()
            .enumerate()
            .map(|(b, chain)| {
                let cap = (b == filter.block).then_some(filter.level);
                Self::block_pair_options(chain.len(), cap)
            })
            .collect())
    }

    /// Jointly realizable pattern pairs `(V(a), V(b))` with `0 <= b <= a`
    /// and `b` in the filter of `p`.
    ///
    /// Within a block, `a >= b > 0` forces the tail of `a` to start no later
    /// than the tail of `b`, and `b = 0` forces nothing on `a`. In the block
    /// of `p` the tail of `b` must start at or below the level of `p`.
    pub fn nested_pairs(&self, p: PointId) -> Result<impl Iterator<Item = NestedPair> + '_> {
        let options = self.pair_options(p)?;
        let sizes = options.iter().map(Vec::len).collect();
        Ok(Odometer::new(sizes).map(move |idx| {
            let (sub, sup): (BlockChoice, BlockChoice) =
                idx.iter().zip(&options).map(|(&i, opts)| opts[i]).unzip();
            NestedPair {
                sub_ideal: self.choice_pattern(&sub),
                super_ideal: self.choice_pattern(&sup),
            }
        }))
    }

    pub fn enumerate_nested_pairs(&self, p: PointId) -> Result<Vec<NestedPair>> {
        Ok(self.nested_pairs(p)?.collect())
    }

    pub fn nested_pair_count(&self, p: PointId) -> Result<usize> {
        Ok(self.pair_options(p)?.iter().map(Vec::len).product())
    }

    /// An element `x` of the filter of `p` whose inverse is almost
    /// integral, i.e. `x D* = D*`, if one exists.
    ///
    /// A level-`j` filter contains an element with leading block
    /// coordinate `0` exactly when `j >= 2`; such an element has bounded
    /// multiples. Level-1 filters only hold elements with positive leading
    /// coordinate, which never do.
    pub fn unit_in_closure_witness(&self, p: PointId) -> Option<GroupElement> {
        let f = self.filter(p)?;
        if f.level < 2 {
            return None;
        }
        Some(
            self.group
                .unit_vector(self.group.blocks()[f.block].start + 1),
        )
    }

    /// Primes surviving in the complete integral closure, decided directly
    /// from the group.
    pub fn spec_ast_oracle(&self) -> PointSet {
        let mut out = self.poset.empty_set();
        for p in self.poset.points() {
            if self.unit_in_closure_witness(p).is_none() {
                out.insert(p);
            }
        }
        out
    }

    pub fn point_names(&self) -> &[String] {
        self.poset.names()
    }
}

fn prefix_positive(coords: &[BigInt]) -> bool {
    coords
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive())
}

/// Whether `z` with valuation `g` lies in `D*`: decided by the negative
/// part of `g` alone.
pub fn is_almost_integral(g: &GroupElement) -> bool {
    g.decompose().negative.bounded_multiples().is_some()
}
