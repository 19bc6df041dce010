//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the closed-form deciders it is used to check: the
//! boundedness search compares raw coordinate slices, filter membership is
//! re-derived from the lexicographic definition, and the rim closure is
//! evaluated straight from the strict order.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use spectral_cic::lgroup::{GroupElement, LGroup, LGroupDescriptor};
use spectral_cic::spectral_poset::{PointId, PointSet, SpectralPoset};

pub const CHECK_DEPTH: u64 = 100;

/// Every descriptor with at most three product components of lex rank at
/// most three, plus the bare `Lex(1..=3)`.
pub fn grid() -> Vec<LGroupDescriptor> {
    let mut out: Vec<LGroupDescriptor> = (1..=3).map(LGroupDescriptor::lex).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..3 {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let mut next = vec![t.clone()];
                next.extend((1..=3).map(|r| {
                    let mut u = t.clone();
                    u.push(r);
                    u
                }));
                next
            })
            .collect();
    }
    tuples.sort();
    tuples.dedup();
    for t in tuples.into_iter().filter(|t| !t.is_empty()) {
        out.push(LGroupDescriptor::product(
            t.into_iter().map(LGroupDescriptor::lex).collect(),
        ));
    }
    out
}

/// Sorted branch lengths: two grid models have isomorphic spectra exactly
/// when these agree.
pub fn branch_signature(desc: &LGroupDescriptor) -> Vec<usize> {
    let mut ranks = desc.block_ranks();
    ranks.sort();
    ranks
}

fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn scaled(block: &[BigInt], n: u64) -> Vec<BigInt> {
    block.iter().map(|c| c * BigInt::from(n)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    /// A candidate dominating `n * g` for every `n <= depth`.
    Bounded(Vec<BigInt>),
    /// Every candidate in the box is overtaken by some `n * g`, `n <= depth`.
    Unbounded,
    /// The box is too large to scan.
    Inconclusive,
}

impl SearchVerdict {
    pub fn conclusive(&self) -> Option<bool> {
        match self {
            SearchVerdict::Bounded(_) => Some(true),
            SearchVerdict::Unbounded => Some(false),
            SearchVerdict::Inconclusive => None,
        }
    }
}

fn box_candidates(len: usize, radius: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<BigInt>| {
                (0..=radius).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(BigInt::from(v));
                    next
                })
            })
            .collect();
    }
    out
}

/// Searches `c` in `{0..=radius}^k` per block with `c >= n * g` for all
/// `1 <= n <= depth`. The product order is pointwise, so blocks are
/// searched independently.
pub fn search_bounded_multiples(g: &GroupElement, radius: i64, depth: u64) -> SearchVerdict {
    let group = g.group();
    let mut witness = Vec::with_capacity(group.dim());
    for (b, range) in group.blocks().iter().enumerate() {
        if range.len() > 6 {
            return SearchVerdict::Inconclusive;
        }
        let block = g.block(b);
        let found = box_candidates(range.len(), radius)
            .into_iter()
            .find(|c| (1..=depth).all(|n| lex_cmp(c, &scaled(block, n)) != Ordering::Less));
        match found {
            Some(c) => witness.extend(c),
            None => return SearchVerdict::Unbounded,
        }
    }
    SearchVerdict::Bounded(witness)
}

/// Direct reading of almost integrality for `z` with valuation `g`: some
/// `c >= 0` with `c + n * g >= 0` for all `n <= depth`.
pub fn search_almost_integral(g: &GroupElement, radius: i64, depth: u64) -> SearchVerdict {
    let group = g.group();
    let mut witness = Vec::with_capacity(group.dim());
    for (b, range) in group.blocks().iter().enumerate() {
        if range.len() > 6 {
            return SearchVerdict::Inconclusive;
        }
        let block = g.block(b);
        let zero = vec![BigInt::from(0); range.len()];
        let found = box_candidates(range.len(), radius).into_iter().find(|c| {
            (1..=depth).all(|n| {
                let shifted: Vec<BigInt> =
                    c.iter().zip(scaled(block, n)).map(|(x, y)| x + y).collect();
                lex_cmp(&shifted, &zero) != Ordering::Less
            })
        });
        match found {
            Some(c) => witness.extend(c),
            None => return SearchVerdict::Unbounded,
        }
    }
    SearchVerdict::Bounded(witness)
}

/// `c >= 0` and `c >= n * g` for `1 <= n <= depth`, by raw comparison.
pub fn witness_dominates(c: &GroupElement, g: &GroupElement, depth: u64) -> bool {
    let group = g.group();
    (0..group.blocks().len()).all(|b| {
        let cb = c.block(b);
        let zero = vec![BigInt::from(0); cb.len()];
        lex_cmp(cb, &zero) != Ordering::Less
            && (1..=depth).all(|n| lex_cmp(cb, &scaled(g.block(b), n)) != Ordering::Less)
    })
}

/// Filter membership from the definition: the first `level` coordinates of
/// `block` form a lexicographically positive tuple.
pub fn in_level_filter(g: &GroupElement, block: usize, level: usize) -> bool {
    let prefix = &g.block(block)[..level];
    lex_cmp(prefix, &vec![BigInt::from(0); level]) == Ordering::Greater
}

pub fn nonnegative_by_definition(g: &GroupElement) -> bool {
    (0..g.group().blocks().len()).all(|b| {
        let block = g.block(b);
        lex_cmp(block, &vec![BigInt::from(0); block.len()]) != Ordering::Less
    })
}

/// Rim closure evaluated pair by pair from the strict order.
pub fn rim_closure_by_definition(poset: &SpectralPoset, x: &PointSet) -> PointSet {
    let mut out = x.clone();
    for p in poset.points() {
        if x.contains(p) {
            continue;
        }
        let covered = x.iter().any(|q| {
            poset.less(p, q) && !poset.points().any(|r| poset.less(p, r) && poset.less(r, q))
        });
        if covered {
            out.insert(p);
        }
    }
    out
}

/// Every element of the box `{0..=radius}^dim`.
pub fn box_elements(group: &Arc<LGroup>, radius: i64) -> Vec<GroupElement> {
    box_candidates(group.dim(), radius)
        .into_iter()
        .map(|c| group.element(c).unwrap())
        .collect()
}

pub fn point_subsets(poset: &SpectralPoset) -> Vec<PointSet> {
    let n = poset.len();
    assert!(n <= 16);
    (0..1usize << n)
        .map(|mask| {
            poset
                .set_from_ids((0..n).filter(|i| mask >> i & 1 == 1).map(PointId))
                .unwrap()
        })
        .collect()
}

pub fn random_nonzero_nonnegative<R: Rng>(
    rng: &mut R,
    group: &Arc<LGroup>,
    bound: i64,
) -> GroupElement {
    loop {
        let g = spectral_cic::random::random_nonnegative(rng, group, bound);
        if !g.is_zero() {
            return g;
        }
    }
}
