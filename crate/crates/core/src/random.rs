//! Seedable generators for models, elements and posets.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::lgroup::{GroupElement, LGroup, LGroupDescriptor};
use crate::spectral_poset::{PointId, PointSet, SpectralPoset};

/// A descriptor with at most `max_components` lexicographic leaves of rank
/// at most `max_rank`. Occasionally two leaves are grouped into a nested
/// product.
pub fn random_descriptor<R: Rng + ?Sized>(
    rng: &mut R,
    max_rank: usize,
    max_components: usize,
) -> LGroupDescriptor {
    let max_rank = max_rank.max(1);
    let leaves = rng.gen_range(1..=max_components.max(1));
    let mut components: Vec<LGroupDescriptor> = (0..leaves)
        .map(|_| LGroupDescriptor::lex(rng.gen_range(1..=max_rank)))
        .collect();
    if leaves == 1 && rng.gen_bool(0.5) {
        return components.pop().expect("one leaf");
    }
    if leaves >= 3 && rng.gen_bool(0.25) {
        let tail = components.split_off(leaves - 2);
        components.push(LGroupDescriptor::product(tail));
    }
    LGroupDescriptor::product(components)
}

/// Uniform coordinates in `[-bound, bound]`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    group: &Arc<LGroup>,
    bound: i64,
) -> GroupElement {
    let coords = (0..group.dim())
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    group.element(coords).expect("dimension matches")
}

/// A random element of the positive cone: each negative block is negated,
/// and each block is zeroed with probability one quarter.
pub fn random_nonnegative<R: Rng + ?Sized>(
    rng: &mut R,
    group: &Arc<LGroup>,
    bound: i64,
) -> GroupElement {
    let g = random_element(rng, group, bound);
    let mut coords = g.coords().to_vec();
    for (b, r) in group.blocks().iter().enumerate() {
        if rng.gen_bool(0.25) {
            coords[r.clone()]
                .iter_mut()
                .for_each(|c| *c = BigInt::from(0));
            continue;
        }
        let negative = g
            .block(b)
            .iter()
            .find(|c| **c != BigInt::from(0))
            .is_some_and(|c| *c < BigInt::from(0));
        if negative {
            coords[r.clone()].iter_mut().for_each(|c| *c = -c.clone());
        }
    }
    group.element(coords).expect("dimension matches")
}

/// A random finite poset with between 1 and `max_points` points, from a
/// random DAG whose edges follow a hidden random linear order.
pub fn random_poset<R: Rng + ?Sized>(
    rng: &mut R,
    max_points: usize,
    edge_prob: f64,
) -> SpectralPoset {
    let n = rng.gen_range(1..=max_points.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                relations.push((order[i], order[j]));
            }
        }
    }
    let names = (0..n).map(|i| format!("x{i}")).collect();
    SpectralPoset::from_indices(names, &relations).expect("edges follow a linear order")
}

/// An isomorphic copy of `poset` under fresh names and a random
/// permutation, together with the isomorphism (indexed by source point).
pub fn relabel<R: Rng + ?Sized>(
    rng: &mut R,
    poset: &SpectralPoset,
) -> (SpectralPoset, Vec<PointId>) {
    let n = poset.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut relations: Vec<(usize, usize)> = poset
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| (perm[a.index()], perm[b.index()]))
        .collect();
    relations.shuffle(rng);
    let names = (0..n).map(|i| format!("y{i}")).collect();
    let copy = SpectralPoset::from_indices(names, &relations).expect("image of a poset");
    (copy, perm.into_iter().map(PointId).collect())
}

pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, poset: &SpectralPoset) -> PointSet {
    let mut x = poset.empty_set();
    for p in poset.points() {
        if rng.gen_bool(0.5) {
            x.insert(p);
        }
    }
    x
}
