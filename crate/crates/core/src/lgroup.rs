//! Lattice-ordered abelian groups built from lexicographic integer powers
//! and finite pointwise products.
//!
//! A descriptor flattens into a sequence of lexicographic *blocks*; the
//! order on the whole group is the pointwise order across blocks. Nested
//! products therefore behave exactly like the flat product of their leaves.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Shape of a group: `Lex(k)` is `Z^k` under the lexicographic order,
/// `Product` is the pointwise product of its components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LGroupDescriptor {
    Lex { rank: usize },
    Product { components: Vec<LGroupDescriptor> },
}

impl LGroupDescriptor {
    pub fn lex(rank: usize) -> Self {
        LGroupDescriptor::Lex { rank }
    }

    pub fn product(components: Vec<LGroupDescriptor>) -> Self {
        LGroupDescriptor::Product { components }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LGroupDescriptor::Lex { rank: 0 } => Err(Error::InvalidDescriptor(
                "lex rank must be at least 1".into(),
            )),
            LGroupDescriptor::Lex { .. } => Ok(()),
            LGroupDescriptor::Product { components } if components.is_empty() => Err(
                Error::InvalidDescriptor("product needs at least one component".into()),
            ),
            LGroupDescriptor::Product { components } => {
                components.iter().try_for_each(LGroupDescriptor::validate)
            }
        }
    }

    pub fn coordinate_count(&self) -> usize {
        match self {
            LGroupDescriptor::Lex { rank } => *rank,
            LGroupDescriptor::Product { components } => components
                .iter()
                .map(LGroupDescriptor::coordinate_count)
                .sum(),
        }
    }

    /// Ranks of the lexicographic leaves in depth-first order.
    pub fn block_ranks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_ranks(&mut out);
        out
    }

    fn collect_ranks(&self, out: &mut Vec<usize>) {
        match self {
            LGroupDescriptor::Lex { rank } => out.push(*rank),
            LGroupDescriptor::Product { components } => {
                components.iter().for_each(|c| c.collect_ranks(out))
            }
        }
    }
}

impl fmt::Display for LGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LGroupDescriptor::Lex { rank } => write!(f, "Lex({rank})"),
            LGroupDescriptor::Product { components } => {
                write!(f, "Product(")?;
                for (i, c) in components.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A validated descriptor with its block layout.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct LGroup {
    descriptor: LGroupDescriptor,
    blocks: Vec<Range<usize>>,
    dim: usize,
}

impl LGroup {
    pub fn new(descriptor: LGroupDescriptor) -> Result<Arc<Self>> {
        descriptor.validate()?;
        let mut blocks = Vec::new();
        let mut offset = 0;
        for rank in descriptor.block_ranks() {
            blocks.push(offset..offset + rank);
            offset += rank;
        }
        Ok(Arc::new(LGroup {
            descriptor,
            blocks,
            dim: offset,
        }))
    }

    pub fn descriptor(&self) -> &LGroupDescriptor {
        &self.descriptor
    }

    /// Coordinate ranges of the lexicographic blocks.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.dim {
            return Err(Error::CoordinateCount {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(GroupElement {
            group: Arc::clone(self),
            coords,
        })
    }

    pub fn element_from_i64(self: &Arc<Self>, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            group: Arc::clone(self),
            coords: vec![BigInt::zero(); self.dim],
        }
    }

    /// The element with a single `1` at coordinate `index`.
    pub fn unit_vector(self: &Arc<Self>, index: usize) -> GroupElement {
        let mut g = self.zero();
        g.coords[index] = BigInt::one();
        g
    }
}

/// An element of an [`LGroup`], with exact integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Arc<LGroup>,
    coords: Vec<BigInt>,
}

/// Positive and negative parts: `g = positive - negative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub positive: GroupElement,
    pub negative: GroupElement,
}

fn lex_sign(coords: &[BigInt]) -> Ordering {
    coords
        .iter()
        .find(|c| !c.is_zero())
        .map_or(Ordering::Equal, |c| {
            if c.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
}

impl GroupElement {
    pub fn group(&self) -> &Arc<LGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn block(&self, b: usize) -> &[BigInt] {
        &self.coords[self.group.blocks[b].clone()]
    }

    fn same_group(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    fn with_coords(&self, coords: Vec<BigInt>) -> GroupElement {
        GroupElement {
            group: Arc::clone(&self.group),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> GroupElement {
        self.with_coords(self.coords.iter().map(|c| -c).collect())
    }

    /// `n * g`.
    pub fn scalar_mul(&self, n: u64) -> GroupElement {
        let n = BigInt::from(n);
        self.with_coords(self.coords.iter().map(|c| c * &n).collect())
    }

    /// Sign of each block under its lexicographic order.
    fn block_signs(&self) -> impl Iterator<Item = Ordering> + '_ {
        self.group
            .blocks
            .iter()
            .map(|r| lex_sign(&self.coords[r.clone()]))
    }

    /// `g >= 0`, i.e. every block is lexicographically non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.block_signs().all(|s| s != Ordering::Less)
    }

    pub fn leq(&self, other: &GroupElement) -> Result<bool> {
        self.same_group(other)?;
        Ok(self
            .group
            .blocks
            .iter()
            .all(|r| self.coords[r.clone()].cmp(&other.coords[r.clone()]) != Ordering::Greater))
    }

    fn blockwise(&self, other: &GroupElement, pick: Ordering) -> Result<GroupElement> {
        self.same_group(other)?;
        let mut coords = Vec::with_capacity(self.coords.len());
        for r in &self.group.blocks {
            let a = &self.coords[r.clone()];
            let b = &other.coords[r.clone()];
            let chosen = if a.cmp(b) == pick { a } else { b };
            coords.extend_from_slice(chosen);
        }
        Ok(self.with_coords(coords))
    }

    /// Greatest lower bound.
    pub fn meet(&self, other: &GroupElement) -> Result<GroupElement> {
        self.blockwise(other, Ordering::Less)
    }

    /// Least upper bound.
    pub fn join(&self, other: &GroupElement) -> Result<GroupElement> {
        self.blockwise(other, Ordering::Greater)
    }

    /// `g ∨ 0` and `(-g) ∨ 0`.
    pub fn decompose(&self) -> Decomposition {
        let mut positive = Vec::with_capacity(self.coords.len());
        let mut negative = Vec::with_capacity(self.coords.len());
        for r in &self.group.blocks {
            let block = &self.coords[r.clone()];
            match lex_sign(block) {
                Ordering::Less => {
                    positive.extend(std::iter::repeat_n(BigInt::zero(), block.len()));
                    negative.extend(block.iter().map(|c| -c));
                }
                _ => {
                    positive.extend_from_slice(block);
                    negative.extend(std::iter::repeat_n(BigInt::zero(), block.len()));
                }
            }
        }
        Decomposition {
            positive: self.with_coords(positive),
            negative: self.with_coords(negative),
        }
    }

    /// Decides whether some `c >= 0` dominates every multiple `n * g`
    /// (`n >= 1`) and returns the canonical such `c`.
    ///
    /// In a lexicographic block the multiples are bounded exactly when the
    /// leading coordinate is `<= 0`: a negative leading coordinate (or a
    /// non-positive block) is dominated by `0`, and a block with leading
    /// coordinate `0` is dominated by the first unit vector. The product
    /// order is pointwise, so the answer is the conjunction over blocks.
    pub fn bounded_multiples(&self) -> Option<GroupElement> {
        let mut witness = vec![BigInt::zero(); self.coords.len()];
        for r in &self.group.blocks {
            let block = &self.coords[r.clone()];
            if block[0].is_positive() {
                return None;
            }
            if lex_sign(block) == Ordering::Greater {
                witness[r.start] = BigInt::one();
            }
        }
        Some(self.with_coords(witness))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.group.descriptor, self)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Decimal strings keep unbounded integers exact.
        serializer.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(k: usize) -> Arc<LGroup> {
        LGroup::new(LGroupDescriptor::lex(k)).unwrap()
    }

    fn z2_pointwise() -> Arc<LGroup> {
        LGroup::new(LGroupDescriptor::product(vec![
            LGroupDescriptor::lex(1),
            LGroupDescriptor::lex(1),
        ]))
        .unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(LGroupDescriptor::lex(0).validate().is_err());
        assert!(LGroupDescriptor::product(vec![]).validate().is_err());
        assert!(
            LGroupDescriptor::product(vec![LGroupDescriptor::product(vec![
                LGroupDescriptor::lex(0)
            ])])
            .validate()
            .is_err()
        );
        let nested = LGroupDescriptor::product(vec![
            LGroupDescriptor::lex(2),
            LGroupDescriptor::product(vec![LGroupDescriptor::lex(1), LGroupDescriptor::lex(3)]),
        ]);
        assert_eq!(nested.coordinate_count(), 6);
        assert_eq!(nested.block_ranks(), vec![2, 1, 3]);
        assert_eq!(nested.to_string(), "Product(Lex(2),Product(Lex(1),Lex(3)))");
    }

    #[test]
    fn arithmetic_examples() {
        let g = lex(2);
        let a = g.element_from_i64(&[1, 2]).unwrap();
        let b = g.element_from_i64(&[0, -5]).unwrap();
        assert_eq!(a.add(&b).unwrap(), g.element_from_i64(&[1, -3]).unwrap());
        assert_eq!(
            g.element_from_i64(&[0, 1]).unwrap().scalar_mul(3),
            g.element_from_i64(&[0, 3]).unwrap()
        );
        assert_eq!(
            g.element_from_i64(&[2, -3]).unwrap().neg(),
            g.element_from_i64(&[-2, 3]).unwrap()
        );
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = lex(2).element_from_i64(&[1, 0]).unwrap();
        let b = z2_pointwise().element_from_i64(&[1, 0]).unwrap();
        assert_eq!(a.add(&b), Err(Error::DescriptorMismatch));
        assert_eq!(a.leq(&b), Err(Error::DescriptorMismatch));
        assert_eq!(a.meet(&b), Err(Error::DescriptorMismatch));
        assert!(matches!(
            lex(2).element_from_i64(&[1]),
            Err(Error::CoordinateCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn separately_built_equal_groups_interoperate() {
        let a = lex(2).element_from_i64(&[1, 0]).unwrap();
        let b = lex(2).element_from_i64(&[0, 1]).unwrap();
        assert!(b.leq(&a).unwrap());
    }

    #[test]
    fn order_examples() {
        let g = lex(2);
        let e = |c: &[i64]| g.element_from_i64(c).unwrap();
        assert!(e(&[0, 5]).leq(&e(&[1, -10])).unwrap());
        assert_eq!(e(&[1, 0]).meet(&e(&[0, 7])).unwrap(), e(&[0, 7]));
        assert_eq!(e(&[1, 0]).join(&e(&[0, 7])).unwrap(), e(&[1, 0]));

        let p = z2_pointwise();
        let x = p.element_from_i64(&[1, 0]).unwrap();
        let y = p.element_from_i64(&[0, 1]).unwrap();
        assert!(!x.leq(&y).unwrap());
        assert!(!y.leq(&x).unwrap());
        assert_eq!(x.meet(&y).unwrap(), p.zero());
        assert_eq!(x.join(&y).unwrap(), p.element_from_i64(&[1, 1]).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let p = z2_pointwise();
        let d = p.element_from_i64(&[2, -3]).unwrap().decompose();
        assert_eq!(d.positive, p.element_from_i64(&[2, 0]).unwrap());
        assert_eq!(d.negative, p.element_from_i64(&[0, 3]).unwrap());

        let g = lex(2);
        let d = g.element_from_i64(&[1, -5]).unwrap().decompose();
        assert_eq!(d.positive, g.element_from_i64(&[1, -5]).unwrap());
        assert_eq!(d.negative, g.zero());

        let d = g.zero().decompose();
        assert_eq!(d.positive, g.zero());
        assert_eq!(d.negative, g.zero());
    }

    #[test]
    fn bounded_multiples_examples() {
        let g = lex(2);
        assert_eq!(
            g.element_from_i64(&[0, 3]).unwrap().bounded_multiples(),
            Some(g.element_from_i64(&[1, 0]).unwrap())
        );
        assert_eq!(
            g.element_from_i64(&[1, -100]).unwrap().bounded_multiples(),
            None
        );
        assert_eq!(
            g.element_from_i64(&[-4, 9]).unwrap().bounded_multiples(),
            Some(g.zero())
        );
        assert_eq!(g.zero().bounded_multiples(), Some(g.zero()));
        let p = z2_pointwise();
        assert_eq!(
            p.element_from_i64(&[0, 1]).unwrap().bounded_multiples(),
            None
        );
    }

    #[test]
    fn coordinates_are_unbounded() {
        let g = lex(1);
        let big = g.element_from_i64(&[i64::MAX]).unwrap();
        let sum = big.add(&big).unwrap();
        assert_eq!(sum.coords()[0], BigInt::from(i64::MAX) * 2);
        assert_eq!(sum.to_string(), "(18446744073709551614)");
    }
}
