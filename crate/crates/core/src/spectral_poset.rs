//! Finite spectral spaces presented as posets under specialization.
//!
//! A point `p` lies below `q` when the corresponding prime is contained in
//! the other one. In a finite spectral space the Zariski-closed sets are
//! exactly the up-closed sets, so every topological query here reduces to
//! order computations on bitsets.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of a point inside its [`SpectralPoset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A subset of the points of one poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet { bits }
    }

    /// Size of the carrier poset this set was built for.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, p: PointId) {
        self.bits.insert(p.0);
    }

    pub fn remove(&mut self, p: PointId) {
        self.bits.set(p.0, false);
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.bits.contains(p.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        self.bits.ones().map(PointId)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// A finite poset of points with the strict order `p < q`.
///
/// Both the strict up-set and the strict down-set of every point are kept
/// as bitsets; heights and cover relations are computed once at load time.
#[derive(Debug, Clone)]
pub struct SpectralPoset {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    heights: Vec<usize>,
}

impl SpectralPoset {
    /// Builds a poset from point names and a list of `(lower, upper)`
    /// pairs. The relation is closed transitively; a cycle is rejected.
    pub fn new<S, T>(points: &[S], relations: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut by_name = HashMap::with_capacity(points.len());
        for (i, name) in points.iter().enumerate() {
            if by_name.insert(name.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicatePoint(name.as_ref().to_string()));
            }
        }
        let mut pairs = Vec::with_capacity(relations.len());
        for (lo, hi) in relations {
            let lo_idx = *by_name
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownPoint(lo.as_ref().to_string()))?;
            let hi_idx = *by_name
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownPoint(hi.as_ref().to_string()))?;
            pairs.push((lo_idx, hi_idx));
        }
        let names = points.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_indices(names, &pairs)
    }

    /// Same as [`SpectralPoset::new`] with relations given by index.
    pub fn from_indices(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut by_name = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(name.clone()));
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &(lo, hi) in relations {
            if lo >= n {
                return Err(Error::UnknownPoint(format!("#{lo}")));
            }
            if hi >= n {
                return Err(Error::UnknownPoint(format!("#{hi}")));
            }
            above[lo].insert(hi);
        }

        // Warshall on bit rows.
        for k in 0..n {
            let row_k = above[k].clone();
            for row in above.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(p) = (0..n).find(|&p| above[p].contains(p)) {
            return Err(Error::Cycle(names[p].clone()));
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (p, row) in above.iter().enumerate() {
            for q in row.ones() {
                below[q].insert(p);
            }
        }

        // Points sorted by down-set size form a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| below[p].count_ones(..));
        let mut heights = vec![0usize; n];
        for &p in &order {
            heights[p] = below[p].ones().map(|q| heights[q] + 1).max().unwrap_or(0);
        }

        Ok(SpectralPoset {
            names,
            by_name,
            above,
            below,
            heights,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.len()).map(PointId)
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.names[p.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point(&self, name: &str) -> Result<PointId> {
        self.by_name
            .get(name)
            .map(|&i| PointId(i))
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn check_point(&self, p: PointId) -> Result<()> {
        if p.0 < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("#{}", p.0)))
        }
    }

    fn check_set(&self, x: &PointSet) -> Result<()> {
        if x.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.len(),
                found: x.universe(),
            })
        }
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Collects points by name into a [`PointSet`].
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        let mut out = self.empty_set();
        for name in names {
            out.insert(self.point(name.as_ref())?);
        }
        Ok(out)
    }

    pub fn set_from_ids<I: IntoIterator<Item = PointId>>(&self, ids: I) -> Result<PointSet> {
        let mut out = self.empty_set();
        for p in ids {
            self.check_point(p)?;
            out.insert(p);
        }
        Ok(out)
    }

    /// Names of the members, in point order.
    pub fn names_of(&self, x: &PointSet) -> Vec<String> {
        x.iter().map(|p| self.names[p.0].clone()).collect()
    }

    /// Strict order `p < q`. Panics on out-of-range ids.
    pub fn less(&self, p: PointId, q: PointId) -> bool {
        self.above[p.0].contains(q.0)
    }

    pub fn leq(&self, p: PointId, q: PointId) -> bool {
        p == q || self.less(p, q)
    }

    /// Strict up-set of `p`.
    pub fn strictly_above(&self, p: PointId) -> PointSet {
        PointSet {
            bits: self.above[p.0].clone(),
        }
    }

    /// Strict down-set of `p`.
    pub fn strictly_below(&self, p: PointId) -> PointSet {
        PointSet {
            bits: self.below[p.0].clone(),
        }
    }

    /// `p < q` with nothing strictly in between.
    pub fn covers(&self, p: PointId, q: PointId) -> Result<bool> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.covers_unchecked(p.0, q.0))
    }

    fn covers_unchecked(&self, p: usize, q: usize) -> bool {
        self.above[p].contains(q) && self.above[p].is_disjoint(&self.below[q])
    }

    /// All covering pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.above[p].ones() {
                if self.covers_unchecked(p, q) {
                    out.push((PointId(p), PointId(q)));
                }
            }
        }
        out
    }

    pub fn zariski_closure(&self, x: &PointSet) -> Result<PointSet> {
        self.check_set(x)?;
        let mut out = x.clone();
        for p in x.iter() {
            out.bits.union_with(&self.above[p.0]);
        }
        Ok(out)
    }

    pub fn is_closed(&self, x: &PointSet) -> Result<bool> {
        Ok(&self.zariski_closure(x)? == x)
    }

    /// Whether the closure of `x` is the whole space, i.e. `x` contains
    /// every minimal point.
    pub fn is_dense(&self, x: &PointSet) -> Result<bool> {
        self.check_set(x)?;
        Ok((0..self.len()).all(|p| !self.below[p].is_clear() || x.bits.contains(p)))
    }

    /// `x` together with every outside point covered by a member of `x`.
    pub fn rim_closure(&self, x: &PointSet) -> Result<PointSet> {
        self.check_set(x)?;
        let mut out = x.clone();
        for q in x.iter() {
            for p in self.below[q.0].ones() {
                if !x.bits.contains(p) && self.covers_unchecked(p, q.0) {
                    out.bits.insert(p);
                }
            }
        }
        Ok(out)
    }

    pub fn minimal_elements(&self, x: &PointSet) -> Result<PointSet> {
        self.check_set(x)?;
        let mut out = x.clone();
        for p in x.iter() {
            if !self.below[p.0].is_disjoint(&x.bits) {
                out.remove(p);
            }
        }
        Ok(out)
    }

    /// Length of the longest strict chain ending at `p`.
    pub fn height(&self, p: PointId) -> Result<usize> {
        self.check_point(p)?;
        Ok(self.heights[p.0])
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Whether every down-set `{q : q <= p}` is a chain.
    pub fn is_tree(&self) -> bool {
        (0..self.len()).all(|p| {
            let down: Vec<usize> = self.below[p].ones().collect();
            down.iter().enumerate().all(|(i, &a)| {
                down[i + 1..]
                    .iter()
                    .all(|&b| self.above[a].contains(b) || self.above[b].contains(a))
            })
        })
    }

    /// Maps a point set along `mapping` (indexed by source point).
    pub fn image(&self, mapping: &[PointId], x: &PointSet) -> Result<PointSet> {
        self.check_set(x)?;
        let mut out = PointSet::empty(mapping.len());
        for p in x.iter() {
            out.insert(mapping[p.0]);
        }
        Ok(out)
    }

    /// Checks that `mapping` (indexed by point of `self`) is a bijection
    /// onto `dst` that preserves and reflects the order.
    pub fn verify_isomorphism(&self, dst: &SpectralPoset, mapping: &[PointId]) -> Result<()> {
        if mapping.len() != self.len() || dst.len() != self.len() {
            return Err(Error::NotAnIsomorphism(format!(
                "mapping covers {} points, source has {}, target has {}",
                mapping.len(),
                self.len(),
                dst.len()
            )));
        }
        let mut hit = FixedBitSet::with_capacity(dst.len());
        for &q in mapping {
            dst.check_point(q)?;
            if hit.put(q.0) {
                return Err(Error::NotAnIsomorphism(format!(
                    "`{}` is hit twice",
                    dst.name(q)
                )));
            }
        }
        for p in 0..self.len() {
            for q in 0..self.len() {
                if self.above[p].contains(q) != dst.above[mapping[p].0].contains(mapping[q].0) {
                    return Err(Error::NotAnIsomorphism(format!(
                        "order between `{}` and `{}` is not preserved",
                        self.names[p], self.names[q]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Enumerates order isomorphisms `self -> dst` by backtracking, stopping
    /// after `limit` results.
    pub fn isomorphisms(&self, dst: &SpectralPoset, limit: usize) -> Vec<Vec<PointId>> {
        let mut found = Vec::new();
        if self.len() != dst.len() || limit == 0 {
            return found;
        }
        let signature = |poset: &SpectralPoset, p: usize| {
            (
                poset.heights[p],
                poset.above[p].count_ones(..),
                poset.below[p].count_ones(..),
            )
        };
        let mut src_sig: Vec<_> = (0..self.len()).map(|p| signature(self, p)).collect();
        let mut dst_sig: Vec<_> = (0..dst.len()).map(|p| signature(dst, p)).collect();
        let src_keys = src_sig.clone();
        src_sig.sort();
        dst_sig.sort();
        if src_sig != dst_sig {
            return found;
        }
        let dst_keys: Vec<_> = (0..dst.len()).map(|p| signature(dst, p)).collect();

        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&p| self.heights[p]);
        let mut assignment = vec![usize::MAX; self.len()];
        let mut used = vec![false; dst.len()];
        self.extend_isomorphism(
            dst,
            &order,
            0,
            &src_keys,
            &dst_keys,
            &mut assignment,
            &mut used,
            &mut found,
            limit,
        );
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        dst: &SpectralPoset,
        order: &[usize],
        depth: usize,
        src_keys: &[(usize, usize, usize)],
        dst_keys: &[(usize, usize, usize)],
        assignment: &mut [usize],
        used: &mut [bool],
        found: &mut Vec<Vec<PointId>>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if depth == order.len() {
            found.push(assignment.iter().map(|&q| PointId(q)).collect());
            return;
        }
        let p = order[depth];
        for cand in 0..dst.len() {
            if used[cand] || src_keys[p] != dst_keys[cand] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a| {
                let b = assignment[a];
                self.above[a].contains(p) == dst.above[b].contains(cand)
                    && self.above[p].contains(a) == dst.above[cand].contains(b)
            });
            if !consistent {
                continue;
            }
            assignment[p] = cand;
            used[cand] = true;
            self.extend_isomorphism(
                dst,
                order,
                depth + 1,
                src_keys,
                dst_keys,
                assignment,
                used,
                found,
                limit,
            );
            used[cand] = false;
            assignment[p] = usize::MAX;
            if found.len() >= limit {
                return;
            }
        }
    }

    pub fn find_isomorphism(&self, dst: &SpectralPoset) -> Option<Vec<PointId>> {
        self.isomorphisms(dst, 1).pop()
    }

    /// Graphviz rendering with one edge per covering pair.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", escape_dot(graph_name));
        for p in self.points() {
            out.push_str(&format!(
                "  \"{}\" [label=\"{} (h={})\"];\n",
                escape_dot(self.name(p)),
                escape_dot(self.name(p)),
                self.heights[p.0]
            ));
        }
        for (lo, hi) in self.cover_pairs() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                escape_dot(self.name(lo)),
                escape_dot(self.name(hi))
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Whether the rim closure commutes with the order isomorphism `iso`.
///
/// Always true for a genuine isomorphism; kept as a probe for tests and
/// fuzzing.
pub fn check_qf_invariance(
    src: &SpectralPoset,
    dst: &SpectralPoset,
    iso: &[PointId],
    x: &PointSet,
) -> Result<bool> {
    src.verify_isomorphism(dst, iso)?;
    let left = src.image(iso, &src.rim_closure(x)?)?;
    let right = dst.rim_closure(&src.image(iso, x)?)?;
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> SpectralPoset {
        SpectralPoset::new(&["c0", "c1", "c2"], &[("c0", "c1"), ("c1", "c2")]).unwrap()
    }

    fn y_tree() -> SpectralPoset {
        SpectralPoset::new(&["r", "m", "a", "b"], &[("r", "m"), ("m", "a"), ("m", "b")]).unwrap()
    }

    fn diamond() -> SpectralPoset {
        SpectralPoset::new(
            &["r", "p", "q", "m"],
            &[("r", "p"), ("r", "q"), ("p", "m"), ("q", "m")],
        )
        .unwrap()
    }

    fn set(poset: &SpectralPoset, names: &[&str]) -> PointSet {
        poset.set_of(names).unwrap()
    }

    #[test]
    fn covers_in_chain() {
        let c = chain();
        let p = |n| c.point(n).unwrap();
        assert!(c.covers(p("c0"), p("c1")).unwrap());
        assert!(!c.covers(p("c0"), p("c2")).unwrap());
        assert!(!c.covers(p("c1"), p("c1")).unwrap());
        assert!(!c.covers(p("c1"), p("c0")).unwrap());
    }

    #[test]
    fn covers_rejects_unknown_point() {
        let c = chain();
        assert!(matches!(
            c.covers(PointId(0), PointId(7)),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(c.point("zz"), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn load_rejects_cycles_and_duplicates() {
        assert!(matches!(
            SpectralPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(
            SpectralPoset::new(&["a", "a"], &[] as &[(&str, &str)]),
            Err(Error::DuplicatePoint(_))
        ));
        assert!(matches!(
            SpectralPoset::new(&["a"], &[("a", "b")]),
            Err(Error::UnknownPoint(_))
        ));
    }

    #[test]
    fn relations_are_closed_transitively() {
        let c = chain();
        assert!(c.less(c.point("c0").unwrap(), c.point("c2").unwrap()));
        assert_eq!(c.cover_pairs().len(), 2);
    }

    #[test]
    fn closure_examples() {
        let c = chain();
        assert_eq!(
            c.zariski_closure(&set(&c, &["c0"])).unwrap(),
            set(&c, &["c0", "c1", "c2"])
        );
        assert!(c.zariski_closure(&c.empty_set()).unwrap().is_empty());
        let y = y_tree();
        assert_eq!(
            y.zariski_closure(&set(&y, &["m"])).unwrap(),
            set(&y, &["m", "a", "b"])
        );
    }

    #[test]
    fn density_examples() {
        let c = chain();
        assert!(c.is_dense(&set(&c, &["c0"])).unwrap());
        assert!(!c.is_dense(&set(&c, &["c2"])).unwrap());
        let y = y_tree();
        assert!(!y.is_dense(&set(&y, &["m"])).unwrap());
    }

    #[test]
    fn rim_closure_examples() {
        let c = chain();
        assert_eq!(
            c.rim_closure(&set(&c, &["c2"])).unwrap(),
            set(&c, &["c1", "c2"])
        );
        assert!(c.rim_closure(&c.empty_set()).unwrap().is_empty());
        let y = y_tree();
        assert_eq!(
            y.rim_closure(&set(&y, &["a"])).unwrap(),
            set(&y, &["m", "a"])
        );
    }

    #[test]
    fn minimal_element_examples() {
        let c = chain();
        assert_eq!(
            c.minimal_elements(&set(&c, &["c1", "c2"])).unwrap(),
            set(&c, &["c1"])
        );
        let y = y_tree();
        assert_eq!(
            y.minimal_elements(&set(&y, &["a", "b"])).unwrap(),
            set(&y, &["a", "b"])
        );
        assert!(y.minimal_elements(&y.empty_set()).unwrap().is_empty());
    }

    #[test]
    fn height_examples() {
        let c = chain();
        assert_eq!(c.height(c.point("c2").unwrap()).unwrap(), 2);
        assert_eq!(c.height(c.point("c0").unwrap()).unwrap(), 0);
        let y = y_tree();
        assert_eq!(y.height(y.point("a").unwrap()).unwrap(), 2);
        assert_eq!(y.height(y.point("r").unwrap()).unwrap(), 0);
        let d = diamond();
        assert_eq!(d.height(d.point("m").unwrap()).unwrap(), 2);
    }

    #[test]
    fn tree_examples() {
        assert!(y_tree().is_tree());
        assert!(!diamond().is_tree());
        let single = SpectralPoset::new(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert!(single.is_tree());
    }

    #[test]
    fn set_universe_mismatch_is_an_error() {
        let c = chain();
        let foreign = PointSet::empty(5);
        assert!(matches!(
            c.rim_closure(&foreign),
            Err(Error::UniverseMismatch {
                expected: 3,
                found: 5
            })
        ));
    }

    #[test]
    fn qf_invariance_identity_and_relabel() {
        let y = y_tree();
        let id: Vec<PointId> = y.points().collect();
        for mask in 0..16usize {
            let x = y
                .set_from_ids((0..4).filter(|i| mask >> i & 1 == 1).map(PointId))
                .unwrap();
            assert!(check_qf_invariance(&y, &y, &id, &x).unwrap());
        }

        let c = chain();
        let relabeled =
            SpectralPoset::new(&["z2", "z0", "z1"], &[("z1", "z2"), ("z0", "z1")]).unwrap();
        let iso = c.find_isomorphism(&relabeled).unwrap();
        assert_eq!(relabeled.name(iso[0]), "z0");
        assert!(check_qf_invariance(&c, &relabeled, &iso, &set(&c, &["c2"])).unwrap());
    }

    #[test]
    fn qf_invariance_rejects_non_isomorphism() {
        let c = chain();
        let flipped = vec![PointId(2), PointId(1), PointId(0)];
        assert!(matches!(
            check_qf_invariance(&c, &c, &flipped, &c.empty_set()),
            Err(Error::NotAnIsomorphism(_))
        ));
        let y = y_tree();
        let d = diamond();
        let id: Vec<PointId> = y.points().collect();
        assert!(check_qf_invariance(&y, &d, &id, &y.empty_set()).is_err());
    }

    #[test]
    fn automorphisms_of_y_tree() {
        let y = y_tree();
        let autos = y.isomorphisms(&y, 10);
        assert_eq!(autos.len(), 2);
        assert!(y.find_isomorphism(&diamond()).is_none());
    }

    #[test]
    fn dot_lists_cover_edges() {
        let dot = y_tree().to_dot("y");
        assert!(dot.starts_with("digraph \"y\" {"));
        assert!(dot.contains("\"r\" -> \"m\";"));
        assert!(dot.contains("\"m\" -> \"a\";"));
        assert!(!dot.contains("\"r\" -> \"a\";"));
    }
}
