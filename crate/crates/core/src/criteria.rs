//! Three independent ways of deciding which primes `P` satisfy
//! `P D* != D*`, and the checks that tie them together.
//!
//! * the group oracle: `P` drops out iff it contains an element whose
//!   multiples are bounded (see [`BezoutSpectrum::spec_ast_oracle`]);
//! * the topological criterion: every realizable closed cocompact set
//!   through `P` has a dense rim closure;
//! * the minimal-prime criterion: any principal `I ⊆ J ⊆ P` share a minimal
//!   prime.

use serde::Serialize;

use crate::bezout_model::{BezoutSpectrum, NestedPair, VSetPattern};
use crate::error::Result;
use crate::lgroup::GroupElement;
use crate::spectral_poset::{PointId, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    In,
    Out,
}

impl Verdict {
    fn of(member: bool) -> Self {
        if member {
            Verdict::In
        } else {
            Verdict::Out
        }
    }

    pub fn is_in(self) -> bool {
        self == Verdict::In
    }

    fn flip(self) -> Self {
        match self {
            Verdict::In => Verdict::Out,
            Verdict::Out => Verdict::In,
        }
    }
}

/// For every point, the first realizable closed set through it whose rim
/// closure is not dense.
pub fn topological_exclusions(spec: &BezoutSpectrum) -> Result<Vec<Option<VSetPattern>>> {
    let poset = spec.poset();
    let mut out: Vec<Option<VSetPattern>> = vec![None; poset.len()];
    for pattern in spec.enumerate_v_sets() {
        let rim = poset.rim_closure(&pattern.members)?;
        if poset.is_dense(&rim)? {
            continue;
        }
        for p in pattern.members.iter() {
            if out[p.index()].is_none() {
                out[p.index()] = Some(pattern.clone());
            }
        }
    }
    Ok(out)
}

pub fn spec_ast_topological(spec: &BezoutSpectrum) -> Result<PointSet> {
    let excluded = topological_exclusions(spec)?;
    spec.poset().set_from_ids(
        spec.poset()
            .points()
            .filter(|p| excluded[p.index()].is_none()),
    )
}

/// First nested pair below `p` whose ideals have disjoint minimal primes.
/// The root is never excluded.
pub fn min_criterion_exclusion(spec: &BezoutSpectrum, p: PointId) -> Result<Option<NestedPair>> {
    if p == spec.root() {
        spec.poset().check_point(p)?;
        return Ok(None);
    }
    let poset = spec.poset();
    for pair in spec.nested_pairs(p)? {
        let min_sub = poset.minimal_elements(&pair.sub_ideal.members)?;
        let min_super = poset.minimal_elements(&pair.super_ideal.members)?;
        if min_sub.is_disjoint(&min_super) {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

pub fn spec_ast_min_criterion(spec: &BezoutSpectrum) -> Result<PointSet> {
    let mut out = spec.poset().empty_set();
    for p in spec.poset().points() {
        if min_criterion_exclusion(spec, p)?.is_none() {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Verdicts of the three criteria at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVerdicts {
    pub point: PointId,
    pub height: usize,
    pub oracle: Verdict,
    pub topological: Verdict,
    pub min_criterion: Verdict,
}

impl PointVerdicts {
    pub fn agree(&self) -> bool {
        self.oracle == self.topological && self.topological == self.min_criterion
    }
}

/// Witnesses explaining why a point is excluded, one per criterion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Exclusion {
    /// An element of the prime that becomes a unit in `D*`.
    pub oracle: Option<GroupElement>,
    /// A closed set through the point whose rim closure is not dense.
    pub topological: Option<VSetPattern>,
    /// Nested ideals inside the point with disjoint minimal primes.
    pub min_criterion: Option<NestedPair>,
}

impl Exclusion {
    pub fn is_empty(&self) -> bool {
        self.oracle.is_none() && self.topological.is_none() && self.min_criterion.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct CriteriaReport {
    pub verdicts: Vec<PointVerdicts>,
    pub exclusions: Vec<Exclusion>,
    pub oracle: PointSet,
    pub topological: PointSet,
    pub min_criterion: PointSet,
    /// Points all three criteria keep.
    pub agreed: PointSet,
    pub agreement: bool,
    pub cic: bool,
    /// Every nonempty realizable closed set has a dense rim closure.
    pub cic_by_rim_density: bool,
    /// Every realizable nested pair has intersecting minimal primes.
    pub cic_by_min_pairs: bool,
    pub max_height: usize,
}

impl CriteriaReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &PointVerdicts> {
        self.verdicts.iter().filter(|v| !v.agree())
    }
}

/// Runs all three criteria and assembles the report.
pub fn cross_validate(spec: &BezoutSpectrum) -> Result<CriteriaReport> {
    cross_validate_with_fault(spec, None)
}

/// Like [`cross_validate`], but flips the topological verdict at
/// `flipped` to exercise the failure path.
pub fn cross_validate_with_fault(
    spec: &BezoutSpectrum,
    flipped: Option<PointId>,
) -> Result<CriteriaReport> {
    let poset = spec.poset();
    if let Some(p) = flipped {
        poset.check_point(p)?;
    }
    let topo = topological_exclusions(spec)?;

    let mut verdicts = Vec::with_capacity(poset.len());
    let mut exclusions = Vec::with_capacity(poset.len());
    let mut oracle = poset.empty_set();
    let mut topological = poset.empty_set();
    let mut min_criterion = poset.empty_set();
    for p in poset.points() {
        let exclusion = Exclusion {
            oracle: spec.unit_in_closure_witness(p),
            topological: topo[p.index()].clone(),
            min_criterion: min_criterion_exclusion(spec, p)?,
        };
        let mut v = PointVerdicts {
            point: p,
            height: poset.height(p)?,
            oracle: Verdict::of(exclusion.oracle.is_none()),
            topological: Verdict::of(exclusion.topological.is_none()),
            min_criterion: Verdict::of(exclusion.min_criterion.is_none()),
        };
        if flipped == Some(p) {
            v.topological = v.topological.flip();
        }
        for (set, verdict) in [
            (&mut oracle, v.oracle),
            (&mut topological, v.topological),
            (&mut min_criterion, v.min_criterion),
        ] {
            if verdict.is_in() {
                set.insert(p);
            }
        }
        verdicts.push(v);
        exclusions.push(exclusion);
    }

    let agreed = oracle
        .intersection(&topological)
        .intersection(&min_criterion);
    let agreement = oracle == topological && topological == min_criterion;
    let max_height = agreed
        .iter()
        .map(|p| verdicts[p.index()].height)
        .max()
        .unwrap_or(0);

    Ok(CriteriaReport {
        cic: agreed.len() == poset.len(),
        cic_by_rim_density: cic_by_rim_density(spec)?,
        cic_by_min_pairs: cic_by_min_pairs(spec)?,
        verdicts,
        exclusions,
        oracle,
        topological,
        min_criterion,
        agreed,
        agreement,
        max_height,
    })
}

/// Complete integral closedness read off the rim closures alone.
pub fn cic_by_rim_density(spec: &BezoutSpectrum) -> Result<bool> {
    let poset = spec.poset();
    for pattern in spec.enumerate_v_sets() {
        if !pattern.members.is_empty() && !poset.is_dense(&poset.rim_closure(&pattern.members)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete integral closedness read off minimal primes of nested pairs.
pub fn cic_by_min_pairs(spec: &BezoutSpectrum) -> Result<bool> {
    let poset = spec.poset();
    for p in poset.points().filter(|&p| p != spec.root()) {
        for pair in spec.nested_pairs(p)? {
            let a = poset.minimal_elements(&pair.sub_ideal.members)?;
            let b = poset.minimal_elements(&pair.super_ideal.members)?;
            if a.is_disjoint(&b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every point of the agreed set has height at most one.
pub fn check_height_bound(report: &CriteriaReport, spec: &BezoutSpectrum) -> bool {
    report
        .agreed
        .iter()
        .all(|p| spec.poset().height(p).is_ok_and(|h| h <= 1))
}

pub fn is_downward_closed(spec: &BezoutSpectrum, x: &PointSet) -> bool {
    let poset = spec.poset();
    x.iter().all(|p| poset.strictly_below(p).is_subset(x))
}

/// Whether `iso` carries the agreed set of `a` onto the agreed set of `b`.
pub fn check_phi_invariance(
    a: &BezoutSpectrum,
    b: &BezoutSpectrum,
    iso: &[PointId],
) -> Result<bool> {
    a.poset().verify_isomorphism(b.poset(), iso)?;
    let left = cross_validate(a)?;
    let right = cross_validate(b)?;
    Ok(a.poset().image(iso, &left.agreed)? == right.agreed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Disagreement,
    HeightBound,
    NotDownwardClosed,
    RootMissing,
    CicMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub point: Option<PointId>,
    pub detail: String,
}

/// Everything that should never happen on a finite model.
pub fn violations(report: &CriteriaReport, spec: &BezoutSpectrum) -> Vec<Violation> {
    let poset = spec.poset();
    let mut out = Vec::new();
    for v in report.disagreements() {
        out.push(Violation {
            kind: ViolationKind::Disagreement,
            point: Some(v.point),
            detail: format!(
                "{}: oracle={:?} topological={:?} min_criterion={:?}",
                poset.name(v.point),
                v.oracle,
                v.topological,
                v.min_criterion
            ),
        });
    }
    for p in report.agreed.iter() {
        if report.verdicts[p.index()].height > 1 {
            out.push(Violation {
                kind: ViolationKind::HeightBound,
                point: Some(p),
                detail: format!(
                    "{} has height {}",
                    poset.name(p),
                    report.verdicts[p.index()].height
                ),
            });
        }
    }
    for (label, set) in [
        ("oracle", &report.oracle),
        ("topological", &report.topological),
        ("min_criterion", &report.min_criterion),
        ("agreed", &report.agreed),
    ] {
        if !is_downward_closed(spec, set) {
            out.push(Violation {
                kind: ViolationKind::NotDownwardClosed,
                point: None,
                detail: format!(
                    "{label} set {:?} is not downward closed",
                    poset.names_of(set)
                ),
            });
        }
        if !set.contains(spec.root()) {
            out.push(Violation {
                kind: ViolationKind::RootMissing,
                point: Some(spec.root()),
                detail: format!("{label} set omits the root"),
            });
        }
    }
    if report.cic != report.cic_by_rim_density || report.cic != report.cic_by_min_pairs {
        out.push(Violation {
            kind: ViolationKind::CicMismatch,
            point: None,
            detail: format!(
                "cic={} rim_density={} min_pairs={}",
                report.cic, report.cic_by_rim_density, report.cic_by_min_pairs
            ),
        });
    }
    out
}
