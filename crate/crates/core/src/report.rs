//! Serializable form of a [`CriteriaReport`].

use serde::Serialize;

use crate::bezout_model::{BezoutSpectrum, NestedPair, PrimeFilter, VSetPattern};
use crate::criteria::{
    check_height_bound, violations, CriteriaReport, Exclusion, Verdict, ViolationKind,
};
use crate::lgroup::{GroupElement, LGroupDescriptor};
use crate::spectral_poset::PointSet;

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub model: LGroupDescriptor,
    pub points: Vec<PointEntry>,
    pub spec_ast: SpecAstEntry,
    pub agreement: bool,
    pub cic: bool,
    pub cic_by_rim_density: bool,
    pub cic_by_min_pairs: bool,
    pub height_bound: bool,
    pub max_height: usize,
    pub exclusions: Vec<ExclusionEntry>,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointEntry {
    pub id: String,
    pub height: usize,
    pub filter: Option<PrimeFilter>,
    pub covers: Vec<String>,
    pub oracle: Verdict,
    pub topological: Verdict,
    pub min_criterion: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecAstEntry {
    pub oracle: Vec<String>,
    pub topological: Vec<String>,
    pub min_criterion: Vec<String>,
    pub agreed: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternEntry {
    pub members: Vec<String>,
    /// `None` stands for the zero ideal.
    pub witness: Option<GroupElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEntry {
    pub sub_ideal: PatternEntry,
    pub super_ideal: PatternEntry,
    pub sub_ideal_min: Vec<String>,
    pub super_ideal_min: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExclusionEntry {
    pub point: String,
    pub unit_in_closure: Option<GroupElement>,
    pub non_dense_rim: Option<PatternEntry>,
    pub disjoint_min_primes: Option<PairEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationEntry {
    pub kind: ViolationKind,
    pub point: Option<String>,
    pub detail: String,
    pub counterexample: Option<ExclusionEntry>,
}

impl ReportDocument {
    pub fn new(spec: &BezoutSpectrum, report: &CriteriaReport) -> Self {
        let poset = spec.poset();
        let names = |x: &PointSet| poset.names_of(x);
        let pattern = |v: &VSetPattern| PatternEntry {
            members: names(&v.members),
            witness: v.witness.element().cloned(),
        };
        let pair = |p: &NestedPair| PairEntry {
            sub_ideal: pattern(&p.sub_ideal),
            super_ideal: pattern(&p.super_ideal),
            sub_ideal_min: poset
                .minimal_elements(&p.sub_ideal.members)
                .map(|m| names(&m))
                .unwrap_or_default(),
            super_ideal_min: poset
                .minimal_elements(&p.super_ideal.members)
                .map(|m| names(&m))
                .unwrap_or_default(),
        };
        let exclusion = |point: &str, e: &Exclusion| ExclusionEntry {
            point: point.to_string(),
            unit_in_closure: e.oracle.clone(),
            non_dense_rim: e.topological.as_ref().map(pattern),
            disjoint_min_primes: e.min_criterion.as_ref().map(pair),
        };

        let covers = poset.cover_pairs();
        let points = report
            .verdicts
            .iter()
            .map(|v| PointEntry {
                id: poset.name(v.point).to_string(),
                height: v.height,
                filter: spec.filter(v.point).cloned(),
                covers: covers
                    .iter()
                    .filter(|(_, hi)| *hi == v.point)
                    .map(|(lo, _)| poset.name(*lo).to_string())
                    .collect(),
                oracle: v.oracle,
                topological: v.topological,
                min_criterion: v.min_criterion,
            })
            .collect();

        let exclusions = report
            .exclusions
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_empty())
            .map(|(i, e)| exclusion(&poset.names()[i], e))
            .collect();

        let violations = violations(report, spec)
            .into_iter()
            .map(|v| {
                let point = v.point.map(|p| poset.name(p).to_string());
                let counterexample = match (v.kind, v.point) {
                    (ViolationKind::Disagreement, Some(p)) => {
                        Some(exclusion(poset.name(p), &report.exclusions[p.index()]))
                    }
                    _ => None,
                };
                ViolationEntry {
                    kind: v.kind,
                    point,
                    detail: v.detail,
                    counterexample,
                }
            })
            .collect();

        ReportDocument {
            model: spec.descriptor().clone(),
            points,
            spec_ast: SpecAstEntry {
                oracle: names(&report.oracle),
                topological: names(&report.topological),
                min_criterion: names(&report.min_criterion),
                agreed: names(&report.agreed),
            },
            agreement: report.agreement,
            cic: report.cic,
            cic_by_rim_density: report.cic_by_rim_density,
            cic_by_min_pairs: report.cic_by_min_pairs,
            height_bound: check_height_bound(report, spec),
            max_height: report.max_height,
            exclusions,
            violations,
        }
    }

    /// Agreement, height bound and downward closure all hold.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}
