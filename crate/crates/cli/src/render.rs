//! Human-readable and JSON renderings.

use serde::Serialize;
use spectral_cic::bezout_model::{BezoutSpectrum, FilterPath, PrimeFilter};
use spectral_cic::report::{PatternEntry, ReportDocument};
use spectral_cic::LGroupDescriptor;

#[derive(Debug, Serialize)]
pub struct SpectrumDocument {
    pub model: LGroupDescriptor,
    pub points: Vec<SpectrumPoint>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumPoint {
    pub id: String,
    pub height: usize,
    pub filter: Option<PrimeFilter>,
}

impl SpectrumDocument {
    pub fn new(spec: &BezoutSpectrum) -> Self {
        let poset = spec.poset();
        SpectrumDocument {
            model: spec.descriptor().clone(),
            points: poset
                .points()
                .map(|p| SpectrumPoint {
                    id: poset.name(p).to_string(),
                    height: poset.height(p).expect("own point"),
                    filter: spec.filter(p).cloned(),
                })
                .collect(),
            edges: poset
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (poset.name(a).to_string(), poset.name(b).to_string()))
                .collect(),
        }
    }
}

fn filter_tag(filter: Option<&PrimeFilter>) -> String {
    fn path(p: &FilterPath) -> String {
        match p {
            FilterPath::Level(j) => format!("level {j}"),
            FilterPath::Component { index, inner } => {
                format!("component {} / {}", index + 1, path(inner))
            }
        }
    }
    filter.map_or_else(|| "zero ideal".to_string(), |f| path(f.path()))
}

pub fn spectrum_text(doc: &SpectrumDocument) -> String {
    let width = doc
        .points
        .iter()
        .map(|p| p.id.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = format!("model: {}\npoints:\n", doc.model);
    for p in &doc.points {
        out.push_str(&format!(
            "  {:width$}  height {}  {}\n",
            p.id,
            p.height,
            filter_tag(p.filter.as_ref())
        ));
    }
    out.push_str("edges:\n");
    for (a, b) in &doc.edges {
        out.push_str(&format!("  {a} -> {b}\n"));
    }
    out
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn pattern(p: &PatternEntry) -> String {
    match &p.witness {
        Some(g) => format!("V{g} = {}", braces(&p.members)),
        None => format!("V(0) = {}", braces(&p.members)),
    }
}

pub fn report_text(doc: &ReportDocument) -> String {
    let width = doc
        .points
        .iter()
        .map(|p| p.id.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = format!("model: {}\n", doc.model);
    out.push_str(&format!("  {:width$}  height  oracle  rim  min\n", "point"));
    let v = |x: spectral_cic::criteria::Verdict| if x.is_in() { "in" } else { "out" };
    for p in &doc.points {
        out.push_str(&format!(
            "  {:width$}  {:>6}  {:>6}  {:>3}  {:>3}\n",
            p.id,
            p.height,
            v(p.oracle),
            v(p.topological),
            v(p.min_criterion)
        ));
    }
    out.push_str(&format!("Spec*: {}\n", braces(&doc.spec_ast.agreed)));
    out.push_str(&format!("agreement: {}\n", doc.agreement));
    out.push_str(&format!(
        "cic: {} (rim density: {}, minimal primes: {})\n",
        doc.cic, doc.cic_by_rim_density, doc.cic_by_min_pairs
    ));
    out.push_str(&format!("height bound: {}\n", doc.height_bound));
    for e in &doc.exclusions {
        out.push_str(&format!("excluded {}:\n", e.point));
        if let Some(g) = &e.unit_in_closure {
            out.push_str(&format!("  unit in D*: {g}\n"));
        }
        if let Some(p) = &e.non_dense_rim {
            out.push_str(&format!("  non-dense rim closure of {}\n", pattern(p)));
        }
        if let Some(pair) = &e.disjoint_min_primes {
            out.push_str(&format!(
                "  disjoint minimal primes: {} with Min {}, {} with Min {}\n",
                pattern(&pair.sub_ideal),
                braces(&pair.sub_ideal_min),
                pattern(&pair.super_ideal),
                braces(&pair.super_ideal_min)
            ));
        }
    }
    if doc.violations.is_empty() {
        out.push_str("violations: none\n");
    } else {
        out.push_str("violations:\n");
        for viol in &doc.violations {
            out.push_str(&format!("  {:?}: {}\n", viol.kind, viol.detail));
        }
    }
    out
}
