//! Seeded bulk checking of random models.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use spectral_cic::criteria::{check_height_bound, cross_validate};
use spectral_cic::random::{random_descriptor, random_subset, relabel};
use spectral_cic::report::ReportDocument;
use spectral_cic::spectral_poset::check_qf_invariance;
use spectral_cic::{BezoutSpectrum, LGroupDescriptor};

const QF_PROBES: usize = 4;

#[derive(Debug, Clone, Copy)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub max_rank: usize,
    pub max_components: usize,
}

#[derive(Debug, Serialize)]
pub struct Iteration {
    pub index: usize,
    pub model: LGroupDescriptor,
    pub passed: bool,
    pub report_hash: String,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub max_rank: usize,
    pub max_components: usize,
    pub passed: usize,
    pub failed: usize,
    pub iterations: Vec<Iteration>,
}

/// Each iteration draws from its own stream so results do not depend on
/// scheduling or on `count`.
fn iteration(config: &FuzzConfig, index: usize) -> Iteration {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let model = random_descriptor(&mut rng, config.max_rank, config.max_components);
    let mut failures = Vec::new();
    let mut report_hash = String::new();

    match BezoutSpectrum::build(model.clone()).and_then(|spec| {
        let report = cross_validate(&spec)?;
        Ok((spec, report))
    }) {
        Err(e) => failures.push(format!("model rejected: {e}")),
        Ok((spec, report)) => {
            let doc = ReportDocument::new(&spec, &report);
            let json = serde_json::to_string(&doc).expect("report serializes");
            report_hash = hex::encode(Sha256::digest(json.as_bytes()));
            failures.extend(doc.violations.iter().map(|v| v.detail.clone()));
            if !check_height_bound(&report, &spec) && doc.violations.is_empty() {
                failures.push("height bound".into());
            }

            let poset = spec.poset();
            let autos = poset.isomorphisms(poset, 64);
            let (copy, iso) = relabel(&mut rng, poset);
            for _ in 0..QF_PROBES {
                let x = random_subset(&mut rng, poset);
                let auto = autos.choose(&mut rng).expect("identity");
                for (dst, map) in [(poset, auto), (&copy, &iso)] {
                    if !check_qf_invariance(poset, dst, map, &x).unwrap_or(false) {
                        failures.push(format!(
                            "rim closure not invariant on {:?}",
                            poset.names_of(&x)
                        ));
                    }
                }
            }
        }
    }

    Iteration {
        index,
        model,
        passed: failures.is_empty(),
        report_hash,
        failures,
    }
}

pub fn run(config: &FuzzConfig) -> FuzzSummary {
    let iterations: Vec<Iteration> = (0..config.count)
        .into_par_iter()
        .map(|i| iteration(config, i))
        .collect();
    let passed = iterations.iter().filter(|it| it.passed).count();
    FuzzSummary {
        seed: config.seed,
        count: config.count,
        max_rank: config.max_rank,
        max_components: config.max_components,
        passed,
        failed: config.count - passed,
        iterations,
    }
}

pub fn summary_text(summary: &FuzzSummary) -> String {
    let mut out = String::new();
    for it in summary.iterations.iter().filter(|it| !it.passed) {
        out.push_str(&format!(
            "#{} {}: {}\n",
            it.index,
            it.model,
            it.failures.join("; ")
        ));
    }
    out.push_str(&format!(
        "fuzz: {} passed, {} failed (seed {}, max rank {}, max components {})\n",
        summary.passed, summary.failed, summary.seed, summary.max_rank, summary.max_components
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterations_do_not_depend_on_count() {
        let small = FuzzConfig {
            count: 1,
            seed: 9,
            max_rank: 3,
            max_components: 3,
        };
        let large = FuzzConfig { count: 5, ..small };
        let a = run(&small);
        let b = run(&large);
        assert_eq!(a.iterations[0].model, b.iterations[0].model);
        assert_eq!(a.iterations[0].report_hash, b.iterations[0].report_hash);
        assert!(b.iterations.iter().all(|it| it.passed));
    }
}
