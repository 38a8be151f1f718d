use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::protocol::{run_protocol, ProtocolConfig, Solver};
use super::registry::{BestKnownRegistry, Provenance};
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// A graph tagged with the distribution it was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub distribution: String,
    pub graph: Graph,
}

impl Instance {
    pub fn new(distribution: impl Into<String>, graph: Graph) -> Self {
        Self {
            distribution: distribution.into(),
            graph,
        }
    }

    pub fn name(&self) -> &str {
        self.graph.name()
    }
}

/// `value / best_known`, undefined when `best_known <= 0`.
pub fn approx_ratio(value: i64, best_known: i64) -> Option<f64> {
    (best_known > 0).then(|| value as f64 / best_known as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance: String,
    pub distribution: String,
    pub solver: String,
    pub best_value: i64,
    pub best_known: i64,
    pub best_known_provenance: Provenance,
    /// `None` when the instance is excluded because `best_known <= 0`.
    pub ratio: Option<f64>,
    pub episodes: usize,
    pub steps: usize,
    pub timed_out: bool,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub solver: String,
    pub distribution: String,
    /// Mean over counted instances; `None` if every instance was excluded.
    pub mean_ratio: Option<f64>,
    /// Population standard deviation across instances.
    pub std_ratio: Option<f64>,
    pub ratios: Vec<f64>,
    pub excluded: Vec<String>,
    pub episodes: usize,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub summaries: Vec<SolverSummary>,
    pub records: Vec<InstanceRecord>,
}

impl BenchmarkReport {
    pub fn summary(&self, solver: &str, distribution: &str) -> Option<&SolverSummary> {
        self.summaries
            .iter()
            .find(|s| s.solver == solver && s.distribution == distribution)
    }
}

pub(crate) fn mean_std(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (Some(mean), Some(var.sqrt()))
}

/// Runs every solver on every instance under `protocol` and normalizes by the
/// registry. EXTERNAL and BRUTE_FORCE entries are used as-is; otherwise, with
/// `best_found_fallback`, the denominator is the best value any solver reached
/// on the instance in this run (or a larger recorded BEST_FOUND value).
///
/// Runs execute in parallel; results are ordered by (instance, solver).
pub fn benchmark(
    solvers: &[Solver],
    instances: &[Instance],
    protocol: &ProtocolConfig,
    registry: &BestKnownRegistry,
) -> Result<BenchmarkReport> {
    if instances.is_empty() {
        return Err(invalid("benchmark needs at least one instance"));
    }
    if solvers.is_empty() {
        return Err(invalid("benchmark needs at least one solver"));
    }
    protocol.validate()?;
    if !registry.best_found_fallback {
        if let Some(missing) = instances.iter().find(|i| registry.get(i.name()).is_none()) {
            return Err(invalid(format!("no best-known value for instance '{}'", missing.name())));
        }
    }

    let jobs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..solvers.len()).map(move |s| (i, s)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(i, s)| run_protocol(&solvers[s], &instances[i].graph, protocol))
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::with_capacity(runs.len());
    for (i, inst) in instances.iter().enumerate() {
        let row = &runs[i * solvers.len()..(i + 1) * solvers.len()];
        let found = row.iter().map(|r| r.outcome.best_value).max().expect("solvers nonempty");
        let (best_known, provenance) = match registry.get(inst.name()) {
            Some(e) if e.provenance > Provenance::BestFound => (e.value, e.provenance),
            Some(e) if registry.best_found_fallback => (e.value.max(found), Provenance::BestFound),
            Some(e) => (e.value, e.provenance),
            None => (found, Provenance::BestFound),
        };
        for (solver, run) in solvers.iter().zip(row) {
            records.push(InstanceRecord {
                instance: inst.name().to_string(),
                distribution: inst.distribution.clone(),
                solver: solver.to_string(),
                best_value: run.outcome.best_value,
                best_known,
                best_known_provenance: provenance,
                ratio: approx_ratio(run.outcome.best_value, best_known),
                episodes: run.episodes_completed,
                steps: run.steps_per_episode,
                timed_out: run.timed_out,
                wall_clock_seconds: run.wall_clock_seconds,
            });
        }
    }

    Ok(BenchmarkReport {
        summaries: summarize(&records),
        records,
    })
}

pub(crate) fn summarize(records: &[InstanceRecord]) -> Vec<SolverSummary> {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in records {
        let key = (r.solver.clone(), r.distribution.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    // Solver-major order, keeping first-appearance order within each.
    let mut solver_order: Vec<&str> = Vec::new();
    for (s, _) in &keys {
        if !solver_order.contains(&s.as_str()) {
            solver_order.push(s);
        }
    }
    let mut ordered: Vec<(String, String)> = Vec::with_capacity(keys.len());
    for s in solver_order {
        ordered.extend(keys.iter().filter(|(k, _)| k == s).cloned());
    }

    ordered
        .into_iter()
        .map(|(solver, distribution)| {
            let mine: Vec<&InstanceRecord> = records
                .iter()
                .filter(|r| r.solver == solver && r.distribution == distribution)
                .collect();
            let ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio).collect();
            let excluded = mine
                .iter()
                .filter(|r| r.ratio.is_none())
                .map(|r| r.instance.clone())
                .collect();
            let (mean_ratio, std_ratio) = mean_std(&ratios);
            SolverSummary {
                mean_ratio,
                std_ratio,
                ratios,
                excluded,
                episodes: mine.iter().map(|r| r.episodes).sum(),
                wall_clock_seconds: mine.iter().map(|r| r.wall_clock_seconds).sum(),
                solver,
                distribution,
            }
        })
        .collect()
}

/// BEST_FOUND registry holding the best value any run reached per instance.
pub fn tune_registry_from_runs(report: &BenchmarkReport) -> BestKnownRegistry {
    let mut reg = BestKnownRegistry::best_found();
    for r in &report.records {
        reg.record(r.instance.clone(), r.best_value, Provenance::BestFound);
    }
    reg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_batch, DistributionSpec, Family};

    fn instances(count: usize, n: usize) -> Vec<Instance> {
        let spec = DistributionSpec::new(Family::Er).with_n(n);
        generate_batch(&spec, count, 5)
            .unwrap()
            .into_iter()
            .map(|g| Instance::new("er", g))
            .collect()
    }

    fn quick() -> ProtocolConfig {
        ProtocolConfig { episodes: 5, ..ProtocolConfig::default() }
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(approx_ratio(7, 7), Some(1.0));
        assert_eq!(approx_ratio(95, 100), Some(0.95));
        assert_eq!(approx_ratio(3, 0), None);
        assert_eq!(approx_ratio(3, -2), None);
    }

    #[test]
    fn single_solver_self_normalizes() {
        let report = benchmark(
            &[Solver::Tabu { tenure: 10 }],
            &instances(4, 20),
            &quick(),
            &BestKnownRegistry::best_found(),
        )
        .unwrap();
        let s = &report.summaries[0];
        assert_eq!(s.ratios, vec![1.0; 4]);
        assert_eq!((s.mean_ratio, s.std_ratio), (Some(1.0), Some(0.0)));
    }

    #[test]
    fn best_found_ratios_never_exceed_one() {
        let solvers = [Solver::ForwardGreedy, Solver::ReversibleGreedy, Solver::Eo { tau: 1.4 }];
        let report = benchmark(&solvers, &instances(5, 25), &quick(), &BestKnownRegistry::best_found()).unwrap();
        for r in &report.records {
            assert!(r.ratio.unwrap() <= 1.0);
        }
        for s in &report.summaries {
            let (m, sd) = mean_std(&s.ratios);
            assert!((m.unwrap() - s.mean_ratio.unwrap()).abs() < 1e-12);
            assert!((sd.unwrap() - s.std_ratio.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn external_values_take_precedence() {
        let inst = instances(1, 15);
        let mut reg = BestKnownRegistry::new();
        reg.record(inst[0].name(), 1000, Provenance::External);
        let report = benchmark(&[Solver::ForwardGreedy], &inst, &quick(), &reg).unwrap();
        assert_eq!(report.records[0].best_known, 1000);
        assert_eq!(report.records[0].best_known_provenance, Provenance::External);
    }

    #[test]
    fn non_positive_denominator_is_excluded() {
        let g = Graph::new(3, [(0, 1, -1), (1, 2, -1)]).unwrap().with_name("neg");
        let report = benchmark(
            &[Solver::ReversibleGreedy],
            &[Instance::new("neg", g)],
            &quick(),
            &BestKnownRegistry::best_found(),
        )
        .unwrap();
        assert_eq!(report.records[0].ratio, None);
        assert_eq!(report.summaries[0].excluded, vec!["neg".to_string()]);
        assert_eq!(report.summaries[0].mean_ratio, None);
    }

    #[test]
    fn errors() {
        let p = quick();
        assert!(benchmark(&[Solver::ForwardGreedy], &[], &p, &BestKnownRegistry::best_found()).is_err());
        assert!(benchmark(&[Solver::ForwardGreedy], &instances(1, 10), &p, &BestKnownRegistry::new()).is_err());
    }

    #[test]
    fn registry_from_runs() {
        let report = benchmark(
            &[Solver::ForwardGreedy, Solver::Tabu { tenure: 5 }],
            &instances(3, 15),
            &quick(),
            &BestKnownRegistry::best_found(),
        )
        .unwrap();
        let reg = tune_registry_from_runs(&report);
        for r in &report.records {
            let e = reg.get(&r.instance).unwrap();
            assert!(e.value >= r.best_value);
            assert_eq!(e.value, r.best_known);
        }
        let mut again = reg.clone();
        again.merge(&tune_registry_from_runs(&report));
        assert_eq!(again, reg);
    }
}
