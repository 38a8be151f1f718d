//! Grid search over tabu tenure / EO tau, and the published default parameters.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::eval::{benchmark, BestKnownRegistry, Instance, ProtocolConfig, Solver};
use crate::generate::{Family, WeightScheme};
use crate::solvers::SolverKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GridParameter {
    Tenure,
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub parameter: GridParameter,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    /// Tenure 20, 30, ..., 150.
    pub fn tenure_default() -> Self {
        Self { parameter: GridParameter::Tenure, start: 20.0, stop: 150.0, step: 10.0 }
    }

    /// Tau 1.1, 1.2, ..., 1.9.
    pub fn tau_default() -> Self {
        Self { parameter: GridParameter::Tau, start: 1.1, stop: 1.9, step: 0.1 }
    }

    /// Parses `start:stop:step`.
    pub fn parse(parameter: GridParameter, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(invalid(format!("grid must be start:stop:step, got '{s}'")));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("bad grid value '{t}'")));
        let grid = Self { parameter, start: num(a)?, stop: num(b)?, step: num(c)? };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(invalid("grid bounds must be finite"));
        }
        if self.start > self.stop || self.step <= 0.0 {
            return Err(invalid("grid needs start <= stop and step > 0"));
        }
        Ok(())
    }

    /// `floor((stop - start) / step) + 1` evenly spaced values.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                (x * 1e9).round() / 1e9
            })
            .collect()
    }

    fn solver_at(&self, x: f64) -> Solver {
        match self.parameter {
            GridParameter::Tenure => Solver::Tabu { tenure: x.round() as usize },
            GridParameter::Tau => Solver::Eo { tau: x },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningRow {
    pub param: f64,
    pub mean_ratio: f64,
    pub std_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningResult {
    pub best_param: f64,
    pub table: Vec<TuningRow>,
}

impl TuningResult {
    /// `param,mean_ratio,std_ratio` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,mean_ratio,std_ratio\n");
        for row in &self.table {
            let _ = writeln!(out, "{},{},{}", row.param, row.mean_ratio, row.std_ratio);
        }
        out
    }
}

/// Evaluates every grid point on the validation set and returns the point
/// with the highest mean ratio, ties going to the smaller parameter. All
/// points are benchmarked together, so best-found normalization is shared.
pub fn grid_search(
    kind: SolverKind,
    grid: &GridSpec,
    validation: &[Instance],
    protocol: &ProtocolConfig,
    registry: &BestKnownRegistry,
) -> Result<TuningResult> {
    grid.validate()?;
    match (kind, grid.parameter) {
        (SolverKind::Tabu, GridParameter::Tenure) | (SolverKind::Eo, GridParameter::Tau) => {}
        _ => return Err(invalid(format!("{kind} cannot be tuned over {:?}", grid.parameter))),
    }
    if validation.is_empty() {
        return Err(invalid("validation set is empty"));
    }
    let points = grid.points();
    let solvers: Vec<Solver> = points.iter().map(|&x| grid.solver_at(x)).collect();
    let report = benchmark(&solvers, validation, protocol, registry)?;

    let mut table = Vec::with_capacity(points.len());
    for (x, solver) in points.iter().zip(&solvers) {
        let label = solver.to_string();
        let ratios: Vec<f64> = report
            .records
            .iter()
            .filter(|r| r.solver == label)
            .filter_map(|r| r.ratio)
            .collect();
        let (mean, std) = crate::eval::benchmark_mean_std(&ratios);
        table.push(TuningRow {
            param: *x,
            mean_ratio: mean.unwrap_or(0.0),
            std_ratio: std.unwrap_or(0.0),
        });
    }
    let best = table
        .iter()
        .fold(None::<&TuningRow>, |acc, row| match acc {
            Some(b) if b.mean_ratio >= row.mean_ratio => Some(b),
            _ => Some(row),
        })
        .expect("grid has at least one point");
    Ok(TuningResult { best_param: best.param, table })
}

/// One row of the published tenure/tau defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedDefault {
    pub graph: &'static str,
    pub family: Family,
    pub weighted: bool,
    /// Inclusive vertex-count range the row applies to.
    pub nodes: (usize, usize),
    pub tenure: usize,
    pub tau: f64,
}

const fn row(
    graph: &'static str,
    family: Family,
    weighted: bool,
    nodes: (usize, usize),
    tenure: usize,
    tau: f64,
) -> PublishedDefault {
    PublishedDefault { graph, family, weighted, nodes, tenure, tau }
}

pub const PUBLISHED_DEFAULTS: [PublishedDefault; 16] = [
    row("GSet (ER)", Family::GsetEr, false, (800, 800), 80, 1.4),
    row("GSet (Skew)", Family::GsetSkew, false, (800, 800), 90, 1.4),
    row("BA", Family::Ba, false, (800, 800), 110, 1.3),
    row("WS", Family::Ws, false, (800, 800), 140, 1.4),
    row("HK", Family::Hk, false, (800, 800), 100, 1.4),
    row("Phase Transition", Family::PhaseTransition, false, (100, 200), 20, 1.8),
    row("GSet (ER)", Family::GsetEr, true, (800, 800), 30, 1.7),
    row("GSet (Skew)", Family::GsetSkew, true, (800, 800), 90, 1.4),
    row("GSet (Toroidal)", Family::GsetToroidal, true, (800, 800), 100, 1.4),
    row("BA", Family::Ba, true, (800, 800), 120, 1.2),
    row("WS", Family::Ws, true, (800, 800), 110, 1.3),
    row("HK", Family::Hk, true, (800, 800), 110, 1.2),
    row("Barrett et al. (ER)", Family::Er, true, (200, 200), 10, 1.9),
    row("Barrett et al. (BA)", Family::Ba, true, (200, 200), 20, 1.6),
    row("SK spin-glass", Family::SkSpinGlass, true, (70, 100), 20, 1.8),
    row("Physics (Regular)", Family::PhysicsRegular, true, (125, 125), 20, 1.4),
];

/// Published `(tenure, tau)` for a family and weight scheme. When a family
/// has rows at several sizes, the row whose node range is nearest `n` wins.
pub fn default_params(family: Family, weights: WeightScheme, n: usize) -> Result<(usize, f64)> {
    let distance = |r: &PublishedDefault| {
        if n < r.nodes.0 {
            r.nodes.0 - n
        } else {
            n.saturating_sub(r.nodes.1)
        }
    };
    PUBLISHED_DEFAULTS
        .iter()
        .filter(|r| r.family == family && r.weighted == weights.is_weighted())
        .min_by_key(|r| distance(r))
        .map(|r| (r.tenure, r.tau))
        .ok_or_else(|| Error::NoDefault(format!("{family} ({})", weights.label())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_batch, DistributionSpec};

    #[test]
    fn grid_sizes() {
        assert_eq!(GridSpec::tenure_default().points().len(), 14);
        let taus = GridSpec::tau_default().points();
        assert_eq!(taus.len(), 9);
        assert_eq!(taus[1], 1.2);
        assert_eq!(taus[8], 1.9);
        let single = GridSpec { parameter: GridParameter::Tenure, start: 5.0, stop: 5.0, step: 1.0 };
        assert_eq!(single.points(), vec![5.0]);
        assert!(GridSpec::parse(GridParameter::Tau, "1.9:1.1:0.1").is_err());
        assert!(GridSpec::parse(GridParameter::Tau, "1.1:1.9:0").is_err());
        assert_eq!(GridSpec::parse(GridParameter::Tenure, "20:150:10").unwrap(), GridSpec::tenure_default());
    }

    #[test]
    fn spec_examples() {
        assert_eq!(default_params(Family::Ba, WeightScheme::Unweighted01, 800).unwrap(), (110, 1.3));
        assert_eq!(default_params(Family::Ws, WeightScheme::Signed0Pm1, 800).unwrap(), (110, 1.3));
        assert_eq!(default_params(Family::PhysicsRegular, WeightScheme::SignedPm1, 125).unwrap(), (20, 1.4));
        assert_eq!(default_params(Family::GsetEr, WeightScheme::Unweighted01, 800).unwrap(), (80, 1.4));
        assert_eq!(default_params(Family::GsetEr, WeightScheme::Signed0Pm1, 800).unwrap(), (30, 1.7));
        assert_eq!(default_params(Family::SkSpinGlass, WeightScheme::SignedPm1, 85).unwrap(), (20, 1.8));
        assert_eq!(default_params(Family::Ba, WeightScheme::Signed0Pm1, 200).unwrap(), (20, 1.6));
        assert!(matches!(
            default_params(Family::PhaseTransition, WeightScheme::Signed0Pm1, 150),
            Err(Error::NoDefault(_))
        ));
        assert!(default_params(Family::Er, WeightScheme::Unweighted01, 200).is_err());
    }

    #[test]
    fn single_point_grid_returns_it() {
        let spec = DistributionSpec::new(Family::Er).with_n(16);
        let validation: Vec<Instance> = generate_batch(&spec, 3, 0)
            .unwrap()
            .into_iter()
            .map(|g| Instance::new("er", g))
            .collect();
        let grid = GridSpec { parameter: GridParameter::Tau, start: 1.5, stop: 1.5, step: 0.1 };
        let protocol = ProtocolConfig { episodes: 3, ..ProtocolConfig::default() };
        let out = grid_search(SolverKind::Eo, &grid, &validation, &protocol, &BestKnownRegistry::best_found()).unwrap();
        assert_eq!(out.best_param, 1.5);
        assert_eq!(out.table.len(), 1);
        assert!(out.to_csv().starts_with("param,mean_ratio,std_ratio\n1.5,"));
        assert!(grid_search(SolverKind::Tabu, &grid, &validation, &protocol, &BestKnownRegistry::best_found()).is_err());
        assert!(grid_search(SolverKind::Eo, &grid, &[], &protocol, &BestKnownRegistry::best_found()).is_err());
    }
}
