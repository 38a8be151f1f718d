use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::softtabu::{softtabu_episode, LinearPolicy};
use crate::solvers::{self, SolveOutcome, SolverConfig, SolverKind};

/// A configured heuristic as the harness sees it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Solver {
    ForwardGreedy,
    ReversibleGreedy,
    Tabu { tenure: usize },
    Eo { tau: f64 },
    SoftTabu { policy: LinearPolicy },
}

impl Solver {
    /// Short label used in reports, e.g. `TS` or `EO`.
    pub fn name(&self) -> &'static str {
        match self {
            Solver::ForwardGreedy => "FG",
            Solver::ReversibleGreedy => "RG",
            Solver::Tabu { .. } => "TS",
            Solver::Eo { .. } => "EO",
            Solver::SoftTabu { .. } => "SoftTabu",
        }
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, Solver::ForwardGreedy)
    }

    fn episode(&self, graph: &Graph, steps: usize, seed: u64) -> Result<SolveOutcome> {
        let config = |kind| SolverConfig::new(kind).with_steps(steps).with_seed(seed);
        match self {
            Solver::ForwardGreedy => Ok(solvers::forward_greedy(graph)),
            Solver::ReversibleGreedy => solvers::reversible_greedy(graph, &config(SolverKind::ReversibleGreedy)),
            Solver::Tabu { tenure } => solvers::tabu_search(
                graph,
                &SolverConfig { tenure: *tenure, ..config(SolverKind::Tabu) },
            ),
            Solver::Eo { tau } => {
                solvers::extremal_optimization(graph, &SolverConfig { tau: *tau, ..config(SolverKind::Eo) })
            }
            Solver::SoftTabu { policy } => Ok(softtabu_episode(policy, graph, steps, seed)),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solver::Tabu { tenure } => write!(f, "TS(tenure={tenure})"),
            Solver::Eo { tau } => write!(f, "EO(tau={tau})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOverride {
    pub episodes: Option<usize>,
    pub steps_factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub episodes: usize,
    /// Steps per episode as a multiple of n.
    pub steps_factor: f64,
    /// Keyed by [`Solver::name`].
    pub per_solver_overrides: BTreeMap<String, ProtocolOverride>,
    /// Wall-clock budget per (solver, instance) run, in seconds.
    pub time_limit: Option<f64>,
    pub base_seed: u64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            episodes: 50,
            steps_factor: 2.0,
            per_solver_overrides: BTreeMap::new(),
            time_limit: None,
            base_seed: 0,
        }
    }
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        let check = |episodes: usize, steps_factor: f64| {
            if episodes == 0 || !(steps_factor > 0.0 && steps_factor.is_finite()) {
                return Err(invalid("protocol needs episodes >= 1 and steps_factor > 0"));
            }
            Ok(())
        };
        check(self.episodes, self.steps_factor)?;
        for o in self.per_solver_overrides.values() {
            check(o.episodes.unwrap_or(self.episodes), o.steps_factor.unwrap_or(self.steps_factor))?;
        }
        if let Some(t) = self.time_limit {
            if !(t > 0.0) {
                return Err(invalid("time limit must be positive"));
            }
        }
        Ok(())
    }

    /// `(episodes, steps)` for `solver` on an `n`-vertex graph.
    pub fn budget(&self, solver: &Solver, n: usize) -> (usize, usize) {
        let o = self.per_solver_overrides.get(solver.name()).copied().unwrap_or_default();
        let episodes = if solver.is_deterministic() {
            1
        } else {
            o.episodes.unwrap_or(self.episodes)
        };
        let factor = o.steps_factor.unwrap_or(self.steps_factor);
        (episodes, (factor * n as f64).round() as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub outcome: SolveOutcome,
    pub episodes_completed: usize,
    pub steps_per_episode: usize,
    pub timed_out: bool,
    pub wall_clock_seconds: f64,
}

/// Best of the protocol's episodes. Episode `i` uses seed `base_seed + i`;
/// forward greedy runs once. With a time limit, episodes stop once the
/// budget is spent (at least one always runs) and the result is flagged.
pub fn run_protocol(solver: &Solver, graph: &Graph, protocol: &ProtocolConfig) -> Result<ProtocolOutcome> {
    protocol.validate()?;
    let (episodes, steps) = protocol.budget(solver, graph.n());
    let start = Instant::now();
    let mut best: Option<SolveOutcome> = None;
    let mut completed = 0;
    let mut timed_out = false;
    for i in 0..episodes {
        if let (Some(limit), true) = (protocol.time_limit, i > 0) {
            if start.elapsed().as_secs_f64() > limit {
                timed_out = true;
                break;
            }
        }
        let out = solver.episode(graph, steps, protocol.base_seed.wrapping_add(i as u64))?;
        completed += 1;
        if best.as_ref().is_none_or(|b| out.best_value > b.best_value) {
            best = Some(out);
        }
    }
    Ok(ProtocolOutcome {
        outcome: best.expect("at least one episode"),
        episodes_completed: completed,
        steps_per_episode: steps,
        timed_out,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}
