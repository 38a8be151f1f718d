//! Classical local-search heuristics.
//!
//! Every solver works on a [`CutState`] and reads flip gains from its cache,
//! so evaluating all single-flip neighbours costs O(n) per step.

mod eo;
mod greedy;
mod tabu;

pub use eo::{extremal_optimization, RankSampler};
pub use greedy::{forward_greedy, reversible_greedy};
pub use tabu::tabu_search;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::cut::CutState;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolverKind {
    ForwardGreedy,
    ReversibleGreedy,
    Tabu,
    Eo,
}

impl SolverKind {
    pub fn short_name(self) -> &'static str {
        match self {
            SolverKind::ForwardGreedy => "FG",
            SolverKind::ReversibleGreedy => "RG",
            SolverKind::Tabu => "TS",
            SolverKind::Eo => "EO",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fg" | "forward-greedy" => Ok(SolverKind::ForwardGreedy),
            "rg" | "reversible-greedy" => Ok(SolverKind::ReversibleGreedy),
            "ts" | "tabu" => Ok(SolverKind::Tabu),
            "eo" | "extremal" => Ok(SolverKind::Eo),
            _ => Err(invalid(format!("unknown solver '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InitMode {
    Empty,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub kind: SolverKind,
    /// Tabu tenure. Zero disables the tabu list.
    pub tenure: usize,
    /// EO power-law exponent.
    pub tau: f64,
    pub max_steps: usize,
    pub seed: u64,
    pub init: InitMode,
    pub record_trajectory: bool,
}

impl SolverConfig {
    pub fn new(kind: SolverKind) -> Self {
        Self {
            kind,
            tenure: 20,
            tau: 1.4,
            max_steps: 0,
            seed: 0,
            init: if kind == SolverKind::ForwardGreedy {
                InitMode::Empty
            } else {
                InitMode::Random
            },
            record_trajectory: false,
        }
    }

    pub fn tabu(tenure: usize) -> Self {
        Self {
            tenure,
            ..Self::new(SolverKind::Tabu)
        }
    }

    pub fn eo(tau: f64) -> Self {
        Self {
            tau,
            ..Self::new(SolverKind::Eo)
        }
    }

    pub fn with_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_init(mut self, init: InitMode) -> Self {
        self.init = init;
        self
    }

    pub fn with_trajectory(mut self) -> Self {
        self.record_trajectory = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == SolverKind::Eo && !(self.tau.is_finite() && self.tau > 1.0) {
            return Err(invalid(format!("tau must be finite and > 1, got {}", self.tau)));
        }
        if self.kind == SolverKind::ForwardGreedy && self.init != InitMode::Empty {
            return Err(invalid("forward greedy always starts from the empty set"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub best_value: i64,
    pub best_side: Vec<bool>,
    pub steps_taken: usize,
    /// `(step, best-so-far)` after every step, starting with step 0.
    pub trajectory: Option<Vec<(usize, i64)>>,
}

/// Initial assignment and the rng that continues to drive the search.
pub(crate) fn initial_state(graph: &Graph, init: InitMode, seed: u64) -> (CutState, Rng) {
    let mut rng = rng::stream(seed, rng::SEARCH_STREAM);
    let side = match init {
        InitMode::Empty => vec![false; graph.n()],
        InitMode::Random => (0..graph.n()).map(|_| rng.gen::<bool>()).collect(),
    };
    let state = CutState::new(graph, side).expect("length matches by construction");
    (state, rng)
}

/// Tracks the best assignment seen during a run.
pub(crate) struct BestTracker {
    value: i64,
    side: Vec<bool>,
    trajectory: Option<Vec<(usize, i64)>>,
}

impl BestTracker {
    pub(crate) fn new(state: &CutState, record: bool) -> Self {
        Self {
            value: state.cut_value(),
            side: state.side().to_vec(),
            trajectory: record.then(|| vec![(0, state.cut_value())]),
        }
    }

    pub(crate) fn value(&self) -> i64 {
        self.value
    }

    pub(crate) fn observe(&mut self, state: &CutState, step: usize) {
        if state.cut_value() > self.value {
            self.value = state.cut_value();
            self.side.copy_from_slice(state.side());
        }
        if let Some(t) = &mut self.trajectory {
            t.push((step, self.value));
        }
    }

    pub(crate) fn finish(self, steps_taken: usize) -> SolveOutcome {
        SolveOutcome {
            best_value: self.value,
            best_side: self.side,
            steps_taken,
            trajectory: self.trajectory,
        }
    }
}

/// Dispatches on `config.kind`.
pub fn solve(graph: &Graph, config: &SolverConfig) -> Result<SolveOutcome> {
    config.validate()?;
    Ok(match config.kind {
        SolverKind::ForwardGreedy => forward_greedy(graph),
        SolverKind::ReversibleGreedy => reversible_greedy(graph, config)?,
        SolverKind::Tabu => tabu_search(graph, config)?,
        SolverKind::Eo => extremal_optimization(graph, config)?,
    })
}

pub(crate) fn expect_kind(config: &SolverConfig, kind: SolverKind) -> Result<()> {
    if config.kind != kind {
        return Err(invalid(format!("config is for {}, not {kind}", config.kind)));
    }
    config.validate()
}
