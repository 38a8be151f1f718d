use super::{expect_kind, initial_state, BestTracker, SolveOutcome, SolverConfig, SolverKind};
use crate::cut::CutState;
use crate::error::Result;
use crate::graph::Graph;

/// Starts from S = ∅ and adds the best remaining vertex while its gain is
/// positive. Vertices never leave S, so the run is deterministic.
pub fn forward_greedy(graph: &Graph) -> SolveOutcome {
    let mut state = CutState::empty(graph);
    let mut best = BestTracker::new(&state, true);
    let mut steps = 0;
    loop {
        let side = state.side().to_vec();
        let Some(v) = state.argmax_gain(|v| !side[v]) else {
            break;
        };
        if state.gain(v) <= 0 {
            break;
        }
        state.flip_unchecked(graph, v);
        steps += 1;
        best.observe(&state, steps);
    }
    best.finish(steps)
}

/// Flips the max-gain vertex while that gain is non-negative, stopping at
/// the first strict local optimum or after `max_steps` flips.
pub fn reversible_greedy(graph: &Graph, config: &SolverConfig) -> Result<SolveOutcome> {
    expect_kind(config, SolverKind::ReversibleGreedy)?;
    let (mut state, _) = initial_state(graph, config.init, config.seed);
    let mut best = BestTracker::new(&state, config.record_trajectory);
    let mut steps = 0;
    while steps < config.max_steps {
        let Some(v) = state.argmax_gain(|_| true) else {
            break;
        };
        if state.gain(v) < 0 {
            break;
        }
        state.flip_unchecked(graph, v);
        steps += 1;
        best.observe(&state, steps);
    }
    Ok(best.finish(steps))
}
