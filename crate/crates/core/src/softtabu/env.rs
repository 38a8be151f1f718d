use std::collections::HashSet;
use std::hash::{DefaultHasher, Hash, Hasher};

use super::{features, reward, FeatureScaler, FeatureVector, LinearPolicy};
use crate::cut::CutState;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::solvers::{initial_state, BestTracker, InitMode, SolveOutcome};

/// One SoftTabu episode on a fixed graph.
pub struct Episode<'g> {
    graph: &'g Graph,
    state: CutState,
    scaler: FeatureScaler,
    best: i64,
    seen_optima: HashSet<u64>,
}

impl<'g> Episode<'g> {
    pub fn new(graph: &'g Graph, state: CutState, steps_per_episode: usize) -> Self {
        let scaler = FeatureScaler::from_initial(&state, steps_per_episode);
        Self {
            graph,
            best: state.cut_value(),
            state,
            scaler,
            seen_optima: HashSet::new(),
        }
    }

    pub fn state(&self) -> &CutState {
        &self.state
    }

    pub fn scaler(&self) -> &FeatureScaler {
        &self.scaler
    }

    pub fn best_value(&self) -> i64 {
        self.best
    }

    pub fn features(&self) -> Vec<FeatureVector> {
        features(&self.state, &self.scaler)
    }

    /// Flips `v` and returns the reward for the transition.
    pub fn step(&mut self, v: usize) -> f64 {
        self.state.flip_unchecked(self.graph, v);
        let prev = self.best;
        self.best = self.best.max(self.state.cut_value());
        let novel = self.at_local_optimum() && self.seen_optima.insert(self.assignment_hash());
        reward(prev, self.best, novel, self.graph.n())
    }

    fn at_local_optimum(&self) -> bool {
        self.state.n() > 0 && self.state.gains().iter().all(|&g| g < 0)
    }

    fn assignment_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.state.side().hash(&mut h);
        h.finish()
    }
}

/// One greedy rollout of `steps` flips from a seeded random assignment.
pub fn softtabu_episode(policy: &LinearPolicy, graph: &Graph, steps: usize, seed: u64) -> SolveOutcome {
    let (state, _) = initial_state(graph, InitMode::Random, seed);
    let mut best = BestTracker::new(&state, false);
    if graph.n() == 0 {
        return best.finish(0);
    }
    let mut episode = Episode::new(graph, state, steps);
    for step in 1..=steps {
        let v = policy.greedy(&episode.features()).expect("n > 0");
        episode.step(v);
        best.observe(episode.state(), step);
    }
    best.finish(steps)
}

/// Best of `episodes` greedy rollouts with seeds `seed, seed + 1, ...`.
pub fn softtabu_solve(
    policy: &LinearPolicy,
    graph: &Graph,
    episodes: usize,
    steps: usize,
    seed: u64,
) -> Result<SolveOutcome> {
    if episodes == 0 {
        return Err(invalid("at least one episode is required"));
    }
    let mut best: Option<SolveOutcome> = None;
    for i in 0..episodes as u64 {
        let out = softtabu_episode(policy, graph, steps, seed.wrapping_add(i));
        if best.as_ref().is_none_or(|b| out.best_value > b.best_value) {
            best = Some(out);
        }
    }
    Ok(best.expect("episodes >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::cut_value;

    fn c5() -> Graph {
        Graph::new(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]).unwrap()
    }

    #[test]
    fn zero_steps_returns_initial_value() {
        let g = c5();
        let out = softtabu_solve(&LinearPolicy::default(), &g, 1, 0, 3).unwrap();
        let (init, _) = initial_state(&g, InitMode::Random, 3);
        assert_eq!(out.best_value, init.cut_value());
    }

    #[test]
    fn zero_policy_never_loses_best() {
        let g = c5();
        let out = softtabu_solve(&LinearPolicy::default(), &g, 3, 10, 0).unwrap();
        assert_eq!(out.best_value, cut_value(&g, &out.best_side).unwrap());
        for seed in 0..3 {
            let (init, _) = initial_state(&g, InitMode::Random, seed);
            assert!(out.best_value >= init.cut_value());
        }
        assert!(softtabu_solve(&LinearPolicy::default(), &g, 0, 10, 0).is_err());
    }

    #[test]
    fn rollouts_are_deterministic() {
        let g = c5();
        let p = LinearPolicy::new([1.0, 0.5], 0.0);
        assert_eq!(softtabu_solve(&p, &g, 4, 10, 7).unwrap(), softtabu_solve(&p, &g, 4, 10, 7).unwrap());
    }

    #[test]
    fn novel_local_optimum_is_rewarded_once() {
        // Path 0-1-2 with a negative edge: {0} alone on one side is a strict
        // local optimum whose value equals the initial best.
        let g = Graph::new(3, [(0, 1, 1), (1, 2, -1)]).unwrap();
        let state = CutState::new(&g, vec![true, false, false]).unwrap();
        let mut ep = Episode::new(&g, state, 10);
        assert_eq!(ep.best_value(), 1);
        assert_eq!(ep.step(2), 0.0); // leaves the optimum, best unchanged
        let r = ep.step(2); // returns to it: first visit counts as new
        assert!((r - super::super::default_eta(3)).abs() < 1e-15);
        ep.step(2);
        assert_eq!(ep.step(2), 0.0);
    }
}
