//! SoftTabu: a linear Q-function over two per-vertex features, marginal gain
//! and time since last flip, trained with one-step Q-learning.

mod env;
mod train;

pub use env::{softtabu_episode, softtabu_solve, Episode};
pub use train::{td_update, train, TrainConfig, TrainOutcome, Transition};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::cut::CutState;
use crate::rng::Rng;

/// `[gain_norm, time_norm]` for one vertex.
pub type FeatureVector = [f64; 2];

/// Per-episode normalization constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureScaler {
    /// `max(1, max_v |gain(v)|)` at the start of the episode.
    pub gain_scale: f64,
    pub steps_per_episode: usize,
}

impl FeatureScaler {
    pub fn from_initial(state: &CutState, steps_per_episode: usize) -> Self {
        let max_abs = state.gains().iter().map(|g| g.abs()).max().unwrap_or(0);
        Self {
            gain_scale: max_abs.max(1) as f64,
            steps_per_episode: steps_per_episode.max(1),
        }
    }
}

/// Normalized gain and time-since-flip for every vertex. Vertices that have
/// never moved get a time feature of 1.
pub fn features(state: &CutState, scaler: &FeatureScaler) -> Vec<FeatureVector> {
    let step = state.step();
    let horizon = scaler.steps_per_episode as f64;
    (0..state.n())
        .map(|v| {
            let g = state.gain(v) as f64 / scaler.gain_scale;
            let t = match state.last_flip(v) {
                None => 1.0,
                Some(s) => ((step - s) as f64 / horizon).min(1.0),
            };
            [g, t]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LinearPolicy {
    pub weights: [f64; 2],
    pub bias: f64,
}

impl LinearPolicy {
    pub fn new(weights: [f64; 2], bias: f64) -> Self {
        Self { weights, bias }
    }

    pub fn q(&self, x: &FeatureVector) -> f64 {
        self.weights[0] * x[0] + self.weights[1] * x[1] + self.bias
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.is_finite()) && self.bias.is_finite()
    }

    /// Lowest-index maximizer of Q.
    pub fn greedy(&self, xs: &[FeatureVector]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (v, x) in xs.iter().enumerate() {
            let q = self.q(x);
            if best.is_none_or(|(_, bq)| q > bq) {
                best = Some((v, q));
            }
        }
        best.map(|(v, _)| v)
    }

    pub fn max_q(&self, xs: &[FeatureVector]) -> f64 {
        xs.iter().map(|x| self.q(x)).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn q_values(policy: &LinearPolicy, xs: &[FeatureVector]) -> Vec<f64> {
    xs.iter().map(|x| policy.q(x)).collect()
}

/// ε-greedy: a uniform vertex with probability `epsilon`, otherwise the
/// lowest-index argmax of Q. `xs` must be non-empty.
pub fn select_action(policy: &LinearPolicy, xs: &[FeatureVector], epsilon: f64, rng: &mut Rng) -> usize {
    debug_assert!(!xs.is_empty());
    if epsilon > 0.0 && rng.gen::<f64>() < epsilon {
        rng.gen_range(0..xs.len())
    } else {
        policy.greedy(xs).unwrap_or(0)
    }
}

/// Default bonus for reaching an unseen local optimum without improving the best.
pub fn default_eta(n: usize) -> f64 {
    1.0 / (10.0 * n.max(1) as f64)
}

/// Improvement of the best value scaled by `1/n`, plus `default_eta(n)` when a
/// previously unseen local optimum is reached without improving the best.
pub fn reward(prev_best: i64, new_best: i64, is_new_local_opt: bool, n: usize) -> f64 {
    reward_with_eta(prev_best, new_best, is_new_local_opt, n, default_eta(n))
}

pub fn reward_with_eta(prev_best: i64, new_best: i64, is_new_local_opt: bool, n: usize, eta: f64) -> f64 {
    let improvement = (new_best - prev_best) as f64 / n.max(1) as f64;
    let bonus = if is_new_local_opt && new_best == prev_best { eta } else { 0.0 };
    improvement + bonus
}
