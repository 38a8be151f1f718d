use rand::Rng as _;

use super::{expect_kind, initial_state, BestTracker, SolveOutcome, SolverConfig, SolverKind};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::Rng;

/// Samples a 0-based rank `k - 1` with probability proportional to `k^(-tau)`, `k = 1..=n`.
#[derive(Debug, Clone)]
pub struct RankSampler {
    cdf: Vec<f64>,
}

impl RankSampler {
    pub fn new(n: usize, tau: f64) -> Result<Self> {
        if n == 0 || !tau.is_finite() || tau <= 0.0 {
            return Err(invalid(format!("rank sampler needs n >= 1 and tau > 0, got n = {n}, tau = {tau}")));
        }
        let mut cdf: Vec<f64> = Vec::with_capacity(n);
        let mut total = 0.0;
        for k in 1..=n {
            total += (k as f64).powf(-tau);
            cdf.push(total);
        }
        for c in &mut cdf {
            *c /= total;
        }
        Ok(Self { cdf })
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.cdf
            .iter()
            .map(|&c| {
                let p = c - prev;
                prev = c;
                p
            })
            .collect()
    }

    pub fn sample(&self, rng: &mut Rng) -> usize {
        let u: f64 = rng.gen();
        self.cdf
            .partition_point(|&c| c <= u)
            .min(self.cdf.len() - 1)
    }
}

/// Extremal optimization: rank vertices by descending gain (ties by id),
/// draw a rank from the power law and flip that vertex. Runs exactly
/// `max_steps` steps.
pub fn extremal_optimization(graph: &Graph, config: &SolverConfig) -> Result<SolveOutcome> {
    expect_kind(config, SolverKind::Eo)?;
    let (mut state, mut rng) = initial_state(graph, config.init, config.seed);
    let mut best = BestTracker::new(&state, config.record_trajectory);
    let n = graph.n();
    if n == 0 {
        return Ok(best.finish(0));
    }
    let sampler = RankSampler::new(n, config.tau)?;
    let mut order: Vec<usize> = (0..n).collect();
    for step in 1..=config.max_steps {
        let gains = state.gains();
        order.sort_unstable_by_key(|&v| (std::cmp::Reverse(gains[v]), v));
        let v = order[sampler.sample(&mut rng)];
        state.flip_unchecked(graph, v);
        best.observe(&state, step);
    }
    Ok(best.finish(config.max_steps))
}
