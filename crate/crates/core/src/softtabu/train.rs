use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{select_action, softtabu_solve, Episode, FeatureVector, LinearPolicy};
use crate::error::{invalid, Error, Result};
use crate::generate::{generate, generate_batch, DistributionSpec};
use crate::graph::Graph;
use crate::rng;
use crate::solvers::{initial_state, tabu_search, InitMode, SolverConfig};

/// Held-out validation graphs use seeds offset by this from the training seeds.
const VALIDATION_SEED_OFFSET: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Number of training graphs; one episode is played on each.
    pub episodes: usize,
    /// Episode length as a multiple of n.
    pub steps_factor: f64,
    pub learning_rate: f64,
    pub discount: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    /// Linear decay horizon in environment steps. `None` decays over the
    /// first half of training.
    pub epsilon_decay_steps: Option<usize>,
    pub replay_capacity: usize,
    pub batch_size: usize,
    pub seed: u64,
    pub validation_graphs: usize,
    pub validation_episodes: usize,
    /// Validate after every this many training episodes.
    pub validate_every: usize,
    /// Tenure of the tabu search whose values normalize validation ratios.
    pub reference_tenure: usize,
    pub initial_policy: LinearPolicy,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            episodes: 500,
            steps_factor: 2.0,
            learning_rate: 1e-3,
            discount: 0.95,
            epsilon_start: 1.0,
            epsilon_end: 0.05,
            epsilon_decay_steps: None,
            replay_capacity: 5000,
            batch_size: 64,
            seed: 0,
            validation_graphs: 50,
            validation_episodes: 10,
            validate_every: 25,
            reference_tenure: 20,
            initial_policy: LinearPolicy::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(invalid("learning rate must be finite and non-negative"));
        }
        if !(0.0..=1.0).contains(&self.discount) {
            return Err(invalid("discount must lie in [0, 1]"));
        }
        for eps in [self.epsilon_start, self.epsilon_end] {
            if !(0.0..=1.0).contains(&eps) {
                return Err(invalid("epsilon must lie in [0, 1]"));
            }
        }
        if self.episodes == 0 || self.batch_size == 0 || self.replay_capacity < self.batch_size {
            return Err(invalid("need episodes >= 1 and replay_capacity >= batch_size >= 1"));
        }
        if self.validation_graphs == 0 || self.validation_episodes == 0 || self.validate_every == 0 {
            return Err(invalid("validation sizes must be positive"));
        }
        if !(self.steps_factor > 0.0) {
            return Err(invalid("steps_factor must be positive"));
        }
        Ok(())
    }

    fn steps_for(&self, n: usize) -> usize {
        (self.steps_factor * n as f64).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub action_features: FeatureVector,
    pub reward: f64,
    pub next_features: Vec<FeatureVector>,
    pub terminal: bool,
}

/// One semi-gradient Q-learning step, averaged over the batch:
/// `θ += α · mean((y - Q(s, a)) · (x_a, 1))` with `y = r + discount · max_u Q(s', u)`
/// evaluated at the pre-update parameters.
pub fn td_update(policy: &mut LinearPolicy, batch: &[&Transition], learning_rate: f64, discount: f64) {
    if batch.is_empty() {
        return;
    }
    let mut grad = [0.0; 3];
    for t in batch {
        let bootstrap = if t.terminal || t.next_features.is_empty() {
            0.0
        } else {
            policy.max_q(&t.next_features)
        };
        let target = t.reward + discount * bootstrap;
        let err = target - policy.q(&t.action_features);
        grad[0] += err * t.action_features[0];
        grad[1] += err * t.action_features[1];
        grad[2] += err;
    }
    let scale = learning_rate / batch.len() as f64;
    policy.weights[0] += scale * grad[0];
    policy.weights[1] += scale * grad[1];
    policy.bias += scale * grad[2];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainOutcome {
    /// Parameters with the best validation ratio seen during training.
    pub policy: LinearPolicy,
    pub validation_ratio: f64,
    /// `(episodes trained, validation mean ratio, policy at that point)`.
    pub history: Vec<(usize, f64, LinearPolicy)>,
    pub env_steps: usize,
}

struct Replay {
    buf: Vec<Transition>,
    capacity: usize,
    next: usize,
}

impl Replay {
    fn push(&mut self, t: Transition) {
        if self.buf.len() < self.capacity {
            self.buf.push(t);
        } else {
            self.buf[self.next] = t;
        }
        self.next = (self.next + 1) % self.capacity;
    }
}

struct Validator {
    graphs: Vec<Graph>,
    reference: Vec<i64>,
    episodes: usize,
    steps_factor: f64,
}

impl Validator {
    fn new(distribution: &DistributionSpec, config: &TrainConfig) -> Result<Self> {
        let graphs = generate_batch(
            distribution,
            config.validation_graphs,
            distribution.seed.wrapping_add(VALIDATION_SEED_OFFSET),
        )?;
        let reference = graphs
            .iter()
            .map(|g| {
                let steps = config.steps_for(g.n());
                (0..config.validation_episodes as u64)
                    .map(|s| {
                        let cfg = SolverConfig::tabu(config.reference_tenure).with_steps(steps).with_seed(s);
                        tabu_search(g, &cfg).map(|o| o.best_value)
                    })
                    .try_fold(i64::MIN, |acc, v| v.map(|v| acc.max(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            graphs,
            reference,
            episodes: config.validation_episodes,
            steps_factor: config.steps_factor,
        })
    }

    fn mean_ratio(&self, policy: &LinearPolicy) -> Result<f64> {
        let mut total = 0.0;
        let mut counted = 0usize;
        for (g, &reference) in self.graphs.iter().zip(&self.reference) {
            if reference <= 0 {
                continue;
            }
            let steps = (self.steps_factor * g.n() as f64).round() as usize;
            let out = softtabu_solve(policy, g, self.episodes, steps, 0)?;
            total += out.best_value as f64 / reference as f64;
            counted += 1;
        }
        Ok(if counted == 0 { 0.0 } else { total / counted as f64 })
    }
}

/// Trains a SoftTabu policy with ε-greedy Q-learning and uniform replay.
///
/// Training graph `i` is drawn with seed `distribution.seed + i`; validation
/// graphs come from a disjoint seed range. The returned policy is the
/// checkpoint with the highest validation mean ratio, where ratios are taken
/// against the best tabu-search value on each validation graph.
pub fn train(distribution: &DistributionSpec, config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    distribution.validate()?;
    let validator = Validator::new(distribution, config)?;
    let mut policy = config.initial_policy;
    let mut best_policy = policy;
    let mut best_ratio = validator.mean_ratio(&policy)?;
    let mut history = vec![(0, best_ratio, policy)];

    let mut rng = rng::stream(config.seed, rng::TRAINING_STREAM);
    let mut replay = Replay {
        buf: Vec::with_capacity(config.replay_capacity),
        capacity: config.replay_capacity,
        next: 0,
    };

    let decay_steps = match config.epsilon_decay_steps {
        Some(s) => s,
        None => {
            let n_est = distribution.size.min();
            (config.episodes * config.steps_for(n_est) / 2).max(1)
        }
    };
    let epsilon_at = |step: usize| {
        let frac = (step as f64 / decay_steps.max(1) as f64).min(1.0);
        config.epsilon_start + frac * (config.epsilon_end - config.epsilon_start)
    };

    let mut env_steps = 0usize;
    for ep in 0..config.episodes {
        let graph = generate(&distribution.with_seed(distribution.seed.wrapping_add(ep as u64)))?;
        let steps = config.steps_for(graph.n());
        if graph.n() > 0 && steps > 0 {
            let init_seed = rng.gen::<u64>();
            let (state, _) = initial_state(&graph, InitMode::Random, init_seed);
            let mut episode = Episode::new(&graph, state, steps);
            let mut xs = episode.features();
            for t in 0..steps {
                let a = select_action(&policy, &xs, epsilon_at(env_steps), &mut rng);
                let r = episode.step(a);
                let next = episode.features();
                replay.push(Transition {
                    action_features: xs[a],
                    reward: r,
                    next_features: next.clone(),
                    terminal: t + 1 == steps,
                });
                xs = next;
                env_steps += 1;

                if replay.buf.len() >= config.batch_size {
                    let batch: Vec<&Transition> = (0..config.batch_size)
                        .map(|_| &replay.buf[rng.gen_range(0..replay.buf.len())])
                        .collect();
                    td_update(&mut policy, &batch, config.learning_rate, config.discount);
                    if !policy.is_finite() {
                        return Err(Error::TrainingDiverged { step: env_steps });
                    }
                }
            }
        }

        let done = ep + 1;
        if done % config.validate_every == 0 || done == config.episodes {
            let ratio = validator.mean_ratio(&policy)?;
            history.push((done, ratio, policy));
            if ratio > best_ratio {
                best_ratio = ratio;
                best_policy = policy;
            }
        }
    }

    Ok(TrainOutcome {
        policy: best_policy,
        validation_ratio: best_ratio,
        history,
        env_steps,
    })
}
