use super::{expect_kind, initial_state, BestTracker, SolveOutcome, SolverConfig, SolverKind};
use crate::error::Result;
use crate::graph::Graph;

/// Vanilla tabu search over single flips.
///
/// Each step flips the vertex whose flip yields the largest cut value among
/// vertices that are either not tabu or would beat the best value seen so far
/// (aspiration). The flipped vertex is then tabu for the next `tenure - 1`
/// steps, since its counter is set to `tenure` and decremented in the same
/// step. When every vertex is tabu and none aspirates, the vertex whose tabu
/// status expires first is flipped. Runs exactly `max_steps` steps.
pub fn tabu_search(graph: &Graph, config: &SolverConfig) -> Result<SolveOutcome> {
    expect_kind(config, SolverKind::Tabu)?;
    let (mut state, _) = initial_state(graph, config.init, config.seed);
    let mut best = BestTracker::new(&state, config.record_trajectory);
    let n = graph.n();
    if n == 0 {
        return Ok(best.finish(0));
    }

    // Vertex v is tabu at iteration `it` while `it < tabu_until[v]`.
    let mut tabu_until = vec![0usize; n];
    for it in 0..config.max_steps {
        let current = state.cut_value();
        let best_obj = best.value();
        let mut chosen: Option<(usize, i64)> = None;
        for (v, &gain) in state.gains().iter().enumerate() {
            let value = current + gain;
            let admissible = it >= tabu_until[v] || value > best_obj;
            if admissible && chosen.is_none_or(|(_, bv)| value > bv) {
                chosen = Some((v, value));
            }
        }
        let v = match chosen {
            Some((v, _)) => v,
            None => (0..n)
                .min_by_key(|&v| (tabu_until[v], v))
                .expect("n > 0"),
        };
        state.flip_unchecked(graph, v);
        tabu_until[v] = it + config.tenure;
        best.observe(&state, it + 1);
    }
    Ok(best.finish(config.max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::cut_value;
    use crate::oracle::brute_force_optimum;
    use crate::solvers::{reversible_greedy, InitMode};

    fn k3() -> Graph {
        Graph::new(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn zero_steps_returns_initial_value() {
        let g = k3();
        let cfg = SolverConfig::tabu(5).with_seed(4);
        let out = tabu_search(&g, &cfg).unwrap();
        assert_eq!(out.best_value, cut_value(&g, &out.best_side).unwrap());
        assert_eq!(out.steps_taken, 0);
    }

    #[test]
    fn long_tenure_on_triangle() {
        let g = k3();
        let cfg = SolverConfig::tabu(3)
            .with_steps(3)
            .with_init(InitMode::Empty)
            .with_trajectory();
        let out = tabu_search(&g, &cfg).unwrap();
        let t = out.trajectory.unwrap();
        assert_eq!(t[1], (1, 2));
        assert!(t[1..].iter().all(|&(_, b)| b == 2));
        assert_eq!(out.best_value, 2);
    }

    #[test]
    fn all_tabu_falls_back_to_earliest_expiry() {
        // Tenure far above n: after n flips every vertex is tabu and no flip
        // beats the best, so the search must still move.
        let g = Graph::new(2, [(0, 1, -1)]).unwrap();
        let cfg = SolverConfig::tabu(100).with_steps(10).with_init(InitMode::Empty);
        let out = tabu_search(&g, &cfg).unwrap();
        assert_eq!(out.steps_taken, 10);
        assert_eq!(out.best_value, 0);
    }

    #[test]
    fn zero_tenure_matches_reversible_greedy_while_improving() {
        let g = Graph::new(
            6,
            [(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (0, 5, 1), (1, 4, 1)],
        )
        .unwrap();
        for seed in 0..10 {
            let rg = SolverConfig::new(SolverKind::ReversibleGreedy)
                .with_steps(30)
                .with_seed(seed)
                .with_trajectory();
            let rg = reversible_greedy(&g, &rg).unwrap();
            let ts = SolverConfig::tabu(0).with_steps(rg.steps_taken).with_seed(seed).with_trajectory();
            let ts = tabu_search(&g, &ts).unwrap();
            // RG stops or plateaus at its local optimum, which TS also reaches.
            assert_eq!(ts.best_value, rg.best_value);
        }
    }

    #[test]
    fn finds_optimum_on_small_graph() {
        let g = Graph::new(
            7,
            [(0, 1, 1), (0, 2, -1), (1, 3, 1), (2, 3, 1), (3, 4, -1), (4, 5, 1), (5, 6, 1), (0, 6, 1), (2, 5, 1)],
        )
        .unwrap();
        let (opt, _) = brute_force_optimum(&g).unwrap();
        let found = (0..10)
            .map(|s| tabu_search(&g, &SolverConfig::tabu(3).with_steps(14).with_seed(s)).unwrap().best_value)
            .max()
            .unwrap();
        assert_eq!(found, opt);
    }
}
