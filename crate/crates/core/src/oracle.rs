//! Exhaustive maximum cut for small graphs.

use crate::cut::flip_gain;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_BRUTE_FORCE_N: usize = 24;

/// Exact maximum cut value and one optimal assignment.
///
/// Vertex 0 is pinned to S, which halves the search by complement symmetry.
/// The remaining `2^(n-1)` assignments are walked in Gray-code order so each
/// step moves a single vertex.
pub fn brute_force_optimum(graph: &Graph) -> Result<(i64, Vec<bool>)> {
    let n = graph.n();
    if n > MAX_BRUTE_FORCE_N {
        return Err(Error::Capacity {
            n,
            max: MAX_BRUTE_FORCE_N,
        });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }

    let mut side = vec![false; n];
    side[0] = true;
    let mut value: i64 = graph
        .neighbors(0)
        .iter()
        .map(|&(_, w)| w)
        .sum();
    let mut best = (value, side.clone());

    let free = n - 1;
    for i in 1u64..(1u64 << free) {
        let v = i.trailing_zeros() as usize + 1;
        value += flip_gain(graph, &side, v);
        side[v] = !side[v];
        if value > best.0 {
            best = (value, side.clone());
        }
    }
    Ok(best)
}
