//! Cut values and the incremental flip-gain state shared by every solver.

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

/// Total weight of edges whose endpoints lie on opposite sides.
pub fn cut_value(graph: &Graph, side: &[bool]) -> Result<i64> {
    check_len(graph, side)?;
    Ok(graph
        .edges()
        .iter()
        .filter(|e| side[e.u] != side[e.v])
        .map(|e| e.w)
        .sum())
}

fn check_len(graph: &Graph, side: &[bool]) -> Result<()> {
    if side.len() != graph.n() {
        return Err(invalid(format!(
            "assignment has {} entries, graph has {} vertices",
            side.len(),
            graph.n()
        )));
    }
    Ok(())
}

/// Change in cut value if `v` alone switches sides.
pub(crate) fn flip_gain(graph: &Graph, side: &[bool], v: Vertex) -> i64 {
    graph
        .neighbors(v)
        .iter()
        .map(|&(u, w)| if side[u] == side[v] { w } else { -w })
        .sum()
}

/// A spin assignment with cached cut value and per-vertex flip gains.
///
/// `side[v] == true` means `v` is in S. The step counter advances on every
/// flip and `last_flip` records the step at which each vertex last moved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutState {
    side: Vec<bool>,
    cut_value: i64,
    gain: Vec<i64>,
    last_flip: Vec<Option<usize>>,
    step: usize,
}

impl CutState {
    pub fn new(graph: &Graph, side: Vec<bool>) -> Result<Self> {
        check_len(graph, &side)?;
        let cut_value = cut_value(graph, &side)?;
        let gain = (0..graph.n()).map(|v| flip_gain(graph, &side, v)).collect();
        Ok(Self {
            last_flip: vec![None; side.len()],
            side,
            cut_value,
            gain,
            step: 0,
        })
    }

    pub fn empty(graph: &Graph) -> Self {
        Self::new(graph, vec![false; graph.n()]).expect("length matches by construction")
    }

    /// Flips `v`, updating the cut value and the gains of `v` and its neighbours in O(deg v).
    pub fn flip(&mut self, graph: &Graph, v: Vertex) -> Result<()> {
        if v >= self.side.len() {
            return Err(invalid(format!(
                "vertex {v} out of range for n = {}",
                self.side.len()
            )));
        }
        self.flip_unchecked(graph, v);
        Ok(())
    }

    pub(crate) fn flip_unchecked(&mut self, graph: &Graph, v: Vertex) {
        let was = self.side[v];
        for &(u, w) in graph.neighbors(v) {
            // Same side before the flip: the edge becomes cut, so moving u
            // would now lose w instead of gaining it.
            if self.side[u] == was {
                self.gain[u] -= 2 * w;
            } else {
                self.gain[u] += 2 * w;
            }
        }
        self.cut_value += self.gain[v];
        self.gain[v] = -self.gain[v];
        self.side[v] = !was;
        self.last_flip[v] = Some(self.step);
        self.step += 1;
    }

    pub fn side(&self) -> &[bool] {
        &self.side
    }

    pub fn cut_value(&self) -> i64 {
        self.cut_value
    }

    pub fn gains(&self) -> &[i64] {
        &self.gain
    }

    pub fn gain(&self, v: Vertex) -> i64 {
        self.gain[v]
    }

    pub fn last_flip(&self, v: Vertex) -> Option<usize> {
        self.last_flip[v]
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    /// Lowest-id vertex with the largest gain, optionally restricted by `allowed`.
    pub(crate) fn argmax_gain(&self, mut allowed: impl FnMut(Vertex) -> bool) -> Option<Vertex> {
        let mut best: Option<(Vertex, i64)> = None;
        for (v, &g) in self.gain.iter().enumerate() {
            if !allowed(v) {
                continue;
            }
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((v, g));
            }
        }
        best.map(|(v, _)| v)
    }
}
