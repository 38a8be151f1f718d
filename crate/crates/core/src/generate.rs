//! Seeded generators for the benchmark graph distributions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{self, Rng};

/// Degree of the random regular graphs standing in for the Physics set
/// (125 vertices and 375 edges in the reference instances).
pub const PHYSICS_REGULARITY: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Er,
    Ba,
    Hk,
    Ws,
    GsetEr,
    GsetSkew,
    GsetToroidal,
    SkSpinGlass,
    PhaseTransition,
    PhysicsRegular,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Er,
        Family::Ba,
        Family::Hk,
        Family::Ws,
        Family::GsetEr,
        Family::GsetSkew,
        Family::GsetToroidal,
        Family::SkSpinGlass,
        Family::PhaseTransition,
        Family::PhysicsRegular,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::Er => "er",
            Family::Ba => "ba",
            Family::Hk => "hk",
            Family::Ws => "ws",
            Family::GsetEr => "gset-er",
            Family::GsetSkew => "gset-skew",
            Family::GsetToroidal => "gset-toroidal",
            Family::SkSpinGlass => "sk",
            Family::PhaseTransition => "phase-transition",
            Family::PhysicsRegular => "physics",
        }
    }

    pub fn default_size(self) -> Size {
        match self {
            Family::Er => Size::Fixed(200),
            Family::SkSpinGlass => Size::Range { min: 70, max: 100 },
            Family::PhaseTransition => Size::Range { min: 100, max: 200 },
            Family::PhysicsRegular => Size::Fixed(125),
            _ => Size::Fixed(800),
        }
    }

    pub fn default_weights(self) -> WeightScheme {
        match self {
            Family::PhaseTransition => WeightScheme::Unweighted01,
            Family::SkSpinGlass | Family::GsetToroidal | Family::PhysicsRegular => {
                WeightScheme::SignedPm1
            }
            _ => WeightScheme::Signed0Pm1,
        }
    }

    pub fn default_params(self) -> FamilyParams {
        let mut p = FamilyParams::default();
        match self {
            Family::Er => p.p = Some(0.15),
            Family::GsetEr => p.p = Some(0.06),
            Family::PhaseTransition => p.p = Some(0.5),
            Family::Ba => p.m = Some(4),
            Family::Hk => {
                p.m = Some(4);
                p.p = Some(0.10);
            }
            Family::Ws => {
                p.k = Some(4);
                p.p = Some(0.15);
            }
            Family::GsetSkew => p.density = Some(0.99),
            Family::GsetToroidal | Family::SkSpinGlass | Family::PhysicsRegular => {}
        }
        p
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.label() == key)
            .or(match key.as_str() {
                "toroidal" => Some(Family::GsetToroidal),
                "skew" => Some(Family::GsetSkew),
                "sk-spin-glass" => Some(Family::SkSpinGlass),
                "phase" => Some(Family::PhaseTransition),
                "physics-regular" => Some(Family::PhysicsRegular),
                _ => None,
            })
            .ok_or_else(|| invalid(format!("unknown family '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightScheme {
    /// Every structural edge has weight 1.
    Unweighted01,
    /// Uniform draw from {-1, 0, +1}; zero draws remove the edge.
    Signed0Pm1,
    /// Uniform draw from {-1, +1}.
    SignedPm1,
}

impl WeightScheme {
    pub fn label(self) -> &'static str {
        match self {
            WeightScheme::Unweighted01 => "unweighted",
            WeightScheme::Signed0Pm1 => "signed0pm1",
            WeightScheme::SignedPm1 => "signedpm1",
        }
    }

    pub fn is_weighted(self) -> bool {
        self != WeightScheme::Unweighted01
    }

    fn draw(self, rng: &mut Rng) -> i64 {
        match self {
            WeightScheme::Unweighted01 => 1,
            WeightScheme::Signed0Pm1 => rng.gen_range(-1..=1),
            WeightScheme::SignedPm1 => {
                if rng.gen::<bool>() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unweighted" | "unweighted01" | "01" => Ok(WeightScheme::Unweighted01),
            "signed0pm1" | "weighted" | "0pm1" => Ok(WeightScheme::Signed0Pm1),
            "signedpm1" | "pm1" => Ok(WeightScheme::SignedPm1),
            _ => Err(invalid(format!("unknown weight scheme '{s}'"))),
        }
    }
}

/// Vertex count, fixed or drawn uniformly from an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Size {
    Fixed(usize),
    Range { min: usize, max: usize },
}

impl Size {
    pub fn min(self) -> usize {
        match self {
            Size::Fixed(n) => n,
            Size::Range { min, .. } => min,
        }
    }
}

impl FromStr for Size {
    type Err = Error;

    /// `"200"` or `"70:100"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("bad vertex count '{t}'")))
        };
        match s.split_once(':') {
            Some((a, b)) => Ok(Size::Range {
                min: parse(a)?,
                max: parse(b)?,
            }),
            None => Ok(Size::Fixed(parse(s)?)),
        }
    }
}

/// Family-specific knobs. Unset fields fall back to the family defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: Option<f64>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub density: Option<f64>,
}

impl FamilyParams {
    /// Parses `"p=0.15,m=4"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = FamilyParams::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got '{item}'")))?;
            let bad = || invalid(format!("bad value for {key}: '{value}'"));
            match key.trim() {
                "p" => out.p = Some(value.parse().map_err(|_| bad())?),
                "m" => out.m = Some(value.parse().map_err(|_| bad())?),
                "k" => out.k = Some(value.parse().map_err(|_| bad())?),
                "d" | "density" => out.density = Some(value.parse().map_err(|_| bad())?),
                other => return Err(invalid(format!("unknown parameter '{other}'"))),
            }
        }
        Ok(out)
    }

    fn or(self, defaults: FamilyParams) -> FamilyParams {
        FamilyParams {
            p: self.p.or(defaults.p),
            m: self.m.or(defaults.m),
            k: self.k.or(defaults.k),
            density: self.density.or(defaults.density),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub family: Family,
    pub size: Size,
    pub params: FamilyParams,
    pub weights: WeightScheme,
    pub seed: u64,
}

impl DistributionSpec {
    /// The family's default size, parameters and weight scheme.
    pub fn new(family: Family) -> Self {
        Self {
            family,
            size: family.default_size(),
            params: FamilyParams::default(),
            weights: family.default_weights(),
            seed: 0,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.size = Size::Fixed(n);
        self
    }

    pub fn with_size(mut self, size: Size) -> Self {
        self.size = size;
        self
    }

    pub fn with_params(mut self, params: FamilyParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_weights(mut self, weights: WeightScheme) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Parameters with family defaults filled in.
    pub fn resolved_params(&self) -> FamilyParams {
        self.params.or(self.family.default_params())
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = match self.size {
            Size::Fixed(n) => (n, n),
            Size::Range { min, max } => (min, max),
        };
        if lo < 2 || lo > hi {
            return Err(invalid(format!("bad size {:?}: need 2 <= min <= max", self.size)));
        }
        let params = self.resolved_params();
        for (name, value) in [("p", params.p), ("density", params.density)] {
            if let Some(x) = value {
                if !(0.0..=1.0).contains(&x) {
                    return Err(invalid(format!("{name} = {x} outside [0, 1]")));
                }
            }
        }
        match self.family {
            Family::Ba | Family::Hk => {
                let m = params.m.unwrap_or(0);
                if m == 0 || m >= lo {
                    return Err(invalid(format!("need 1 <= m < n, got m = {m}, n = {lo}")));
                }
            }
            Family::Ws => {
                let k = params.k.unwrap_or(0);
                if k == 0 || !k.is_multiple_of(2) || k >= lo {
                    return Err(invalid(format!("need even k with 0 < k < n, got k = {k}")));
                }
            }
            Family::GsetToroidal => {
                for n in [lo, hi] {
                    let (a, b) = torus_shape(n);
                    if a < 3 || b < 3 {
                        return Err(invalid(format!(
                            "n = {n} has no torus shape with both sides >= 3"
                        )));
                    }
                }
            }
            Family::PhysicsRegular
                if (lo <= PHYSICS_REGULARITY || !(lo * PHYSICS_REGULARITY).is_multiple_of(2)) => {
                    return Err(invalid(format!(
                        "no {PHYSICS_REGULARITY}-regular graph on {lo} vertices"
                    )));
                }
            _ => {}
        }
        Ok(())
    }
}

/// Draws one graph. Identical specs produce identical graphs.
pub fn generate(spec: &DistributionSpec) -> Result<Graph> {
    spec.validate()?;
    let params = spec.resolved_params();
    let n = match spec.size {
        Size::Fixed(n) => n,
        Size::Range { min, max } => rng::stream(spec.seed, rng::SIZE_STREAM).gen_range(min..=max),
    };
    let mut structure = rng::stream(spec.seed, rng::STRUCTURE_STREAM);
    let rng = &mut structure;

    let pairs = match spec.family {
        Family::Er | Family::GsetEr | Family::PhaseTransition => {
            erdos_renyi(n, params.p.unwrap_or(0.0), rng)
        }
        Family::Ba => barabasi_albert(n, params.m.unwrap_or(1), rng),
        Family::Hk => holme_kim(n, params.m.unwrap_or(1), params.p.unwrap_or(0.0), rng),
        Family::Ws => watts_strogatz(n, params.k.unwrap_or(2), params.p.unwrap_or(0.0), rng),
        Family::GsetSkew => skew(n, params.density.unwrap_or(0.0), rng),
        Family::GsetToroidal => torus(n),
        Family::SkSpinGlass => complete(n),
        Family::PhysicsRegular => random_regular(n, PHYSICS_REGULARITY, rng),
    };

    let mut weights = rng::stream(spec.seed, rng::WEIGHT_STREAM);
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, spec.weights.draw(&mut weights)))
        .collect();
    let name = format!("{}-{}-s{}", spec.family, n, spec.seed);
    Ok(Graph::new(n, edges)?.with_name(name))
}

/// `count` graphs; graph `i` is drawn with seed `base_seed + i`.
pub fn generate_batch(spec: &DistributionSpec, count: usize, base_seed: u64) -> Result<Vec<Graph>> {
    if count == 0 {
        return Err(invalid("batch count must be at least 1"));
    }
    (0..count as u64)
        .map(|i| generate(&spec.with_seed(base_seed.wrapping_add(i))))
        .collect()
}

fn erdos_renyi(n: usize, p: f64, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

fn complete(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect()
}

/// Adjacency sets used while growing a graph.
struct Builder {
    adj: Vec<BTreeSet<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
            edges: Vec::new(),
        }
    }

    fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    fn add(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges.push((u, v));
    }
}

/// Preferential-attachment target for `source`: uniform over the endpoint
/// multiset, or over existing vertices while that multiset is empty.
fn attachment_target(
    source: Vertex,
    repeated: &[Vertex],
    builder: &Builder,
    rng: &mut Rng,
) -> Vertex {
    loop {
        let t = if repeated.is_empty() {
            rng.gen_range(0..source)
        } else {
            repeated[rng.gen_range(0..repeated.len())]
        };
        if t != source && !builder.has(source, t) {
            return t;
        }
    }
}

fn barabasi_albert(n: usize, m: usize, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    let mut b = Builder::new(n);
    let mut repeated: Vec<Vertex> = Vec::new();
    for source in m..n {
        let mut targets = Vec::with_capacity(m);
        for _ in 0..m {
            let t = attachment_target(source, &repeated, &b, rng);
            b.add(source, t);
            targets.push(t);
        }
        repeated.extend(targets);
        repeated.extend(std::iter::repeat_n(source, m));
    }
    b.edges
}

fn holme_kim(n: usize, m: usize, p: f64, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    let mut b = Builder::new(n);
    let mut repeated: Vec<Vertex> = Vec::new();
    for source in m..n {
        let mut added = Vec::with_capacity(m);
        let mut anchor: Option<Vertex> = None;
        while added.len() < m {
            if let Some(u) = anchor {
                if rng.gen_bool(p) {
                    let closable: Vec<Vertex> = b.adj[u]
                        .iter()
                        .copied()
                        .filter(|&x| x != source && !b.has(source, x))
                        .collect();
                    if let Some(&x) = closable.choose(rng) {
                        b.add(source, x);
                        added.push(x);
                        continue;
                    }
                }
            }
            let t = attachment_target(source, &repeated, &b, rng);
            b.add(source, t);
            added.push(t);
            anchor = Some(t);
        }
        repeated.extend(added);
        repeated.extend(std::iter::repeat_n(source, m));
    }
    b.edges
}

fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    let mut b = Builder::new(n);
    for j in 1..=k / 2 {
        for u in 0..n {
            b.add(u, (u + j) % n);
        }
    }
    if p == 0.0 {
        return b.edges;
    }
    // Rewire each lattice edge (u, u + j) in place, keeping the count fixed.
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(p) || b.adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !b.has(u, w) {
                    break w;
                }
            };
            b.adj[u].remove(&v);
            b.adj[v].remove(&u);
            b.adj[u].insert(w);
            b.adj[w].insert(u);
            let slot = b
                .edges
                .iter()
                .position(|&e| e == (u, v))
                .expect("lattice edge present until rewired");
            b.edges[slot] = (u, w);
        }
    }
    b.edges
}

fn skew(n: usize, density: f64, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    let scale = n as f64 / 8.0;
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = density * (-((v - u) as f64) / scale).exp();
            if rng.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Rows × columns for an `n`-vertex torus: the divisor of `n` closest to √n.
pub fn torus_shape(n: usize) -> (usize, usize) {
    let root = (n as f64).sqrt();
    let a = (1..=n)
        .filter(|a| n.is_multiple_of(*a))
        .min_by(|&x, &y| {
            let dx = (x as f64 - root).abs();
            let dy = (y as f64 - root).abs();
            dx.total_cmp(&dy).then(x.cmp(&y))
        })
        .unwrap_or(1);
    (a, n / a)
}

fn torus(n: usize) -> Vec<(Vertex, Vertex)> {
    let (rows, cols) = torus_shape(n);
    let id = |r: usize, c: usize| r * cols + c;
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..rows {
        for c in 0..cols {
            out.push((id(r, c), id((r + 1) % rows, c)));
            out.push((id(r, c), id(r, (c + 1) % cols)));
        }
    }
    out
}

/// Random `d`-regular graph by stub pairing. Each pair of stubs is drawn
/// uniformly and rejected if it would form a loop or a repeated edge; the
/// whole pairing restarts if the remaining stubs admit no valid pair.
fn random_regular(n: usize, d: usize, rng: &mut Rng) -> Vec<(Vertex, Vertex)> {
    'restart: loop {
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut b = Builder::new(n);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..(4 * stubs.len()) {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i != j && u != v && !b.has(u, v) {
                    b.add(u.min(v), u.max(v));
                    let (hi, lo) = (i.max(j), i.min(j));
                    stubs.swap_remove(hi);
                    stubs.swap_remove(lo);
                    placed = true;
                    break;
                }
            }
            if !placed && !has_valid_pair(&stubs, &b) {
                continue 'restart;
            }
        }
        return b.edges;
    }
}

fn has_valid_pair(stubs: &[Vertex], b: &Builder) -> bool {
    let distinct: BTreeMap<Vertex, usize> = stubs.iter().fold(BTreeMap::new(), |mut acc, &v| {
        *acc.entry(v).or_default() += 1;
        acc
    });
    let vs: Vec<Vertex> = distinct.keys().copied().collect();
    vs.iter()
        .enumerate()
        .any(|(i, &u)| vs[i + 1..].iter().any(|&v| !b.has(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family) -> DistributionSpec {
        DistributionSpec::new(family)
    }

    #[test]
    fn er_with_p_one_is_complete() {
        let s = spec(Family::Er)
            .with_n(4)
            .with_params(FamilyParams { p: Some(1.0), ..Default::default() })
            .with_weights(WeightScheme::Unweighted01);
        assert_eq!(generate(&s).unwrap().edge_count(), 6);
    }

    #[test]
    fn ws_without_rewiring_is_ring_lattice() {
        let s = spec(Family::Ws)
            .with_n(10)
            .with_params(FamilyParams { k: Some(4), p: Some(0.0), ..Default::default() })
            .with_weights(WeightScheme::Unweighted01);
        let g = generate(&s).unwrap();
        assert_eq!(g.edge_count(), 20);
        for u in 0..10 {
            for j in 1..=2 {
                assert_eq!(g.weight(u, (u + j) % 10), Some(1));
            }
        }
    }

    #[test]
    fn ws_rewiring_keeps_edge_count() {
        let s = spec(Family::Ws)
            .with_n(60)
            .with_params(FamilyParams { k: Some(4), p: Some(0.5), ..Default::default() })
            .with_weights(WeightScheme::Unweighted01);
        assert_eq!(generate(&s).unwrap().edge_count(), 120);
    }

    #[test]
    fn ba_edge_count_and_min_degree() {
        for seed in 0..5 {
            let s = spec(Family::Ba)
                .with_n(10)
                .with_weights(WeightScheme::Unweighted01)
                .with_seed(seed);
            let g = generate(&s).unwrap();
            assert_eq!(g.edge_count(), 24);
            assert!((4..10).all(|v| g.degree(v) >= 4));
        }
    }

    #[test]
    fn hk_adds_m_edges_per_arrival() {
        let s = spec(Family::Hk)
            .with_n(200)
            .with_params(FamilyParams { p: Some(0.9), ..Default::default() })
            .with_weights(WeightScheme::Unweighted01);
        let g = generate(&s).unwrap();
        assert_eq!(g.edge_count(), (200 - 4) * 4);
    }

    #[test]
    fn sk_is_complete_and_signed() {
        let g = generate(&spec(Family::SkSpinGlass).with_n(80)).unwrap();
        assert_eq!(g.edge_count(), 3160);
        assert!(g.edges().iter().all(|e| e.w == 1 || e.w == -1));
    }

    #[test]
    fn ranged_sizes_stay_in_range() {
        for seed in 0..20 {
            let g = generate(&spec(Family::SkSpinGlass).with_seed(seed)).unwrap();
            assert!((70..=100).contains(&g.n()));
        }
    }

    #[test]
    fn torus_shape_for_800() {
        assert_eq!(torus_shape(800), (25, 32));
        let g = generate(&spec(Family::GsetToroidal)).unwrap();
        assert!((0..800).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn physics_is_regular() {
        let g = generate(&spec(Family::PhysicsRegular).with_seed(3)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (125, 375));
        assert!((0..125).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn structure_independent_of_weight_scheme() {
        let base = spec(Family::Er).with_n(50).with_seed(9);
        let a = generate(&base.with_weights(WeightScheme::Unweighted01)).unwrap();
        let b = generate(&base.with_weights(WeightScheme::SignedPm1)).unwrap();
        let pairs = |g: &Graph| g.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>();
        assert_eq!(pairs(&a), pairs(&b));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad_p = FamilyParams { p: Some(1.5), ..Default::default() };
        assert!(generate(&spec(Family::Er).with_params(bad_p)).is_err());
        let bad_k = FamilyParams { k: Some(3), ..Default::default() };
        assert!(generate(&spec(Family::Ws).with_n(10).with_params(bad_k)).is_err());
        let bad_m = FamilyParams { m: Some(10), ..Default::default() };
        assert!(generate(&spec(Family::Ba).with_n(10).with_params(bad_m)).is_err());
        assert!(generate(&spec(Family::Er).with_n(1)).is_err());
        assert!(generate(&spec(Family::GsetToroidal).with_n(7)).is_err());
        assert!(generate_batch(&spec(Family::Er), 0, 0).is_err());
    }

    #[test]
    fn batch_is_deterministic() {
        let s = spec(Family::Er).with_n(30);
        let a = generate_batch(&s, 2, 17).unwrap();
        let b = generate_batch(&s, 2, 17).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_eq!(a[1], generate(&s.with_seed(18)).unwrap());
    }

    #[test]
    fn parses_cli_tokens() {
        assert_eq!("gset-toroidal".parse::<Family>().unwrap(), Family::GsetToroidal);
        assert_eq!("SK".parse::<Family>().unwrap(), Family::SkSpinGlass);
        assert_eq!("70:100".parse::<Size>().unwrap(), Size::Range { min: 70, max: 100 });
        let p = FamilyParams::parse("p=0.1, m=3").unwrap();
        assert_eq!((p.p, p.m), (Some(0.1), Some(3)));
        assert!(FamilyParams::parse("q=1").is_err());
    }
}
