//! Covering graph of a P-linear map, loops of intervals and the periodic
//! orbits they realize.
//!
//! Every branch of a P-linear map has integer coefficients, so the branch
//! composed along a loop is again integral and its fixed point is an exact
//! rational. Loops are enumerated as necklaces: each rotation class is
//! produced once, by its lexicographically least rotation.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{self, AnalysisError, Side};
use crate::pattern::{Pattern, RotPair};
use crate::plmap::{Affine, PLMap};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MarkovError {
    #[error("not a loop: no covering from node {from} to node {to}")]
    NotALoop { from: usize, to: usize },
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("loop must be nonempty")]
    EmptyLoop,
    #[error("integer overflow composing branches along a loop of length {0}")]
    Overflow(usize),
    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Guards for the exponential parts of the search.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    /// Maximum number of loops visited by one enumeration.
    pub max_loops: Option<u64>,
    /// Wall-clock budget for one enumeration.
    pub time_limit: Option<Duration>,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

/// A closed interval of the partition with the affine branch of `f` on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub lo: Rational,
    pub hi: Rational,
    /// Basic interval `[segment, segment + 1]` containing this node.
    pub segment: usize,
    /// Side of the fixed point, for graphs split at it.
    pub side: Option<Side>,
    branch: Affine,
}

/// Covering graph: node `i` has an edge to `j` when `f(node_i) ⊇ node_j`.
/// Nodes are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovGraph {
    nodes: Vec<Node>,
    succ: Vec<Vec<usize>>,
}

impl MarkovGraph {
    /// Nodes are the basic intervals `I_i = [x_i, x_{i+1}]`, `i = 1..q-1`.
    pub fn new(pattern: &Pattern) -> Self {
        let f = pattern.p_linear_map();
        let nodes = (1..pattern.period())
            .map(|i| Node {
                lo: int(i as i128),
                hi: int(i as i128 + 1),
                segment: i,
                side: None,
                branch: f.branch(i),
            })
            .collect();
        Self::from_nodes(nodes)
    }

    /// Basic intervals with the one containing the fixed point `a` cut in
    /// two, so every node lies on one side of `a`. Requires a convergent
    /// pattern. Nodes: `q` intervals, left to right.
    pub fn split_at_fixed_point(pattern: &Pattern) -> Result<Self, AnalysisError> {
        let f: PLMap = pattern.p_linear_map();
        let colors = analysis::classify_points(pattern)?;
        let a = colors.fixed_point;
        let c = a.floor().to_integer() as usize;
        let mut nodes = Vec::with_capacity(pattern.period());
        for i in 1..pattern.period() {
            let (lo, hi) = (int(i as i128), int(i as i128 + 1));
            let branch = f.branch(i);
            if i == c {
                nodes.push(Node {
                    lo,
                    hi: a,
                    segment: i,
                    side: Some(Side::Left),
                    branch,
                });
                nodes.push(Node {
                    lo: a,
                    hi,
                    segment: i,
                    side: Some(Side::Right),
                    branch,
                });
            } else {
                let side = Some(if i < c { Side::Left } else { Side::Right });
                nodes.push(Node {
                    lo,
                    hi,
                    segment: i,
                    side,
                    branch,
                });
            }
        }
        Ok(Self::from_nodes(nodes))
    }

    fn from_nodes(nodes: Vec<Node>) -> Self {
        let succ = nodes
            .iter()
            .map(|from| {
                let (u, v) = (from.branch.apply(&from.lo), from.branch.apply(&from.hi));
                let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(_, to)| lo <= to.lo && to.hi <= hi)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        MarkovGraph { nodes, succ }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i - 1]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[i - 1].iter().map(|j| j + 1)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        (1..=self.len()).contains(&from) && self.succ[from - 1].contains(&(to - 1))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .flat_map(|i| self.successors(i).map(move |j| (i, j)))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph markov {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{} [label=\"[{}, {}]\"];",
                i + 1,
                rational::format(&node.lo),
                rational::format(&node.hi)
            );
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    fn is_right_to_left(&self, from: usize, to: usize) -> bool {
        self.nodes[from].side == Some(Side::Right) && self.nodes[to].side == Some(Side::Left)
    }
}

pub fn markov_graph(pattern: &Pattern) -> MarkovGraph {
    MarkovGraph::new(pattern)
}

/// Which rotation classes to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Keep {
    Primitive,
    All,
}

struct LoopSearch<'g> {
    graph: &'g MarkovGraph,
    n: usize,
    keep: Keep,
    /// Required number of right-to-left steps (split graphs only).
    crossings: Option<usize>,
    max_loops: Option<u64>,
    deadline: Option<Instant>,
    found: &'g AtomicU64,
}

/// Per-start tables: `reach[k][v]` when `v` returns to the start in exactly
/// `k` steps through nodes `>= start`, with the crossing range of such walks.
struct Tables {
    reach: Vec<Vec<bool>>,
    crossing_range: Vec<Vec<(usize, usize)>>,
}

impl LoopSearch<'_> {
    fn tables(&self, start: usize) -> Tables {
        let size = self.graph.len();
        let mut reach = vec![vec![false; size]; self.n + 1];
        let mut range = vec![vec![(usize::MAX, 0); size]; self.n + 1];
        reach[0][start] = true;
        range[0][start] = (0, 0);
        for k in 1..=self.n {
            for v in start..size {
                for &w in &self.graph.succ[v] {
                    if w < start || !reach[k - 1][w] {
                        continue;
                    }
                    reach[k][v] = true;
                    let step = self.graph.is_right_to_left(v, w) as usize;
                    let (lo, hi) = range[k - 1][w];
                    let cur = &mut range[k][v];
                    cur.0 = cur.0.min(lo + step);
                    cur.1 = cur.1.max(hi + step);
                }
            }
        }
        Tables {
            reach,
            crossing_range: range,
        }
    }

    fn run_from(&self, start: usize) -> Result<Vec<Vec<usize>>, MarkovError> {
        let tables = self.tables(start);
        if !tables.reach[self.n][start] {
            return Ok(Vec::new());
        }
        let mut word = vec![start];
        let mut out = Vec::new();
        let mut visited = 0u64;
        self.extend(&tables, &mut word, 1, 0, &mut out, &mut visited)?;
        Ok(out)
    }

    /// Prenecklace extension: `word` has period `period`; the next letter must
    /// be `>= word[len - period]`.
    fn extend(
        &self,
        tables: &Tables,
        word: &mut Vec<usize>,
        period: usize,
        crossings: usize,
        out: &mut Vec<Vec<usize>>,
        visited: &mut u64,
    ) -> Result<(), MarkovError> {
        *visited += 1;
        if visited.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(MarkovError::LimitExceeded("time limit".into()));
                }
            }
        }
        let t = word.len();
        let last = *word.last().unwrap();
        let start = word[0];
        if t == self.n {
            if !self.n.is_multiple_of(period) || (self.keep == Keep::Primitive && period != self.n)
            {
                return Ok(());
            }
            if let Some(target) = self.crossings {
                if crossings + self.graph.is_right_to_left(last, start) as usize != target {
                    return Ok(());
                }
            }
            let total = self.found.fetch_add(1, Ordering::Relaxed) + 1;
            if self.max_loops.is_some_and(|m| total > m) {
                return Err(MarkovError::LimitExceeded(format!(
                    "more than {} loops",
                    self.max_loops.unwrap()
                )));
            }
            out.push(word.iter().map(|v| v + 1).collect());
            return Ok(());
        }
        let floor = word[t - period];
        let remaining = self.n - t;
        for &v in &self.graph.succ[last] {
            if v < floor || !tables.reach[remaining][v] {
                continue;
            }
            let c = crossings + self.graph.is_right_to_left(last, v) as usize;
            if let Some(target) = self.crossings {
                let (lo, hi) = tables.crossing_range[remaining][v];
                if c + lo > target || c + hi < target {
                    continue;
                }
            }
            let next_period = if v == floor { period } else { t + 1 };
            word.push(v);
            let r = self.extend(tables, word, next_period, c, out, visited);
            word.pop();
            r?;
        }
        Ok(())
    }

    fn run(&self, parallel: bool) -> Result<Vec<Vec<usize>>, MarkovError> {
        let starts: Vec<usize> = (0..self.graph.len()).collect();
        let per_start: Vec<Vec<Vec<usize>>> = if parallel {
            starts
                .par_iter()
                .map(|&s| self.run_from(s))
                .collect::<Result<_, _>>()?
        } else {
            starts
                .iter()
                .map(|&s| self.run_from(s))
                .collect::<Result<_, _>>()?
        };
        Ok(per_start.into_iter().flatten().collect())
    }
}

/// Options shared by the enumeration entry points.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub limits: SearchLimits,
    /// Enumerate starting nodes on the rayon pool.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            limits: SearchLimits::default(),
            parallel: true,
        }
    }
}

fn enumerate(
    graph: &MarkovGraph,
    n: usize,
    keep: Keep,
    crossings: Option<usize>,
    opts: &SearchOptions,
) -> Result<Vec<Vec<usize>>, MarkovError> {
    if n == 0 || graph.is_empty() {
        return Ok(Vec::new());
    }
    let found = AtomicU64::new(0);
    let search = LoopSearch {
        graph,
        n,
        keep,
        crossings,
        max_loops: opts.limits.max_loops,
        deadline: opts.limits.time_limit.map(|d| Instant::now() + d),
        found: &found,
    };
    search.run(opts.parallel)
}

/// Primitive closed walks of length `n`, one per rotation class (its least
/// rotation), in lexicographic order. Node numbers are 1-based.
pub fn loops_of_length(graph: &MarkovGraph, n: usize) -> Vec<Vec<usize>> {
    loops_of_length_with(graph, n, &SearchOptions::default())
        .expect("unlimited search cannot exceed limits")
}

pub fn loops_of_length_with(
    graph: &MarkovGraph,
    n: usize,
    opts: &SearchOptions,
) -> Result<Vec<Vec<usize>>, MarkovError> {
    enumerate(graph, n, Keep::Primitive, None, opts)
}

/// A periodic orbit of the P-linear map, realized from a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedCycle {
    /// The orbit in temporal order, starting in the loop's first interval.
    #[serde(with = "rational::serde_vec")]
    pub points: Vec<Rational>,
    pub period: usize,
    pub itinerary: Vec<usize>,
    /// `None` for a fixed point.
    pub pattern: Option<Pattern>,
    pub rot: Option<RotPair>,
}

impl RealizedCycle {
    pub fn over_rotation_number(&self) -> Option<Rational> {
        self.rot.map(|r| r.number())
    }

    pub fn sorted_points(&self) -> Vec<Rational> {
        let mut v = self.points.clone();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    /// The composed branch is the identity on the admissible interval; the
    /// leftmost admissible point is reported.
    IntervalOfFixedPoints,
    /// The composed branch's fixed point misses the admissible interval; an
    /// admissible endpoint that is fixed is reported if there is one.
    BoundaryOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LoopRealization {
    Cycle(RealizedCycle),
    Degenerate(Degeneracy, Option<RealizedCycle>),
}

impl LoopRealization {
    pub fn cycle(&self) -> Option<&RealizedCycle> {
        match self {
            LoopRealization::Cycle(c) => Some(c),
            LoopRealization::Degenerate(_, c) => c.as_ref(),
        }
    }

    pub fn into_cycle(self) -> Option<RealizedCycle> {
        match self {
            LoopRealization::Cycle(c) => Some(c),
            LoopRealization::Degenerate(_, c) => c,
        }
    }
}

/// Realizes a loop of basic intervals (1-based) of the pattern's P-linear map.
pub fn realize_loop(pattern: &Pattern, lp: &[usize]) -> Result<LoopRealization, MarkovError> {
    realize_in(&MarkovGraph::new(pattern), lp)
}

/// Realizes a loop of nodes of `graph`.
pub fn realize_in(graph: &MarkovGraph, lp: &[usize]) -> Result<LoopRealization, MarkovError> {
    let n = lp.len();
    if n == 0 {
        return Err(MarkovError::EmptyLoop);
    }
    if let Some(&bad) = lp.iter().find(|&&v| v == 0 || v > graph.len()) {
        return Err(MarkovError::UnknownNode(bad));
    }
    for j in 0..n {
        let (from, to) = (lp[j], lp[(j + 1) % n]);
        if !graph.has_edge(from, to) {
            return Err(MarkovError::NotALoop { from, to });
        }
    }
    let nodes: Vec<&Node> = lp.iter().map(|&v| graph.node(v)).collect();

    let mut g = Affine::IDENTITY;
    for node in &nodes {
        g = g.then(&node.branch).ok_or(MarkovError::Overflow(n))?;
    }

    // admissible set: points of the first node following the whole itinerary
    let (mut lo, mut hi) = (nodes[0].lo, nodes[0].hi);
    for node in nodes.iter().rev() {
        let (a, b) = node.branch.preimage(&lo, &hi);
        lo = a.max(node.lo);
        hi = b.min(node.hi);
    }

    let orbit = |x: Rational| orbit_along(&nodes, x, lp);
    if g.slope == 1 {
        // covering guarantees a fixed point, so the offset vanishes
        if g.intercept == 0 && lo <= hi {
            return Ok(LoopRealization::Degenerate(
                Degeneracy::IntervalOfFixedPoints,
                Some(orbit(lo)),
            ));
        }
        return Ok(LoopRealization::Degenerate(Degeneracy::BoundaryOnly, None));
    }
    let x = Rational::new(g.intercept, 1 - g.slope);
    if lo <= x && x <= hi {
        return Ok(LoopRealization::Cycle(orbit(x)));
    }
    let endpoint = [lo, hi]
        .into_iter()
        .find(|e| lo <= hi && g.apply(e) == *e)
        .map(orbit);
    Ok(LoopRealization::Degenerate(
        Degeneracy::BoundaryOnly,
        endpoint,
    ))
}

fn orbit_along(nodes: &[&Node], x0: Rational, lp: &[usize]) -> RealizedCycle {
    let n = nodes.len();
    let mut points = Vec::with_capacity(n);
    let mut x = x0;
    for node in nodes {
        points.push(x);
        x = node.branch.apply(&x);
    }
    assert_eq!(x, x0, "realized point is not periodic along its loop");
    let period = (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d == n || points[d] == x0))
        .unwrap();
    points.truncate(period);
    let pattern = (period >= 2).then(|| {
        Pattern::from_orbit(&points).expect("distinct orbit points form a cyclic pattern")
    });
    let rot = pattern.as_ref().map(Pattern::over_rotation_pair);
    RealizedCycle {
        points,
        period,
        itinerary: lp.to_vec(),
        pattern,
        rot,
    }
}

fn collect_cycles(
    graph: &MarkovGraph,
    loops: Vec<Vec<usize>>,
    n: usize,
) -> Result<Vec<RealizedCycle>, MarkovError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lp in loops {
        let Some(cycle) = realize_in(graph, &lp)?.into_cycle() else {
            continue;
        };
        if cycle.period == n && seen.insert(cycle.sorted_points()) {
            out.push(cycle);
        }
    }
    out.sort_by_cached_key(RealizedCycle::sorted_points);
    Ok(out)
}

/// All periodic orbits of least period `n` realized by loops of length `n`,
/// deduplicated by point set and sorted by their points.
///
/// Non-primitive loops are realized too: a repeated loop whose branch
/// composes to a reflection carries orbits of the full loop length.
pub fn cycles_of_period(pattern: &Pattern, n: usize) -> Vec<RealizedCycle> {
    cycles_of_period_with(pattern, n, &SearchOptions::default())
        .expect("unlimited search over a valid pattern")
}

pub fn cycles_of_period_with(
    pattern: &Pattern,
    n: usize,
    opts: &SearchOptions,
) -> Result<Vec<RealizedCycle>, MarkovError> {
    let graph = MarkovGraph::new(pattern);
    let loops = enumerate(&graph, n, Keep::All, None, opts)?;
    collect_cycles(&graph, loops, n)
}

/// Orbits of least period `n` whose over-rotation number is `rho`, for a
/// convergent pattern.
///
/// For maps with a unique fixed point the over-rotation pair of an orbit is
/// (number of its points right of `a` mapped left of `a`, period), so on the
/// graph split at `a` only loops with exactly `rho * n` right-to-left steps
/// can qualify. Returns an empty list when `rho * n` is not an integer.
pub fn cycles_with_rotation(
    pattern: &Pattern,
    n: usize,
    rho: Rational,
    opts: &SearchOptions,
) -> Result<Vec<RealizedCycle>, MarkovError> {
    let graph = MarkovGraph::split_at_fixed_point(pattern)?;
    let target = rho * int(n as i128);
    if !target.is_integer() || target < int(0) {
        return Ok(Vec::new());
    }
    let loops = enumerate(
        &graph,
        n,
        Keep::All,
        Some(target.to_integer() as usize),
        opts,
    )?;
    let mut cycles = collect_cycles(&graph, loops, n)?;
    cycles.retain(|c| c.over_rotation_number() == Some(rho));
    Ok(cycles)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NecessaryCondition {
    NotCoprime,
    NonConvergent,
    NotGreen,
    NotInSpecialSet,
}

/// Outcome of the bounded over-twist check. `PassedBounded` means no
/// witness was found up to the depth; it is not a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum OverTwistVerdict {
    RefutedNecessary { reason: NecessaryCondition },
    RefutedWitness { witness: Box<RealizedCycle> },
    PassedBounded { depth: usize },
}

impl OverTwistVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, OverTwistVerdict::PassedBounded { .. })
    }

    pub fn label(&self) -> String {
        match self {
            OverTwistVerdict::RefutedNecessary { reason } => {
                format!("RefutedNecessary({reason:?})")
            }
            OverTwistVerdict::RefutedWitness { witness } => {
                let p = witness
                    .pattern
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                format!("RefutedWitness([{p}])")
            }
            OverTwistVerdict::PassedBounded { depth } => format!("PassedBounded({depth})"),
        }
    }
}

/// Checks the necessary conditions (coprime pair, convergent, green, orbit
/// inside the special set), then searches periods `t * q`, `t <= depth`,
/// for an orbit with the same over-rotation number but another pattern.
pub fn verify_overtwist(pattern: &Pattern, depth: usize) -> OverTwistVerdict {
    verify_overtwist_with(pattern, depth, &SearchOptions::default())
        .expect("unlimited search over a valid pattern")
}

pub fn verify_overtwist_with(
    pattern: &Pattern,
    depth: usize,
    opts: &SearchOptions,
) -> Result<OverTwistVerdict, MarkovError> {
    if depth == 0 {
        return Err(MarkovError::InvalidArgument(
            "depth must be at least 1".into(),
        ));
    }
    let refuted = |reason| Ok(OverTwistVerdict::RefutedNecessary { reason });
    let rot = pattern.over_rotation_pair();
    if !rot.is_coprime() {
        return refuted(NecessaryCondition::NotCoprime);
    }
    if !pattern.is_convergent() {
        return refuted(NecessaryCondition::NonConvergent);
    }
    if !analysis::is_green_pattern(pattern) {
        return refuted(NecessaryCondition::NotGreen);
    }
    if !analysis::point_membership_in_special_set(pattern)? {
        return refuted(NecessaryCondition::NotInSpecialSet);
    }
    let rho = rot.number();
    let q = pattern.period();
    for t in 1..=depth {
        for cycle in cycles_with_rotation(pattern, t * q, rho, opts)? {
            if cycle.pattern.as_ref() != Some(pattern) {
                return Ok(OverTwistVerdict::RefutedWitness {
                    witness: Box::new(cycle),
                });
            }
        }
    }
    Ok(OverTwistVerdict::PassedBounded { depth })
}

/// Lower end of the over-rotation interval, estimated as the least
/// over-rotation number among orbits of period `<= max_period` (and the
/// pattern itself). The upper end is always `1/2`.
pub fn rotation_interval_estimate(
    pattern: &Pattern,
    max_period: usize,
) -> Result<(Rational, Rational), MarkovError> {
    rotation_interval_estimate_with(pattern, max_period, &SearchOptions::default())
}

pub fn rotation_interval_estimate_with(
    pattern: &Pattern,
    max_period: usize,
    opts: &SearchOptions,
) -> Result<(Rational, Rational), MarkovError> {
    if max_period < 2 {
        return Err(MarkovError::InvalidArgument(
            "max period must be at least 2".into(),
        ));
    }
    let mut lowest = pattern.over_rotation_pair().number();
    for n in 2..=max_period {
        for cycle in cycles_of_period_with(pattern, n, opts)? {
            if let Some(rho) = cycle.over_rotation_number() {
                lowest = lowest.min(rho);
            }
        }
    }
    Ok((lowest, Rational::new(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn pat(v: &[usize]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn graph_of_three_cycle() {
        let g = markov_graph(&pat(&[2, 3, 1]));
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges(), vec![(1, 2), (2, 1), (2, 2)]);
        let g = markov_graph(&pat(&[2, 1]));
        assert_eq!(g.edges(), vec![(1, 1)]);
    }

    #[test]
    fn out_degree_matches_slope() {
        let p = pat(&[4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]);
        let g = markov_graph(&p);
        for i in 1..p.period() {
            let slope = (p.image(i + 1) as i64 - p.image(i) as i64).unsigned_abs() as usize;
            assert_eq!(g.successors(i).count(), slope, "node {i}");
        }
    }

    #[test]
    fn split_graph_has_q_nodes_on_definite_sides() {
        let p = pat(&[2, 3, 1]);
        let g = MarkovGraph::split_at_fixed_point(&p).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.node(2).hi, frac(7, 3));
        assert_eq!(g.node(3).side, Some(Side::Right));
        assert!(MarkovGraph::split_at_fixed_point(&pat(&[3, 1, 4, 5, 2])).is_err());
    }

    #[test]
    fn loops_of_three_cycle() {
        let g = markov_graph(&pat(&[2, 3, 1]));
        assert_eq!(loops_of_length(&g, 1), vec![vec![2]]);
        assert_eq!(loops_of_length(&g, 2), vec![vec![1, 2]]);
        assert_eq!(loops_of_length(&g, 3), vec![vec![1, 2, 2]]);
    }

    #[test]
    fn realize_examples() {
        let p = pat(&[2, 3, 1]);
        let c = realize_loop(&p, &[1, 2, 2]).unwrap().into_cycle().unwrap();
        assert_eq!(c.points, vec![int(1), int(2), int(3)]);
        assert_eq!(c.period, 3);
        assert_eq!(c.pattern.as_ref(), Some(&p));

        let c = realize_loop(&p, &[1, 2]).unwrap().into_cycle().unwrap();
        assert_eq!(c.points, vec![frac(5, 3), frac(8, 3)]);
        assert_eq!(c.rot, Some(RotPair { p: 1, q: 2 }));

        let c = realize_loop(&p, &[2]).unwrap().into_cycle().unwrap();
        assert_eq!(c.points, vec![frac(7, 3)]);
        assert_eq!(c.period, 1);
        assert_eq!(c.pattern, None);

        assert_eq!(
            realize_loop(&p, &[1, 1]),
            Err(MarkovError::NotALoop { from: 1, to: 1 })
        );
        assert_eq!(realize_loop(&p, &[]), Err(MarkovError::EmptyLoop));
        assert_eq!(realize_loop(&p, &[3]), Err(MarkovError::UnknownNode(3)));
    }

    #[test]
    fn identity_composition_is_degenerate() {
        let r = realize_loop(&pat(&[2, 1]), &[1, 1]).unwrap();
        let LoopRealization::Degenerate(Degeneracy::IntervalOfFixedPoints, Some(c)) = r else {
            panic!("expected a degenerate realization, got {r:?}");
        };
        assert_eq!(c.points, vec![int(1), int(2)]);
    }

    #[test]
    fn cycles_of_small_periods() {
        let p = pat(&[2, 3, 1]);
        let three = cycles_of_period(&p, 3);
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].sorted_points(), vec![int(1), int(2), int(3)]);
        let two = cycles_of_period(&p, 2);
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].rot, Some(RotPair { p: 1, q: 2 }));
        let p2 = pat(&[2, 1]);
        let c = cycles_of_period(&p2, 2);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].pattern.as_ref(), Some(&p2));
    }

    #[test]
    fn verify_examples() {
        assert_eq!(
            verify_overtwist(&pat(&[2, 3, 1]), 2),
            OverTwistVerdict::PassedBounded { depth: 2 }
        );
        assert_eq!(
            verify_overtwist(&pat(&[3, 1, 4, 5, 2]), 3),
            OverTwistVerdict::RefutedNecessary {
                reason: NecessaryCondition::NonConvergent
            }
        );
        assert!(verify_overtwist(&pat(&[4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]), 1).passed());
        assert!(verify_overtwist(&pat(&[2, 1]), 1).passed());
        assert!(verify_overtwist_with(&pat(&[2, 1]), 0, &SearchOptions::default()).is_err());
    }

    #[test]
    fn rotation_interval_examples() {
        assert_eq!(
            rotation_interval_estimate(&pat(&[2, 3, 1]), 6).unwrap(),
            (frac(1, 3), frac(1, 2))
        );
        assert_eq!(
            rotation_interval_estimate(&pat(&[2, 1]), 4).unwrap(),
            (frac(1, 2), frac(1, 2))
        );
        let (lo, _) = rotation_interval_estimate(&pat(&[3, 1, 4, 5, 2]), 10).unwrap();
        assert!(lo < frac(1, 5));
        assert!(rotation_interval_estimate(&pat(&[2, 1]), 1).is_err());
    }

    #[test]
    fn loop_limit_is_enforced() {
        let g = markov_graph(&pat(&[4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]));
        let opts = SearchOptions {
            limits: SearchLimits {
                max_loops: Some(3),
                time_limit: None,
            },
            parallel: false,
        };
        assert!(matches!(
            loops_of_length_with(&g, 8, &opts),
            Err(MarkovError::LimitExceeded(_))
        ));
    }

    #[test]
    fn dot_export_lists_edges() {
        let dot = markov_graph(&pat(&[2, 3, 1])).to_dot();
        assert!(dot.starts_with("digraph markov {"));
        assert!(dot.contains("n2 -> n2;"));
    }
}
