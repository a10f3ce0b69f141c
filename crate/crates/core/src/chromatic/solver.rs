//! Exact vertex coloring by DSATUR-ordered backtracking.
//!
//! Each connected component is solved separately. Within a search, a vertex
//! may only open the next unused color index, which removes the `k!` color
//! permutation symmetry without losing completeness.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::coloring::Coloring;
use crate::graph::Graph;

const UNCOLORED: usize = usize::MAX;

/// Result of a budgeted `k`-colorability decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable,
    /// The wall-clock budget ran out before the search finished.
    Unknown,
}

impl Decision {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Decision::Colorable(c) => Some(c),
            _ => None,
        }
    }
}

/// Chromatic number, or bounds when the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ChiOutcome {
    Exact { chi: usize, coloring: Coloring },
    Unknown { lower: usize, upper: usize },
}

impl ChiOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ChiOutcome::Exact { chi, .. } => Some(*chi),
            ChiOutcome::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Copy)]
struct Deadline(Option<Instant>);

impl Deadline {
    fn new(budget: Option<Duration>) -> Self {
        Deadline(budget.map(|b| Instant::now() + b))
    }

    fn passed(&self) -> bool {
        self.0.is_some_and(|d| Instant::now() >= d)
    }
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    TimedOut,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    color: Vec<usize>,
    // count[v * k + c]: colored neighbors of v with color c
    count: Vec<u32>,
    sat: Vec<usize>,
    free_deg: Vec<usize>,
    used: usize,
    deadline: Deadline,
    nodes: u64,
    timed_out: bool,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Vec<usize>], k: usize, deadline: Deadline) -> Self {
        let n = adj.len();
        Search {
            adj,
            k,
            color: vec![UNCOLORED; n],
            count: vec![0; n * k],
            sat: vec![0; n],
            free_deg: adj.iter().map(Vec::len).collect(),
            used: 0,
            deadline,
            nodes: 0,
            timed_out: false,
        }
    }

    /// Uncolored vertex of maximum saturation, then maximum uncolored degree,
    /// then smallest index.
    fn pick(&self) -> usize {
        let mut best = UNCOLORED;
        for v in 0..self.adj.len() {
            if self.color[v] != UNCOLORED {
                continue;
            }
            if best == UNCOLORED
                || (self.sat[v], self.free_deg[v]) > (self.sat[best], self.free_deg[best])
            {
                best = v;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in &self.adj[v] {
            self.free_deg[w] -= 1;
            let slot = &mut self.count[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = UNCOLORED;
        for &w in &self.adj[v] {
            self.free_deg[w] += 1;
            let slot = &mut self.count[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn run(mut self) -> Outcome {
        let n = self.adj.len();
        if self.solve(n) {
            Outcome::Found(self.color)
        } else if self.timed_out {
            Outcome::TimedOut
        } else {
            Outcome::Exhausted
        }
    }

    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.deadline.passed() {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        let v = self.pick();
        if self.sat[v] >= self.k {
            return false;
        }
        let limit = self.k.min(self.used + 1);
        for c in 0..limit {
            if self.count[v * self.k + c] != 0 {
                continue;
            }
            let prev_used = self.used;
            if c == self.used {
                self.used += 1;
            }
            self.assign(v, c);
            if self.solve(remaining - 1) {
                return true;
            }
            self.unassign(v, c);
            self.used = prev_used;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Adjacency lists of each component, relabelled locally, with the global
/// vertex ids.
fn split_components(g: &Graph) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let mut local = vec![0usize; g.n()];
    g.components()
        .into_iter()
        .map(|comp| {
            for (i, &v) in comp.iter().enumerate() {
                local[v] = i;
            }
            let adj = comp
                .iter()
                .map(|&v| g.neighbors(v).iter().map(|&w| local[w]).collect())
                .collect();
            (comp, adj)
        })
        .collect()
}

fn decide_component(adj: &[Vec<usize>], k: usize, deadline: Deadline) -> Outcome {
    if adj.is_empty() {
        return Outcome::Found(Vec::new());
    }
    if k == 0 {
        return Outcome::Exhausted;
    }
    Search::new(adj, k, deadline).run()
}

/// A proper `k`-coloring if one exists. Exact.
pub fn k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    match decide_k_colorable(g, k, None) {
        Decision::Colorable(c) => Some(c),
        _ => None,
    }
}

/// `k`-colorability with an optional wall-clock budget.
pub fn decide_k_colorable(g: &Graph, k: usize, budget: Option<Duration>) -> Decision {
    let deadline = Deadline::new(budget);
    let mut colors = vec![0usize; g.n()];
    for (comp, adj) in split_components(g) {
        match decide_component(&adj, k, deadline) {
            Outcome::Found(local) => {
                for (i, c) in local.into_iter().enumerate() {
                    colors[comp[i]] = c;
                }
            }
            Outcome::Exhausted => return Decision::NotColorable,
            Outcome::TimedOut => return Decision::Unknown,
        }
    }
    Decision::Colorable(Coloring::new(k, colors).expect("solver colors are below k"))
}

/// Greedy DSATUR coloring; its color count is an upper bound on `χ`.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut color = vec![UNCOLORED; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    let mut free_deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == UNCOLORED)
            .max_by(|&a, &b| (sat[a], free_deg[a], b).cmp(&(sat[b], free_deg[b], a)))
            .expect("an uncolored vertex remains");
        let c = (0..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .unwrap();
        color[v] = c;
        for &w in &adj[v] {
            free_deg[w] -= 1;
            if seen[w].len() <= c {
                seen[w].resize(c + 1, false);
            }
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    Coloring::from_colors(color)
}

/// Size of a clique grown greedily from each vertex (largest found).
pub fn greedy_clique(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for v in 0..g.n() {
        let mut cand: Vec<usize> = g.neighbors(v).to_vec();
        cand.sort_by_key(|&w| std::cmp::Reverse(g.degree(w)));
        let mut clique = vec![v];
        for w in cand {
            if clique.iter().all(|&u| g.has_edge(u, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn component_chi(
    adj: &[Vec<usize>],
    deadline: Deadline,
) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let g = Graph::from_adjacency(adj.to_vec());
    if g.edge_count() == 0 {
        return Ok(vec![0; g.n()]);
    }
    if let Some(c) = two_coloring(&g) {
        return Ok(c);
    }
    let upper = dsatur_greedy(&g);
    let lower = greedy_clique(&g).max(3);
    for k in lower..upper.k() {
        match decide_component(adj, k, deadline) {
            Outcome::Found(c) => return Ok(c),
            Outcome::Exhausted => {}
            Outcome::TimedOut => return Err((k, upper.k())),
        }
    }
    Ok(upper.colors().to_vec())
}

fn two_coloring(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_bipartite() {
        return None;
    }
    let mut c = vec![UNCOLORED; g.n()];
    for root in 0..g.n() {
        if c[root] != UNCOLORED {
            continue;
        }
        c[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if c[w] == UNCOLORED {
                    c[w] = 1 - c[u];
                    stack.push(w);
                }
            }
        }
    }
    Some(c)
}

/// Exact chromatic number with an optimal coloring, or bounds if the budget
/// runs out.
pub fn chromatic_number_within(g: &Graph, budget: Option<Duration>) -> ChiOutcome {
    let deadline = Deadline::new(budget);
    let mut colors = vec![0usize; g.n()];
    let mut chi = 0;
    let mut unknown: Option<(usize, usize)> = None;
    for (comp, adj) in split_components(g) {
        match component_chi(&adj, deadline) {
            Ok(local) => {
                let used = local.iter().max().map_or(0, |&c| c + 1);
                chi = chi.max(used);
                for (i, c) in local.into_iter().enumerate() {
                    colors[comp[i]] = c;
                }
            }
            Err((lo, hi)) => {
                let (l, h) = unknown.unwrap_or((0, 0));
                unknown = Some((l.max(lo), h.max(hi)));
            }
        }
    }
    match unknown {
        None => ChiOutcome::Exact {
            chi,
            coloring: Coloring::new(chi, colors).expect("colors below chi"),
        },
        Some((lo, hi)) => ChiOutcome::Unknown {
            lower: lo.max(chi),
            upper: hi.max(chi),
        },
    }
}

pub fn chromatic_number(g: &Graph) -> usize {
    chromatic_number_within(g, None)
        .exact()
        .expect("unbudgeted search always finishes")
}

/// An optimal proper coloring.
pub fn optimal_coloring(g: &Graph) -> Coloring {
    match chromatic_number_within(g, None) {
        ChiOutcome::Exact { coloring, .. } => coloring,
        ChiOutcome::Unknown { .. } => unreachable!("unbudgeted search always finishes"),
    }
}
