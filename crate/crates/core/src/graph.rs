//! Simple undirected graphs on vertices `0..n` with sorted adjacency lists.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Loops are rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds from possibly unsorted, possibly duplicated adjacency lists. The
    /// lists must already be symmetric.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&w| w != v).collect())
            .collect();
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// At most one component. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A closed walk of odd length, found from a BFS 2-coloring conflict, or
    /// `None` when the graph is bipartite.
    pub fn odd_closed_walk(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if dist[root] != usize::MAX {
                continue;
            }
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if dist[w] % 2 == dist[u] % 2 {
                        let path_to = |mut x: usize| {
                            let mut p = vec![x];
                            while x != root {
                                x = parent[x];
                                p.push(x);
                            }
                            p
                        };
                        let mut walk = path_to(u);
                        walk.reverse();
                        walk.extend(path_to(w));
                        return Some(walk);
                    }
                }
            }
        }
        None
    }

    /// A shortest path `from .. to` (inclusive), if `to` is reachable.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut x = to;
        while x != from {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    pub fn is_bipartite(&self) -> bool {
        self.odd_closed_walk().is_none()
    }

    /// Subgraph induced on `vertices` (relabelled `0..vertices.len()` in the
    /// given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| pos[w] != usize::MAX)
                    .map(|&w| pos[w])
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Cartesian (box) product. Vertex `(u, v)` gets index `u * other.n() + v`.
    pub fn box_product(&self, other: &Graph) -> Graph {
        let m = other.n();
        let mut adj = vec![Vec::new(); self.n() * m];
        for u in 0..self.n() {
            for v in 0..m {
                let list = &mut adj[u * m + v];
                list.extend(other.adj[v].iter().map(|&w| u * m + w));
                list.extend(self.adj[u].iter().map(|&x| x * m + v));
            }
        }
        Graph::from_adjacency(adj)
    }

    /// DIMACS `.col` text: `p edge n m` then 1-indexed `e u v` lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses DIMACS `.col` text (comment lines start with `c`).
    pub fn from_dimacs(text: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad DIMACS line {line:?}")))
            };
            match fields.as_slice() {
                ["c", ..] => {}
                ["p", "edge", nv, _] => n = Some(num(nv)?),
                ["e", u, v] => {
                    let (u, v) = (num(u)?, num(v)?);
                    if u == 0 || v == 0 {
                        return Err(Error::Parse(format!(
                            "DIMACS vertices are 1-indexed: {line:?}"
                        )));
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(Error::Parse(format!("bad DIMACS line {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing DIMACS header".into()))?;
        Graph::from_edges(n, &edges)
    }
}
