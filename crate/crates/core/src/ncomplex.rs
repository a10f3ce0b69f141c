//! The 2-skeleton of the neighborhood complex `N(X)` (faces are vertex sets
//! with a common neighbor) and its first integral homology.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::cayley::CayleyGraph;
use crate::error::Result;
use crate::graph::Graph;
use crate::lattice::{sparse_cokernel_invariants, AbelianInvariants, SparseColumn};
use crate::pi1::{is_torsion, pi1_invariants};

/// Simplices of dimension at most 2, each stored with ascending vertex ids
/// (ids are vertices of the underlying graph), lists sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Complex2 {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

pub fn neighborhood_complex_2skeleton(x: &Graph) -> Complex2 {
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for v in 0..x.n() {
        let nb = x.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                edges.push((a, b));
                for &c in &nb[j + 1..] {
                    triangles.push((a, b, c));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    triangles.sort_unstable();
    triangles.dedup();
    let vertices = (0..x.n()).filter(|&v| x.degree(v) > 0).collect();
    Complex2 {
        vertices,
        edges,
        triangles,
    }
}

impl Complex2 {
    /// The 1-skeleton as a graph on the underlying vertex ids.
    pub fn one_skeleton(&self, n: usize) -> Graph {
        Graph::from_edges(n, &self.edges).expect("complex edges join distinct vertices")
    }

    /// Number of path components of the complex.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.iter().max().map_or(0, |&v| v + 1);
        let g = self.one_skeleton(n);
        let present: std::collections::HashSet<usize> = self.vertices.iter().copied().collect();
        g.components()
            .into_iter()
            .filter(|c| c.iter().any(|v| present.contains(v)))
            .count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// `∂1` as sparse columns over the vertex list (column `[a,b]` is
    /// `b - a`).
    pub fn boundary1(&self) -> Vec<SparseColumn> {
        let pos: HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        self.edges
            .iter()
            .map(|&(a, b)| vec![(pos[&a], -1), (pos[&b], 1)])
            .collect()
    }

    /// `∂2` as sparse columns over the edge list: `[a,b,c] -> [b,c] - [a,c] + [a,b]`.
    pub fn boundary2(&self) -> Vec<SparseColumn> {
        let pos: HashMap<(usize, usize), usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        self.triangles
            .iter()
            .map(|&(a, b, c)| {
                let mut col = vec![(pos[&(b, c)], 1), (pos[&(a, c)], -1), (pos[&(a, b)], 1)];
                col.sort_unstable();
                col
            })
            .collect()
    }
}

/// `H1 = ker ∂1 / im ∂2`.
///
/// A spanning forest of the 1-skeleton makes the non-tree edges coordinates
/// for `ker ∂1`: a cycle is determined by its coefficients on them. Projecting
/// the triangle boundaries onto those coordinates leaves a sparse cokernel.
pub fn h1_invariants(k: &Complex2) -> AbelianInvariants {
    let n = k.vertices.iter().max().map_or(0, |&v| v + 1);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut cycle_coord = vec![None; k.edges.len()];
    let mut next = 0;
    for (i, &(a, b)) in k.edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            cycle_coord[i] = Some(next);
            next += 1;
        } else {
            parent[ra] = rb;
        }
    }
    let cols: Vec<SparseColumn> = k
        .boundary2()
        .into_iter()
        .map(|col| {
            let mut out: SparseColumn = col
                .into_iter()
                .filter_map(|(e, x)| cycle_coord[e].map(|c| (c, x)))
                .collect();
            out.sort_unstable();
            out
        })
        .collect();
    sparse_cokernel_invariants(next, &cols)
}

/// Hypotheses of the topological lower bounds `χ >= 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chi4Certificate {
    pub connected: bool,
    pub non_bipartite: bool,
    pub h1: AbelianInvariants,
    pub h1_torsion: bool,
    /// `None` when π1 is unavailable (the graph is not an abelian Cayley graph).
    #[serde(serialize_with = "availability")]
    pub pi1_torsion: Option<bool>,
    pub implied_lower_bound: Option<usize>,
}

fn availability<S: Serializer>(v: &Option<bool>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_bool(*b),
        None => s.serialize_str("unavailable"),
    }
}

fn certificate(g: &Graph, pi1_torsion: Option<bool>) -> Chi4Certificate {
    let connected = g.n() > 0 && g.is_connected();
    let non_bipartite = !g.is_bipartite();
    let h1 = h1_invariants(&neighborhood_complex_2skeleton(g));
    let h1_torsion = is_torsion(&h1);
    let holds = connected && non_bipartite && (h1_torsion || pi1_torsion == Some(true));
    Chi4Certificate {
        connected,
        non_bipartite,
        h1,
        h1_torsion,
        pi1_torsion,
        implied_lower_bound: holds.then_some(4),
    }
}

/// Certificate for an arbitrary finite graph; π1 is not evaluated.
pub fn chi4_certificate_graph(g: &Graph) -> Chi4Certificate {
    certificate(g, None)
}

/// Certificate for a Cayley graph, with π1 from the relation lattice.
pub fn chi4_certificate(x: &CayleyGraph) -> Result<Chi4Certificate> {
    let p = pi1_invariants(x.group(), x.set())?;
    Ok(certificate(x.graph(), Some(is_torsion(&p.invariants))))
}
