//! Cayley graphs `Cay(G, S)` over finitely generated abelian groups.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{FgAbelianGroup, GroupElement};

/// Identity-free subset of a group, closed under negation, in a fixed order.
/// `inverse[i]` is the position of `-s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSet {
    elements: Vec<GroupElement>,
    inverse: Vec<usize>,
}

impl SymmetricSet {
    pub fn empty() -> Self {
        SymmetricSet {
            elements: Vec::new(),
            inverse: Vec::new(),
        }
    }

    /// Validates raw data: elements must be reduced members of `g`, distinct,
    /// not the identity, and closed under negation.
    pub fn new(g: &FgAbelianGroup, elements: Vec<GroupElement>) -> Result<Self> {
        let mut position = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if !g.contains(e) {
                return Err(Error::Precondition(format!(
                    "{e} is not a reduced element of {g}"
                )));
            }
            if g.is_identity(e) {
                return Err(Error::ContainsIdentity);
            }
            if position.insert(e.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate generator {e}")));
            }
        }
        let mut inverse = Vec::with_capacity(elements.len());
        for e in &elements {
            let neg = g.neg(e)?;
            match position.get(&neg) {
                Some(&j) => inverse.push(j),
                None => {
                    return Err(Error::NotSymmetric(format!(
                        "{e} is present but {neg} is not"
                    )))
                }
            }
        }
        Ok(SymmetricSet { elements, inverse })
    }

    /// Closure under negation with the identity and duplicates dropped. Each
    /// input is followed by its negation the first time it appears.
    pub fn symmetrize(g: &FgAbelianGroup, elems: &[GroupElement]) -> Result<Self> {
        let mut out: Vec<GroupElement> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in elems {
            let e = g.element_big(e.coords().to_vec())?;
            if g.is_identity(&e) {
                continue;
            }
            let neg = g.neg(&e)?;
            for x in [e, neg] {
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
        Self::new(g, out)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn position(&self, e: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn is_torsion(&self, g: &FgAbelianGroup) -> bool {
        self.elements.iter().all(|e| {
            e.coords()[..g.free_rank()]
                .iter()
                .all(num_traits::Zero::is_zero)
        })
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Vertex set is all of `G` (needs `G` finite).
    WholeGroup,
    /// Vertex set is `<S>`, the connected component of the identity.
    GeneratedSubgroup,
}

/// A materialized Cayley graph. Vertices are group elements in lexicographic
/// order; `step(v, j)` is the vertex `v + s_j`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: FgAbelianGroup,
    set: SymmetricSet,
    scope: Scope,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    steps: Vec<Vec<usize>>,
    graph: Graph,
}

impl CayleyGraph {
    pub fn build(g: &FgAbelianGroup, s: &SymmetricSet, scope: Scope) -> Result<Self> {
        // Revalidate in case the set was built against another group.
        let s = SymmetricSet::new(g, s.elements().to_vec())?;
        let vertices = match scope {
            Scope::WholeGroup => g.enumerate_elements()?,
            Scope::GeneratedSubgroup => {
                if !s.is_torsion(g) {
                    return Err(Error::InfiniteGroup(
                        "the generated subgroup contains an element of infinite order".into(),
                    ));
                }
                g.subgroup_elements(s.elements())?
            }
        };
        let index: HashMap<GroupElement, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut steps = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let row =
                s.elements()
                    .iter()
                    .map(|e| {
                        let w = g.add(v, e)?;
                        index.get(&w).copied().ok_or_else(|| {
                            Error::Precondition(format!("{w} escaped the vertex set"))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()?;
            steps.push(row);
        }
        let graph = Graph::from_adjacency(steps.clone());
        Ok(CayleyGraph {
            group: g.clone(),
            set: s,
            scope,
            vertices,
            index,
            steps,
            graph,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn set(&self) -> &SymmetricSet {
        &self.set
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &GroupElement {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, e: &GroupElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn identity_vertex(&self) -> usize {
        self.vertex_index(&self.group.zero())
            .expect("identity is always a vertex")
    }

    /// Vertex reached from `v` along generator `j`.
    pub fn step(&self, v: usize, j: usize) -> usize {
        self.steps[v][j]
    }

    /// The generator index `j` with `w = v + s_j`, if `v` and `w` are adjacent.
    pub fn generator_between(&self, v: usize, w: usize) -> Option<usize> {
        self.steps[v].iter().position(|&x| x == w)
    }

    /// `Cay(<S>, S)`: the component containing the identity.
    pub fn identity_component(&self) -> Result<CayleyGraph> {
        match self.scope {
            Scope::GeneratedSubgroup => Ok(self.clone()),
            Scope::WholeGroup => {
                CayleyGraph::build(&self.group, &self.set, Scope::GeneratedSubgroup)
            }
        }
    }

    pub fn export(&self) -> CayleyExport {
        CayleyExport {
            group: self.group.to_string(),
            set: self.set.labels(),
            scope: self.scope,
            vertices: self.vertices.iter().map(ToString::to_string).collect(),
            edges: self.graph.edge_count(),
            adjacency: (0..self.n())
                .map(|v| self.graph.neighbors(v).to_vec())
                .collect(),
        }
    }
}

/// JSON adjacency-list export with group-element vertex labels.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyExport {
    pub group: String,
    pub set: Vec<String>,
    pub scope: Scope,
    pub vertices: Vec<String>,
    pub edges: usize,
    pub adjacency: Vec<Vec<usize>>,
}

/// Shorthand for a finite whole-group Cayley graph over `Z/n` from raw
/// residues, which are symmetrized.
pub fn circulant(n: u64, residues: &[i64]) -> Result<CayleyGraph> {
    let g = FgAbelianGroup::cyclic(n)?;
    let elems = residues
        .iter()
        .map(|&r| g.element(&[r]))
        .collect::<Result<Vec<_>>>()?;
    let s = SymmetricSet::symmetrize(&g, &elems)?;
    CayleyGraph::build(&g, &s, Scope::WholeGroup)
}
