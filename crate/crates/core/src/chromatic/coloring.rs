use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total vertex map into `{0, ..., k - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<usize>) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::Precondition(format!(
                "color {c} out of range for k = {k}"
            )));
        }
        Ok(Coloring { k, colors })
    }

    /// Uses `max color + 1` as `k`.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { k, colors }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Same map viewed as a coloring with `k` colors (`k` at least the current).
    pub fn padded(&self, k: usize) -> Result<Self> {
        Coloring::new(k, self.colors.clone())
    }

    /// Number of distinct colors actually used.
    pub fn used(&self) -> usize {
        let mut seen = vec![false; self.k];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.iter().filter(|&&b| b).count()
    }

    /// `v <vertex> <color>` lines, vertices 1-indexed as in DIMACS.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            let _ = writeln!(out, "v {} {}", v + 1, c);
        }
        out
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.colors.serialize(s)
    }
}

/// True iff `c` covers every vertex and no edge is monochromatic.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    c.len() == g.n() && g.edges().into_iter().all(|(u, v)| c.color(u) != c.color(v))
}

/// `c(u, v) = (cx(u) + cy(v)) mod k` on `X □ Y`, `k` the larger color count.
pub fn box_coloring(x: &Graph, cx: &Coloring, y: &Graph, cy: &Coloring) -> Result<Coloring> {
    if !is_proper(x, cx) {
        return Err(Error::ImproperColoring(
            "left factor coloring is not proper".into(),
        ));
    }
    if !is_proper(y, cy) {
        return Err(Error::ImproperColoring(
            "right factor coloring is not proper".into(),
        ));
    }
    let k = cx.k().max(cy.k());
    let mut colors = Vec::with_capacity(x.n() * y.n());
    for u in 0..x.n() {
        for v in 0..y.n() {
            colors.push((cx.color(u) + cy.color(v)) % k.max(1));
        }
    }
    Coloring::new(k, colors)
}
