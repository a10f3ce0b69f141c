//! Walks, the substitution/insertion/deletion homotopy moves, and discrete
//! winding numbers against a proper 3-coloring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::chromatic::{is_proper, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex sequence `v0 .. vl` with consecutive vertices adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidWalk("a walk has at least one vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(Error::InvalidWalk(format!("vertex {v} out of range")));
        }
        if let Some(p) = vertices.windows(2).find(|p| !g.has_edge(p[0], p[1])) {
            return Err(Error::InvalidWalk(format!(
                "{} and {} are not adjacent",
                p[0], p[1]
            )));
        }
        Ok(Walk { vertices })
    }

    /// The length-0 walk at `v`.
    pub fn at(v: usize) -> Self {
        Walk { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("walks are nonempty")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    /// The walk traversed backwards.
    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Walk { vertices }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Sub,
    Ins,
    Del,
}

/// `Sub`: replace `v_i` by `vertex`; `Ins`: replace `v_i` by `v_i vertex v_i`;
/// `Del`: replace `v_{i-1} v_i v_{i+1}` by `v_{i-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyMove {
    pub kind: MoveKind,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
}

impl HomotopyMove {
    pub fn sub(index: usize, vertex: usize) -> Self {
        HomotopyMove {
            kind: MoveKind::Sub,
            index,
            vertex: Some(vertex),
        }
    }

    pub fn ins(index: usize, vertex: usize) -> Self {
        HomotopyMove {
            kind: MoveKind::Ins,
            index,
            vertex: Some(vertex),
        }
    }

    pub fn del(index: usize) -> Self {
        HomotopyMove {
            kind: MoveKind::Del,
            index,
            vertex: None,
        }
    }
}

fn illegal(m: &HomotopyMove, why: &str) -> Error {
    Error::IllegalMove(format!("{:?} at {}: {why}", m.kind, m.index))
}

pub fn apply_move(g: &Graph, w: &Walk, m: &HomotopyMove) -> Result<Walk> {
    let v = &w.vertices;
    let l = w.len();
    let i = m.index;
    let mut out = v.clone();
    match m.kind {
        MoveKind::Sub => {
            let x = m
                .vertex
                .ok_or_else(|| illegal(m, "missing replacement vertex"))?;
            if i == 0 || i >= l {
                return Err(illegal(m, "index must satisfy 0 < i < length"));
            }
            if !(g.has_edge(v[i - 1], x) && g.has_edge(x, v[i + 1])) {
                return Err(illegal(m, "replacement is not a common neighbor"));
            }
            out[i] = x;
        }
        MoveKind::Ins => {
            let x = m
                .vertex
                .ok_or_else(|| illegal(m, "missing inserted vertex"))?;
            if i > l {
                return Err(illegal(m, "index must satisfy 0 <= i <= length"));
            }
            if !g.has_edge(v[i], x) {
                return Err(illegal(m, "inserted vertex is not a neighbor"));
            }
            out.splice(i + 1..i + 1, [x, v[i]]);
        }
        MoveKind::Del => {
            if i == 0 || i >= l {
                return Err(illegal(m, "index must satisfy 0 < i < length"));
            }
            if v[i - 1] != v[i + 1] {
                return Err(illegal(m, "v_(i-1) != v_(i+1)"));
            }
            out.drain(i..i + 2);
        }
    }
    Ok(Walk { vertices: out })
}

/// `a` followed by `b`.
pub fn concat(a: &Walk, b: &Walk) -> Result<Walk> {
    if a.end() != b.start() {
        return Err(Error::InvalidWalk(format!(
            "first walk ends at {} but second starts at {}",
            a.end(),
            b.start()
        )));
    }
    let mut vertices = a.vertices.clone();
    vertices.extend_from_slice(&b.vertices[1..]);
    Ok(Walk { vertices })
}

/// `(a - b) / 3` where `a` (`b`) counts steps whose color difference is `+1`
/// (`-1`) in `Z/3`, colors read as residues `0, 1, 2`.
pub fn winding_number(g: &Graph, w: &Walk, c: &Coloring) -> Result<i64> {
    if !w.is_closed() {
        return Err(Error::InvalidWalk(
            "winding numbers need a closed walk".into(),
        ));
    }
    if c.k() != 3 {
        return Err(Error::ImproperColoring(format!(
            "need a 3-coloring, got k = {}",
            c.k()
        )));
    }
    if !is_proper(g, c) {
        return Err(Error::ImproperColoring("coloring is not proper".into()));
    }
    let (mut a, mut b) = (0i64, 0i64);
    for p in w.vertices.windows(2) {
        match (c.color(p[1]) + 3 - c.color(p[0])) % 3 {
            1 => a += 1,
            2 => b += 1,
            _ => unreachable!("proper colorings have no monochromatic steps"),
        }
    }
    debug_assert_eq!((a - b) % 3, 0);
    Ok((a - b) / 3)
}

/// Every legal move on `w`, excluding substitutions that change nothing.
pub fn legal_moves(g: &Graph, w: &Walk) -> Vec<HomotopyMove> {
    let v = &w.vertices;
    let l = w.len();
    let mut out = Vec::new();
    for i in 1..l {
        for &x in g.neighbors(v[i - 1]) {
            if x != v[i] && g.has_edge(x, v[i + 1]) {
                out.push(HomotopyMove::sub(i, x));
            }
        }
    }
    for (i, &vi) in v.iter().enumerate() {
        out.extend(g.neighbors(vi).iter().map(|&x| HomotopyMove::ins(i, x)));
    }
    for i in 1..l {
        if v[i - 1] == v[i + 1] {
            out.push(HomotopyMove::del(i));
        }
    }
    out
}

/// A legal move drawn uniformly from [`legal_moves`].
pub fn random_move<R: Rng + ?Sized>(g: &Graph, w: &Walk, rng: &mut R) -> Result<HomotopyMove> {
    let moves = legal_moves(g, w);
    if moves.is_empty() {
        return Err(Error::IllegalMove(
            "no legal move: the start vertex is isolated".into(),
        ));
    }
    Ok(moves[rng.random_range(0..moves.len())])
}

/// [`random_move`] driven by a fresh generator seeded with `seed`.
pub fn random_move_seeded(g: &Graph, w: &Walk, seed: u64) -> Result<HomotopyMove> {
    random_move(g, w, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Applies `moves` in order, returning every intermediate walk (first is `w`).
pub fn apply_script(g: &Graph, w: &Walk, moves: &[HomotopyMove]) -> Result<Vec<Walk>> {
    let mut out = vec![w.clone()];
    for m in moves {
        let next = apply_move(g, out.last().expect("nonempty"), m)?;
        out.push(next);
    }
    Ok(out)
}

/// A random walk of `steps` steps from `start`, closed up by a shortest path
/// back.
pub fn random_closed_walk<R: Rng + ?Sized>(
    g: &Graph,
    start: usize,
    steps: usize,
    rng: &mut R,
) -> Walk {
    let mut vertices = vec![start];
    let mut cur = start;
    for _ in 0..steps {
        let nb = g.neighbors(cur);
        if nb.is_empty() {
            break;
        }
        cur = nb[rng.random_range(0..nb.len())];
        vertices.push(cur);
    }
    let back = g
        .shortest_path(cur, start)
        .expect("a walk stays in its component");
    vertices.extend_from_slice(&back[1..]);
    Walk { vertices }
}

/// An odd closed walk at `v`, if the component of `v` is non-bipartite.
pub fn odd_closed_walk_at(g: &Graph, v: usize) -> Option<Walk> {
    let comp = g.components().into_iter().find(|c| c.contains(&v))?;
    let local = g.induced(&comp);
    let odd = local.odd_closed_walk()?;
    let odd: Vec<usize> = odd.into_iter().map(|i| comp[i]).collect();
    let to = g.shortest_path(v, odd[0])?;
    let mut vertices = to.clone();
    vertices.extend_from_slice(&odd[1..]);
    vertices.extend(to.iter().rev().skip(1));
    Some(Walk { vertices })
}

/// A random odd closed walk at `start`: a random closed walk, extended by a
/// fixed odd closed walk when its length is even.
pub fn sample_odd_closed_walk<R: Rng + ?Sized>(
    g: &Graph,
    start: usize,
    max_steps: usize,
    rng: &mut R,
) -> Option<Walk> {
    let odd = odd_closed_walk_at(g, start)?;
    let w = random_closed_walk(g, start, rng.random_range(0..=max_steps), rng);
    if w.len() % 2 == 1 {
        Some(w)
    } else {
        concat(&w, &odd).ok()
    }
}

/// Net number of steps along each generator of `x.set()`. The result lies in
/// the relation lattice of `S`.
pub fn walk_to_relation(x: &CayleyGraph, w: &Walk) -> Result<Vec<i64>> {
    if !w.is_closed() {
        return Err(Error::InvalidWalk(
            "relations come from closed walks".into(),
        ));
    }
    let mut out = vec![0i64; x.set().len()];
    for p in w.vertices.windows(2) {
        let j = x.generator_between(p[0], p[1]).ok_or_else(|| {
            Error::InvalidWalk(format!("step {} -> {} is not a generator", p[0], p[1]))
        })?;
        out[j] += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::circulant;
    use crate::chromatic::optimal_coloring;

    fn w(g: &Graph, v: &[usize]) -> Walk {
        Walk::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn move_examples() {
        let k3 = Graph::complete(3);
        let ins = apply_move(&k3, &Walk::at(0), &HomotopyMove::ins(0, 1)).unwrap();
        assert_eq!(ins.vertices(), [0, 1, 0]);
        let del = apply_move(&k3, &ins, &HomotopyMove::del(1)).unwrap();
        assert_eq!(del, Walk::at(0));

        let x = circulant(8, &[1, 4]).unwrap();
        let g = x.graph();
        let p = w(g, &[0, 1, 2]);
        let common: Vec<_> = g
            .neighbors(0)
            .iter()
            .filter(|&&c| g.has_edge(c, 2))
            .collect();
        assert_eq!(common, [&1]);
        assert_eq!(apply_move(g, &p, &HomotopyMove::sub(1, 1)).unwrap(), p);
        assert!(apply_move(g, &p, &HomotopyMove::sub(1, 4)).is_err());
        assert!(apply_move(g, &p, &HomotopyMove::del(1)).is_err());
        assert!(apply_move(g, &p, &HomotopyMove::sub(0, 1)).is_err());
        assert!(apply_move(g, &p, &HomotopyMove::ins(3, 1)).is_err());
    }

    #[test]
    fn concat_examples() {
        let k3 = Graph::complete(3);
        let t = w(&k3, &[0, 1, 2, 0]);
        assert_eq!(concat(&t, &Walk::at(0)).unwrap(), t);
        let tt = concat(&t, &t).unwrap();
        assert!(tt.is_closed() && tt.len() == 6);
        assert!(concat(&t, &Walk::at(1)).is_err());
    }

    #[test]
    fn winding_examples() {
        let k3 = Graph::complete(3);
        let c = Coloring::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(winding_number(&k3, &w(&k3, &[0, 1, 2, 0]), &c).unwrap(), 1);
        assert_eq!(winding_number(&k3, &w(&k3, &[0, 2, 1, 0]), &c).unwrap(), -1);
        let x = circulant(8, &[1, 4]).unwrap();
        let c = Coloring::new(3, (0..8).map(|v| v % 3).collect()).unwrap();
        let walk = w(x.graph(), &[0, 1, 2, 3, 4, 5, 6, 7, 0]);
        assert_eq!(winding_number(x.graph(), &walk, &c).unwrap(), 2);
        assert!(winding_number(x.graph(), &w(x.graph(), &[0, 1]), &c).is_err());
    }

    #[test]
    fn relation_examples() {
        let x = circulant(8, &[1, 4]).unwrap();
        let g = x.graph();
        assert_eq!(
            walk_to_relation(&x, &w(g, &[0, 1, 2, 3, 4, 0])).unwrap(),
            [4, 0, 1]
        );
        assert_eq!(walk_to_relation(&x, &Walk::at(3)).unwrap(), [0, 0, 0]);
        assert_eq!(walk_to_relation(&x, &w(g, &[0, 1, 0])).unwrap(), [1, 1, 0]);
    }

    #[test]
    fn random_moves_are_deterministic_and_reach_deletions() {
        let x = circulant(8, &[1, 4]).unwrap();
        let g = x.graph();
        let m = random_move_seeded(g, &Walk::at(0), 9).unwrap();
        assert_eq!(m.kind, MoveKind::Ins);
        let back = w(g, &[0, 1, 0]);
        assert_eq!(
            random_move_seeded(g, &back, 4).unwrap(),
            random_move_seeded(g, &back, 4).unwrap()
        );
        let dels = (0..1000)
            .filter(|&s| random_move_seeded(g, &back, s).unwrap().kind == MoveKind::Del)
            .count();
        assert!(dels > 0);
        assert!(random_move_seeded(&Graph::empty(1), &Walk::at(0), 0).is_err());
    }

    #[test]
    fn winding_is_invariant_additive_and_odd() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, s) in [
            (8u64, vec![1i64, 4]),
            (9, vec![1, 2]),
            (12, vec![1, 2]),
            (3, vec![1]),
            (15, vec![1, 5]),
        ] {
            let x = circulant(n, &s).unwrap();
            let g = x.graph();
            let c = optimal_coloring(g);
            assert_eq!(c.k(), 3);
            for _ in 0..20 {
                let mut walk = random_closed_walk(g, 0, 6, &mut rng);
                let wind = winding_number(g, &walk, &c).unwrap();
                let parity = walk.len() % 2;
                for _ in 0..25 {
                    let m = random_move(g, &walk, &mut rng).unwrap();
                    walk = apply_move(g, &walk, &m).unwrap();
                    assert_eq!(winding_number(g, &walk, &c).unwrap(), wind);
                    assert_eq!(walk.len() % 2, parity);
                }
                let other = random_closed_walk(g, 0, 5, &mut rng);
                let both = concat(&walk, &other).unwrap();
                assert_eq!(
                    winding_number(g, &both, &c).unwrap(),
                    wind + winding_number(g, &other, &c).unwrap()
                );
                let odd = sample_odd_closed_walk(g, 0, 10, &mut rng).unwrap();
                assert_eq!(odd.len() % 2, 1);
                assert_eq!(winding_number(g, &odd, &c).unwrap().rem_euclid(2), 1);
            }
        }
    }

    #[test]
    fn relations_add_under_concatenation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = circulant(10, &[1, 3]).unwrap();
        let g = x.graph();
        for _ in 0..50 {
            let a = random_closed_walk(g, 0, 8, &mut rng);
            let b = random_closed_walk(g, 0, 8, &mut rng);
            let ra = walk_to_relation(&x, &a).unwrap();
            let rb = walk_to_relation(&x, &b).unwrap();
            let rab = walk_to_relation(&x, &concat(&a, &b).unwrap()).unwrap();
            assert_eq!(
                rab,
                ra.iter().zip(&rb).map(|(p, q)| p + q).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn move_scripts_round_trip_as_json() {
        let moves = vec![HomotopyMove::ins(0, 1), HomotopyMove::del(1)];
        let text = serde_json::to_string(&moves).unwrap();
        assert_eq!(
            text,
            r#"[{"kind":"Ins","index":0,"vertex":1},{"kind":"Del","index":1}]"#
        );
        let back: Vec<HomotopyMove> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, moves);
        let k3 = Graph::complete(3);
        let steps = apply_script(&k3, &Walk::at(0), &back).unwrap();
        assert_eq!(steps.last().unwrap(), &Walk::at(0));
    }
}
