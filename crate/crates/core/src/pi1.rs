//! The discrete fundamental group of an abelian Cayley graph as the lattice
//! quotient `R[S] / H[S]`.
//!
//! `Z[S]` has one coordinate per element of `S` in the set's order. `R[S]` is
//! the kernel of `x -> sum x_i s_i`; `H[S]` is spanned by `s + (-s)` and by
//! `s1 + s2 - s3 - s4` whenever `s1 + s2 = s3 + s4` in the group.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cayley::SymmetricSet;
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement};
use crate::lattice::{kernel_mod, quotient_of_bases, AbelianInvariants, HermiteBasis, IntMatrix};

/// Coordinates of `Z[S]`: the elements of `S` in order, with `-s_i` recorded
/// as `s_{inverse(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorIndex {
    elements: Vec<GroupElement>,
    inverse: Vec<usize>,
}

impl GeneratorIndex {
    pub fn new(s: &SymmetricSet) -> Self {
        GeneratorIndex {
            elements: s.elements().to_vec(),
            inverse: (0..s.len()).map(|i| s.inverse_of(i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// `sum x_i s_i` in `g`.
    pub fn evaluate(&self, g: &FgAbelianGroup, x: &[BigInt]) -> Result<GroupElement> {
        let mut acc = g.zero();
        for (c, s) in x.iter().zip(&self.elements) {
            acc = g.add(&acc, &g.scale(c, s)?)?;
        }
        Ok(acc)
    }

    /// Formal sum notation, e.g. `2·(1) - 1·(7)`.
    pub fn format(&self, x: &[BigInt]) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.elements)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| format!("{c}·{s}"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Basis (columns) of `R[S]`.
pub fn relation_lattice(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<IntMatrix> {
    let a = g.coordinate_matrix(s.elements())?;
    kernel_mod(&a, &g.relation_moduli())
}

/// Basis (columns) of `R^EVEN[S]`: relations with even coefficient sum.
pub fn even_relation_lattice(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<IntMatrix> {
    let a = g.coordinate_matrix(s.elements())?;
    let mut rows = a.to_row_lists();
    rows.push(vec![BigInt::from(1); s.len()]);
    let mut moduli = g.relation_moduli();
    moduli.push(2.into());
    let cols = (0..s.len())
        .map(|j| rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    kernel_mod(&IntMatrix::from_columns(rows.len(), &cols), &moduli)
}

/// Pairs `(a, b)` with `a <= b`, grouped by `s_a + s_b`, groups ordered by
/// first appearance.
fn pair_sum_classes(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = s.len();
    let mut key: HashMap<GroupElement, usize> = HashMap::new();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let sum = g.add(&s.elements()[a], &s.elements()[b])?;
            let next = classes.len();
            let k = *key.entry(sum).or_insert(next);
            if k == next {
                classes.push(Vec::new());
            }
            classes[k].push((a, b));
        }
    }
    Ok(classes)
}

fn pair_vector(n: usize, (a, b): (usize, usize)) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[a] += 1;
    v[b] += 1;
    v
}

fn inverse_pair_columns(s: &SymmetricSet) -> Vec<Vec<i64>> {
    (0..s.len())
        .filter(|&i| i <= s.inverse_of(i))
        .map(|i| pair_vector(s.len(), (i, s.inverse_of(i))))
        .collect()
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Generators (columns) of `H[S]`: one per inverse pair (`2 s` when `s` is
/// self-inverse) and one per unordered pair of pairs with equal sums, zero and
/// duplicate columns removed.
pub fn homotopy_subgroup_gens(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<IntMatrix> {
    let n = s.len();
    let mut cols = inverse_pair_columns(s);
    for class in pair_sum_classes(g, s)? {
        for (i, &p) in class.iter().enumerate() {
            for &q in &class[i + 1..] {
                let (vp, vq) = (pair_vector(n, p), pair_vector(n, q));
                cols.push(vp.iter().zip(&vq).map(|(x, y)| x - y).collect());
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    let cols: Vec<Vec<BigInt>> = cols
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0) && seen.insert(c.clone()))
        .map(|c| to_big(&c))
        .collect();
    Ok(IntMatrix::from_columns(n, &cols))
}

/// A smaller spanning set of the same lattice as [`homotopy_subgroup_gens`]:
/// within each pair-sum class only differences against the first pair.
fn homotopy_spanning_set(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Vec<Vec<BigInt>>> {
    let n = s.len();
    let mut cols = inverse_pair_columns(s);
    for class in pair_sum_classes(g, s)? {
        let base = pair_vector(n, class[0]);
        for &q in &class[1..] {
            let vq = pair_vector(n, q);
            cols.push(base.iter().zip(&vq).map(|(x, y)| x - y).collect());
        }
    }
    Ok(cols.iter().map(|c| to_big(c)).collect())
}

pub fn homotopy_lattice(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<HermiteBasis> {
    Ok(HermiteBasis::from_generators(
        s.len(),
        homotopy_spanning_set(g, s)?,
    ))
}

/// `π1` or `π1^EVEN` with the conditions under which it was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Invariants {
    pub invariants: AbelianInvariants,
    /// Whether `S` generates `G`. When it does not, the group computed is that
    /// of `Cay(<S>, S)`, the identity component.
    pub generates_group: bool,
    /// Set when the graph-theoretic reading of the result needs a caveat.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn generates(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<bool> {
    // <S> = G iff the coordinate matrix with the relation columns spans Z^dim.
    let mut gens: Vec<Vec<BigInt>> = s.elements().iter().map(|e| e.coords().to_vec()).collect();
    for (i, n) in g.relation_moduli().iter().enumerate() {
        if !n.is_zero() {
            let mut v = vec![BigInt::zero(); g.dim()];
            v[i] = n.clone();
            gens.push(v);
        }
    }
    let h = HermiteBasis::from_generators(g.dim(), gens);
    Ok(h.rank() == g.dim() && h.pivot_product() == BigInt::from(1))
}

fn quotient(outer: &IntMatrix, h: &HermiteBasis) -> Result<AbelianInvariants> {
    let outer = HermiteBasis::from_generators(outer.rows(), outer.columns());
    quotient_of_bases(&outer, h).map_err(|e| match e {
        Error::NotContained(m) => {
            Error::Precondition(format!("H[S] is not inside the relation lattice: {m}"))
        }
        other => other,
    })
}

/// Invariants of `π1(Cay(<S>, S)) = R[S] / H[S]`.
pub fn pi1_invariants(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Pi1Invariants> {
    let s = SymmetricSet::new(g, s.elements().to_vec())?;
    let r = relation_lattice(g, &s)?;
    let h = homotopy_lattice(g, &s)?;
    Ok(Pi1Invariants {
        invariants: quotient(&r, &h)?,
        generates_group: generates(g, &s)?,
        warning: None,
    })
}

/// Invariants of `R^EVEN[S] / H[S]`, the fundamental group of the neighborhood
/// complex when `Cay(<S>, S)` is non-bipartite.
pub fn pi1_even_invariants(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Pi1Invariants> {
    let s = SymmetricSet::new(g, s.elements().to_vec())?;
    let r = even_relation_lattice(g, &s)?;
    let h = homotopy_lattice(g, &s)?;
    let invariants = quotient(&r, &h)?;
    // Cay(<S>, S) is bipartite iff every relation has even coefficient sum.
    let full = HermiteBasis::from_generators(s.len(), relation_lattice(g, &s)?.columns());
    let even = HermiteBasis::from_generators(s.len(), r.columns());
    let bipartite = full.rank() == even.rank() && full.pivot_product() == even.pivot_product();
    let warning = bipartite.then(|| {
        "Cay(<S>, S) is bipartite; the neighborhood complex is disconnected and this group is only the even part of π1".to_string()
    });
    Ok(Pi1Invariants {
        invariants,
        generates_group: generates(g, &s)?,
        warning,
    })
}

pub fn is_torsion(inv: &AbelianInvariants) -> bool {
    inv.free_rank == 0
}

/// Whether `4 q` lies in `H[S]` for every `q` in a basis of `R[S]`.
pub fn four_r_in_h(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<bool> {
    let r = relation_lattice(g, s)?;
    let h = homotopy_lattice(g, s)?;
    let four = BigInt::from(4);
    Ok(r.columns().iter().all(|q| {
        let q4: Vec<BigInt> = q.iter().map(|x| x * &four).collect();
        h.contains(&q4)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{circulant, CayleyGraph, Scope};
    use crate::chromatic::k_colorable;
    use crate::lattice::{canonical_invariants, hermite_basis};
    use crate::walks::{
        apply_move, random_closed_walk, random_move, walk_to_relation, MoveKind, Walk,
    };
    use rand::{Rng, SeedableRng};

    fn big(v: &[i64]) -> Vec<BigInt> {
        to_big(v)
    }

    fn set(g: &FgAbelianGroup, raw: &[i64]) -> SymmetricSet {
        let e: Vec<_> = raw.iter().map(|&r| g.element(&[r]).unwrap()).collect();
        SymmetricSet::symmetrize(g, &e).unwrap()
    }

    fn cyclic_set(n: u64, raw: &[i64]) -> (FgAbelianGroup, SymmetricSet) {
        let g = FgAbelianGroup::cyclic(n).unwrap();
        let s = set(&g, raw);
        (g, s)
    }

    /// All quadruples `(a, b, c, d)` with `s_a + s_b = s_c + s_d`, plus the
    /// inverse pairs, straight from the definition.
    fn brute_h(g: &FgAbelianGroup, s: &SymmetricSet) -> Vec<Vec<BigInt>> {
        let n = s.len();
        let e = s.elements();
        let mut out = Vec::new();
        for i in 0..n {
            out.push(big(&pair_vector(n, (i, s.inverse_of(i)))));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if g.add(&e[a], &e[b]).unwrap() == g.add(&e[c], &e[d]).unwrap() {
                            let mut v = vec![0i64; n];
                            v[a] += 1;
                            v[b] += 1;
                            v[c] -= 1;
                            v[d] -= 1;
                            out.push(big(&v));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn relation_lattice_examples() {
        let (g, s) = cyclic_set(8, &[1, 4]);
        let r = relation_lattice(&g, &s).unwrap();
        assert_eq!(r.cols(), 3);
        assert_eq!(r.determinant().magnitude(), &8u32.into());

        let g = FgAbelianGroup::free(1);
        let s = SymmetricSet::symmetrize(&g, &[g.element(&[1]).unwrap()]).unwrap();
        assert_eq!(
            relation_lattice(&g, &s).unwrap().columns(),
            vec![big(&[1, 1])]
        );
        assert_eq!(
            homotopy_subgroup_gens(&g, &s).unwrap().columns(),
            vec![big(&[1, 1])]
        );

        for n in 9..=15i64 {
            let (g, s) = cyclic_set(n as u64, &[1, 2]);
            let r = HermiteBasis::from_generators(4, relation_lattice(&g, &s).unwrap().columns());
            for a in -2..=2i64 {
                for b in -2..=2i64 {
                    for c in -2..=2i64 {
                        for d in -2..=2i64 {
                            let member = (a - b + 2 * c - 2 * d).rem_euclid(n) == 0;
                            assert_eq!(r.contains(&big(&[a, b, c, d])), member);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn homotopy_gens_example() {
        let (g, s) = cyclic_set(8, &[1, 4]);
        let h = homotopy_subgroup_gens(&g, &s).unwrap();
        assert_eq!(
            h.columns(),
            vec![big(&[1, 1, 0]), big(&[0, 0, 2]), big(&[1, 1, -2])]
        );
    }

    #[test]
    fn grouped_enumeration_matches_brute_force() {
        for spec in [
            "Z/8",
            "Z/9",
            "Z/12",
            "(Z/2)^3",
            "Z/4 x Z/4",
            "Z/2 x Z/6",
            "Z x Z/3",
        ] {
            let g = FgAbelianGroup::parse(spec).unwrap();
            let finite = g.is_finite();
            let pool: Vec<GroupElement> = if finite {
                g.enumerate_elements().unwrap()
            } else {
                (-2..=2)
                    .flat_map(|a| (0..3).map(move |b| (a, b)))
                    .map(|(a, b)| g.element(&[a, b]).unwrap())
                    .collect()
            };
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..15 {
                let k = rng.random_range(0..5);
                let raw: Vec<_> = (0..k)
                    .map(|_| pool[rng.random_range(0..pool.len())].clone())
                    .collect();
                let s = SymmetricSet::symmetrize(&g, &raw).unwrap();
                let n = s.len();
                let brute = hermite_basis(n, brute_h(&g, &s));
                let grouped = hermite_basis(n, homotopy_subgroup_gens(&g, &s).unwrap().columns());
                let spanning = homotopy_lattice(&g, &s).unwrap().into_vectors();
                assert_eq!(grouped, brute, "{spec}");
                assert_eq!(spanning, brute, "{spec}");
            }
        }
    }

    #[test]
    fn pi1_examples() {
        for n in 9..=15 {
            let (g, s) = cyclic_set(n, &[1, 2]);
            let p = pi1_invariants(&g, &s).unwrap();
            assert_eq!(p.invariants, AbelianInvariants::new(2, vec![]));
            assert!(p.generates_group);
        }
        let (g, s) = cyclic_set(8, &[1, 4]);
        assert_eq!(
            pi1_invariants(&g, &s).unwrap().invariants,
            AbelianInvariants::new(1, vec![])
        );
        let (g, s) = cyclic_set(3, &[1]);
        assert_eq!(
            pi1_invariants(&g, &s).unwrap().invariants,
            AbelianInvariants::new(1, vec![])
        );
        let (g, s) = cyclic_set(3, &[1]);
        let even = pi1_even_invariants(&g, &s).unwrap();
        assert_eq!(even.invariants, AbelianInvariants::new(1, vec![]));
        assert!(even.warning.is_none());
        let (g, s) = cyclic_set(8, &[1, 4]);
        assert!(pi1_even_invariants(&g, &s).unwrap().invariants.free_rank >= 1);
        let (g, s) = cyclic_set(4, &[1]);
        let even = pi1_even_invariants(&g, &s).unwrap();
        assert!(is_torsion(&even.invariants));
        assert!(even.warning.is_some());
        let (g, s) = cyclic_set(4, &[1, 2]);
        assert!(is_torsion(&pi1_invariants(&g, &s).unwrap().invariants));
        let empty = pi1_invariants(&g, &SymmetricSet::empty()).unwrap();
        assert!(empty.invariants.is_trivial() && !empty.generates_group);
    }

    #[test]
    fn torsion_predicate() {
        assert!(is_torsion(&canonical_invariants(&[4.into()], 0)));
        assert!(!is_torsion(&AbelianInvariants::new(1, vec![])));
        assert!(is_torsion(&AbelianInvariants::trivial()));
    }

    #[test]
    fn scope_substitution_is_exact() {
        let g = FgAbelianGroup::parse("Z/4 x Z/6").unwrap();
        for raw in [
            vec![(0, 2)],
            vec![(2, 0), (0, 3)],
            vec![(1, 0)],
            vec![(2, 3), (0, 2)],
        ] {
            let e: Vec<_> = raw
                .iter()
                .map(|&(a, b)| g.element(&[a, b]).unwrap())
                .collect();
            let s = SymmetricSet::symmetrize(&g, &e).unwrap();
            let sub = g.subgroup_generated(s.elements()).unwrap();
            let p = pi1_invariants(&g, &s).unwrap();
            assert!(!p.generates_group);
            let sub_s = SymmetricSet::symmetrize(
                &sub.group,
                &s.elements()
                    .iter()
                    .map(|x| locate(&g, &sub, x))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(
                pi1_invariants(&sub.group, &sub_s).unwrap().invariants,
                p.invariants
            );
        }
    }

    /// Coordinates of `x` in the subgroup's presentation, by search.
    fn locate(g: &FgAbelianGroup, sub: &crate::group::Subgroup, x: &GroupElement) -> GroupElement {
        sub.group
            .enumerate_elements()
            .unwrap()
            .into_iter()
            .find(|y| &sub.embed(g, y.coords()).unwrap() == x)
            .unwrap()
    }

    #[test]
    fn exponent_four_relations_are_torsion() {
        for g in FgAbelianGroup::finite_up_to_order(16) {
            let e = g.exponent();
            if !(e == 1.into() || e == 2.into() || e == 4.into()) {
                continue;
            }
            let elems: Vec<_> = g
                .enumerate_elements()
                .unwrap()
                .into_iter()
                .skip(1)
                .collect();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
            for _ in 0..30 {
                let raw: Vec<_> = elems
                    .iter()
                    .filter(|_| rng.random_bool(0.4))
                    .cloned()
                    .collect();
                let s = SymmetricSet::symmetrize(&g, &raw).unwrap();
                assert!(four_r_in_h(&g, &s).unwrap(), "{g}");
                assert!(
                    is_torsion(&pi1_invariants(&g, &s).unwrap().invariants),
                    "{g}"
                );
            }
        }
    }

    #[test]
    fn torsion_implies_not_three_colorable() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for g in FgAbelianGroup::finite_up_to_order(16) {
            let elems = g.enumerate_elements().unwrap();
            for _ in 0..12 {
                let raw: Vec<_> = elems
                    .iter()
                    .filter(|_| rng.random_bool(0.3))
                    .cloned()
                    .collect();
                let s = SymmetricSet::symmetrize(&g, &raw).unwrap();
                let x0 = CayleyGraph::build(&g, &s, Scope::GeneratedSubgroup).unwrap();
                let p = pi1_invariants(&g, &s).unwrap();
                if is_torsion(&p.invariants) && !x0.graph().is_bipartite() {
                    assert!(k_colorable(x0.graph(), 3).is_none(), "{g} {:?}", s.labels());
                }
            }
        }
    }

    #[test]
    fn walks_give_relations_and_moves_give_homotopies() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for (n, raw) in [(8u64, vec![1i64, 4]), (10, vec![1, 2]), (12, vec![2, 3])] {
            let x = circulant(n, &raw).unwrap();
            let g = x.group();
            let r = HermiteBasis::from_generators(
                x.set().len(),
                relation_lattice(g, x.set()).unwrap().columns(),
            );
            let h = homotopy_lattice(g, x.set()).unwrap();
            for _ in 0..30 {
                let w = random_closed_walk(x.graph(), 0, 10, &mut rng);
                assert!(r.contains(&big(&walk_to_relation(&x, &w).unwrap())));
                // Insertions and deletions from the trivial walk.
                let mut t = Walk::at(0);
                for _ in 0..12 {
                    let m = loop {
                        let m = random_move(x.graph(), &t, &mut rng).unwrap();
                        if m.kind != MoveKind::Sub {
                            break m;
                        }
                    };
                    t = apply_move(x.graph(), &t, &m).unwrap();
                }
                let rel = walk_to_relation(&x, &t).unwrap();
                assert!(h.contains(&big(&rel)));
                // A walk and any homotopic walk differ by an element of H.
                let mut u = w.clone();
                for _ in 0..10 {
                    let m = random_move(x.graph(), &u, &mut rng).unwrap();
                    u = apply_move(x.graph(), &u, &m).unwrap();
                }
                let a = walk_to_relation(&x, &w).unwrap();
                let b = walk_to_relation(&x, &u).unwrap();
                let diff: Vec<i64> = a.iter().zip(&b).map(|(p, q)| p - q).collect();
                assert!(h.contains(&big(&diff)));
            }
        }
    }

    #[test]
    fn evaluation_and_formatting() {
        let (g, s) = cyclic_set(8, &[1, 4]);
        let idx = GeneratorIndex::new(&s);
        assert_eq!(idx.len(), 3);
        assert_eq!(idx.inverse(0), 1);
        let r = relation_lattice(&g, &s).unwrap();
        for q in r.columns() {
            assert!(g.is_identity(&idx.evaluate(&g, &q).unwrap()));
        }
        assert_eq!(idx.format(&big(&[4, 0, 1])), "4·(1) + 1·(4)");
    }
}
