//! Exact chromatic numbers and explicit 3-chromatic constructions.

mod coloring;
mod construct;
mod solver;

use std::time::Duration;

pub use coloring::{box_coloring, is_proper, Coloring};
pub use construct::{construct_3chromatic_s, construct_connected_3chromatic_s, fig2_coloring};
pub use solver::{
    chromatic_number, chromatic_number_within, decide_k_colorable, dsatur_greedy, greedy_clique,
    k_colorable, optimal_coloring, ChiOutcome, Decision,
};

use crate::cayley::CayleyGraph;
use crate::error::Result;

/// `χ(Cay(G, S))`, computed on the identity component `Cay(<S>, S)`; every
/// other component is a translate of it.
pub fn cayley_chromatic_number(x: &CayleyGraph, budget: Option<Duration>) -> Result<ChiOutcome> {
    let x0 = x.identity_component()?;
    Ok(chromatic_number_within(x0.graph(), budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{circulant, CayleyGraph, Scope, SymmetricSet};
    use crate::graph::Graph;
    use crate::group::FgAbelianGroup;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    /// Tries all `k^n` colorings.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.n();
        if n == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let edges = g.edges();
        let mut c = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| c[u] != c[v]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                c[i] += 1;
                if c[i] < k {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn solver_matches_brute_force_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(0..=8);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            for k in 0..=4 {
                let got = k_colorable(&g, k);
                assert_eq!(got.is_some(), brute_colorable(&g, k), "n={n} k={k} {g:?}");
                if let Some(c) = got {
                    assert!(is_proper(&g, &c) && c.k() == k);
                }
            }
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(
            chromatic_number(&circulant(8, &[1, 4]).unwrap().graph().clone()),
            3
        );
        assert_eq!(chromatic_number(&Graph::cycle(5)), 3);
        let g = FgAbelianGroup::elementary(2, 3).unwrap();
        let all: Vec<_> = g
            .enumerate_elements()
            .unwrap()
            .into_iter()
            .skip(1)
            .collect();
        let s = SymmetricSet::symmetrize(&g, &all).unwrap();
        let k8 = CayleyGraph::build(&g, &s, Scope::WholeGroup).unwrap();
        assert_eq!(k8.graph(), &Graph::complete(8));
        assert_eq!(chromatic_number(k8.graph()), 8);
        assert_eq!(chromatic_number(&Graph::empty(0)), 0);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
        assert_eq!(chromatic_number(&Graph::cycle(6)), 2);
    }

    #[test]
    fn circulant_two_generator_examples() {
        let x10 = circulant(10, &[1, 2]).unwrap();
        assert!(k_colorable(x10.graph(), 3).is_none());
        let c = k_colorable(x10.graph(), 4).unwrap();
        assert!(is_proper(x10.graph(), &c));
        assert!(k_colorable(x10.graph(), 0).is_none());
        assert!(k_colorable(&Graph::empty(0), 0).is_some());
    }

    #[test]
    fn known_colorings_are_proper() {
        let x = circulant(8, &[1, 4]).unwrap();
        let mod3 = Coloring::new(3, (0..8).map(|v| v % 3).collect()).unwrap();
        assert!(is_proper(x.graph(), &mod3));
        let x9 = circulant(9, &[1, 2]).unwrap();
        let mod3 = Coloring::new(3, (0..9).map(|v| v % 3).collect()).unwrap();
        assert!(is_proper(x9.graph(), &mod3));
        let k2 = Graph::complete(2);
        assert!(!is_proper(&k2, &Coloring::new(1, vec![0, 0]).unwrap()));
    }

    #[test]
    fn fig2_colorings() {
        for k in 3..=10u32 {
            let n = 1u64 << k;
            let x = circulant(n, &[1, (n / 2) as i64]).unwrap();
            let c = fig2_coloring(k).unwrap();
            assert!(is_proper(x.graph(), &c), "k = {k}");
            assert_eq!(c.used(), 3);
        }
        assert!(fig2_coloring(2).is_err());
    }

    fn set_labels(g: &str, f: fn(&FgAbelianGroup) -> crate::Result<SymmetricSet>) -> Vec<String> {
        f(&FgAbelianGroup::parse(g).unwrap()).unwrap().labels()
    }

    #[test]
    fn construction_examples() {
        assert_eq!(
            set_labels("Z/8", construct_3chromatic_s),
            ["(1)", "(7)", "(4)"]
        );
        assert_eq!(set_labels("Z/9", construct_3chromatic_s), ["(1)", "(8)"]);
        assert_eq!(
            set_labels("Z", construct_3chromatic_s),
            ["(1)", "(-1)", "(2)", "(-2)"]
        );
        assert!(construct_3chromatic_s(&FgAbelianGroup::parse("Z/4").unwrap()).is_err());
        assert!(construct_3chromatic_s(&FgAbelianGroup::trivial()).is_err());
        assert_eq!(
            set_labels("Z/8 x Z/3", construct_connected_3chromatic_s),
            ["(1,0)", "(7,0)", "(4,0)", "(0,1)", "(0,2)"]
        );
        assert_eq!(
            set_labels("Z/9", construct_connected_3chromatic_s),
            ["(1)", "(8)"]
        );
        assert!(
            construct_connected_3chromatic_s(&FgAbelianGroup::parse("(Z/4)^2").unwrap()).is_err()
        );
        // Z/12 splits as Z/4 x Z/3; the order-3 part qualifies.
        assert_eq!(
            set_labels("Z/12", construct_connected_3chromatic_s),
            ["(4)", "(8)", "(3)", "(9)"]
        );
    }

    #[test]
    fn constructions_are_three_chromatic() {
        for g in FgAbelianGroup::finite_up_to_order(24) {
            let e = g.exponent();
            if e == 1.into() || e == 2.into() || e == 4.into() {
                assert!(construct_3chromatic_s(&g).is_err());
                continue;
            }
            let s = construct_3chromatic_s(&g).unwrap();
            let x = CayleyGraph::build(&g, &s, Scope::WholeGroup).unwrap();
            assert_eq!(
                cayley_chromatic_number(&x, None).unwrap().exact(),
                Some(3),
                "{g}"
            );
            let s = construct_connected_3chromatic_s(&g).unwrap();
            let x = CayleyGraph::build(&g, &s, Scope::WholeGroup).unwrap();
            assert!(x.graph().is_connected(), "{g}");
            assert_eq!(chromatic_number(x.graph()), 3, "{g}");
        }
    }

    #[test]
    fn two_chromatic_iff_bipartite_with_edge() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(1..12);
            let g = random_graph(&mut rng, n, 0.25);
            let chi = chromatic_number(&g);
            assert_eq!(
                chi == 2,
                g.edge_count() > 0 && g.odd_closed_walk().is_none()
            );
            assert!(is_proper(&g, &optimal_coloring(&g)));
        }
    }

    #[test]
    fn box_coloring_examples() {
        let k3 = Graph::complete(3);
        let c3 = Coloring::new(3, vec![0, 1, 2]).unwrap();
        let p = k3.box_product(&k3);
        assert!(is_proper(&p, &box_coloring(&k3, &c3, &k3, &c3).unwrap()));
        let k2 = Graph::complete(2);
        let c2 = Coloring::new(2, vec![0, 1]).unwrap();
        let c4 = box_coloring(&k2, &c2, &k2, &c2).unwrap();
        assert!(is_proper(&k2.box_product(&k2), &c4) && c4.k() == 2);

        let x = circulant(8, &[1, 4]).unwrap();
        let sq = k2.box_product(&k2);
        let c = box_coloring(
            x.graph(),
            &fig2_coloring(3).unwrap(),
            &sq,
            &c4.padded(3).unwrap(),
        )
        .unwrap();
        let g = FgAbelianGroup::parse("Z/8 x (Z/2)^2").unwrap();
        let s = SymmetricSet::symmetrize(
            &g,
            &[
                g.element(&[1, 0, 0]).unwrap(),
                g.element(&[4, 0, 0]).unwrap(),
                g.element(&[0, 1, 0]).unwrap(),
                g.element(&[0, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        let big = CayleyGraph::build(&g, &s, Scope::WholeGroup).unwrap();
        // Vertex (a, b, c) of the Cayley graph is box vertex a * 4 + (2b + c).
        assert_eq!(big.graph(), &x.graph().box_product(&sq));
        assert!(is_proper(big.graph(), &c));
        assert!(box_coloring(&k2, &Coloring::new(1, vec![0, 0]).unwrap(), &k2, &c2).is_err());
    }

    #[test]
    fn budget_yields_unknown_not_a_guess() {
        // Zero budget still answers trivially colorable graphs but must never
        // claim non-colorability it did not prove.
        let g = FgAbelianGroup::elementary(2, 5).unwrap();
        let all: Vec<_> = g
            .enumerate_elements()
            .unwrap()
            .into_iter()
            .skip(1)
            .take(12)
            .collect();
        let s = SymmetricSet::symmetrize(&g, &all).unwrap();
        let x = CayleyGraph::build(&g, &s, Scope::WholeGroup).unwrap();
        match chromatic_number_within(x.graph(), Some(Duration::ZERO)) {
            ChiOutcome::Exact { chi, coloring } => {
                assert_eq!(chi, chromatic_number(x.graph()));
                assert!(is_proper(x.graph(), &coloring));
            }
            ChiOutcome::Unknown { lower, upper } => {
                let chi = chromatic_number(x.graph());
                assert!(lower <= chi && chi <= upper);
            }
        }
    }

    proptest! {
        #[test]
        fn box_coloring_preserves_properness(
            n1 in 1usize..7, n2 in 1usize..7, seed in any::<u64>()
        ) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = random_graph(&mut rng, n1, 0.4);
            let y = random_graph(&mut rng, n2, 0.4);
            let cx = optimal_coloring(&x);
            let cy = optimal_coloring(&y);
            let k = cx.k().max(cy.k());
            let c = box_coloring(&x, &cx.padded(k).unwrap(), &y, &cy.padded(k).unwrap()).unwrap();
            prop_assert!(is_proper(&x.box_product(&y), &c));
            prop_assert_eq!(chromatic_number(&x.box_product(&y)), k);
        }
    }
}
