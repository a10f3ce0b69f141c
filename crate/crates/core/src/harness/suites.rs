//! Exhaustive and randomized verification suites. Each returns a [`Report`]
//! whose verdict fails on the first violated assertion; all solves are exact,
//! so a suite never records an unknown.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{
    exponent_dividing_4, inverse_classes, set_from_mask, symmetric_set_count, BinaryCube,
};
use super::{Report, Verdict};
use crate::cayley::{circulant, CayleyGraph, Scope, SymmetricSet};
use crate::chromatic::{
    cayley_chromatic_number, chromatic_number, construct_3chromatic_s,
    construct_connected_3chromatic_s, fig2_coloring, is_proper, k_colorable, ChiOutcome, Coloring,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::group::FgAbelianGroup;
use crate::lattice::{kernel_mod, smith_normal_form, HermiteBasis, IntMatrix};
use crate::ncomplex::{chi4_certificate, h1_invariants, neighborhood_complex_2skeleton};
use crate::pi1::{four_r_in_h, is_torsion, pi1_even_invariants, pi1_invariants};
use crate::walks::{
    apply_move, random_closed_walk, random_move, sample_odd_closed_walk, winding_number, Walk,
};

pub const PAYAN_MAX_M: u32 = 4;
pub const EXP4_MAX_ORDER: u64 = 16;
pub const CERTIFICATE_MAX_ORDER: u64 = 16;

pub const LEMMA21_DEFAULT: [&str; 8] = [
    "Z/3",
    "Z/5",
    "Z/8",
    "Z/9",
    "Z/16",
    "Z/8 x Z/3",
    "Z/3 x Z/4",
    "Z/8 x Z/2",
];

fn exact_chi(x: &CayleyGraph) -> Result<usize> {
    match cayley_chromatic_number(x, None)? {
        ChiOutcome::Exact { chi, .. } => Ok(chi),
        ChiOutcome::Unknown { .. } => Err(Error::BudgetExhausted),
    }
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<String, u64> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v.to_string()).or_insert(0) += 1;
    }
    h
}

/// Every symmetric subset of `(Z/2)^m` for `m <= m_max`: `χ` of the identity
/// component is never 3.
pub fn payan(m_max: u32, exec: Exec) -> Result<Report> {
    if !(1..=PAYAN_MAX_M).contains(&m_max) {
        return Err(Error::Precondition(format!(
            "m must be in 1..={PAYAN_MAX_M}, got {m_max}"
        )));
    }
    let mut report = Report::new("verify payan");
    let mut verdict = Verdict::default();
    let mut per_m = BTreeMap::new();
    for m in 1..=m_max {
        let cube = BinaryCube::new(m);
        let g = cube.group();
        let total = cube.subset_count() as usize;
        let chis = exec.map_indices(total, |mask| {
            let s = cube.set(&g, mask as u64)?;
            exact_chi(&CayleyGraph::build(&g, &s, Scope::GeneratedSubgroup)?)
        });
        let chis = chis.into_iter().collect::<Result<Vec<_>>>()?;
        for (mask, &chi) in chis.iter().enumerate() {
            verdict.record(chi != 3, || format!("m={m} mask={mask:#x}: chi = 3"));
        }
        per_m.insert(
            m.to_string(),
            serde_json::json!({ "subsets": total, "chi_histogram": histogram(chis) }),
        );
    }
    report.claim("chromatic_number.by_m", per_m);
    Ok(report.conclude(verdict))
}

struct Exp4Case {
    chi: usize,
    connected_non_bipartite: bool,
    pi1_torsion: bool,
    four_r: bool,
}

/// Groups of exponent dividing 4 with `|G| <= order_max`, every symmetric
/// set: `χ != 3`, torsion `π1` on non-bipartite components and `4 R ⊆ H`.
pub fn exp4(order_max: u64, exec: Exec) -> Result<Report> {
    if order_max > EXP4_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "order must be at most {EXP4_MAX_ORDER}, got {order_max}"
        )));
    }
    let mut report = Report::new("verify exp4");
    let mut verdict = Verdict::default();
    let mut summary = Vec::new();
    for g in exponent_dividing_4(order_max) {
        let classes = inverse_classes(&g)?;
        let total = symmetric_set_count(&classes).expect("small group") as usize;
        let cases = exec.map_indices(total, |mask| -> Result<Exp4Case> {
            let s = set_from_mask(&g, &classes, mask as u64)?;
            let x0 = CayleyGraph::build(&g, &s, Scope::GeneratedSubgroup)?;
            let chi = exact_chi(&x0)?;
            let non_bipartite = !x0.graph().is_bipartite();
            let pi1_torsion = !non_bipartite || is_torsion(&pi1_invariants(&g, &s)?.invariants);
            Ok(Exp4Case {
                chi,
                connected_non_bipartite: non_bipartite,
                pi1_torsion,
                four_r: four_r_in_h(&g, &s)?,
            })
        });
        let cases = cases.into_iter().collect::<Result<Vec<_>>>()?;
        for (mask, c) in cases.iter().enumerate() {
            verdict.record(c.chi != 3, || format!("{g} mask={mask:#x}: chi = 3"));
            if c.connected_non_bipartite {
                verdict.record(c.pi1_torsion, || {
                    format!("{g} mask={mask:#x}: pi1 not torsion")
                });
            }
            verdict.record(c.four_r, || format!("{g} mask={mask:#x}: 4R not in H"));
        }
        summary.push(serde_json::json!({
            "group": g.to_string(),
            "sets": total,
            "non_bipartite": cases.iter().filter(|c| c.connected_non_bipartite).count(),
            "chi_histogram": histogram(cases.iter().map(|c| c.chi)),
        }));
    }
    report.claim("chromatic_number.by_group", summary);
    Ok(report.conclude(verdict))
}

/// Both constructions of 3-chromatic Cayley graphs, plus the three-segment
/// coloring for cyclic 2-groups of order at least 8.
pub fn lemma21(specs: &[&str], exec: Exec) -> Result<Report> {
    let groups = specs
        .iter()
        .map(|s| FgAbelianGroup::parse(s))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("verify lemma21");
    let mut verdict = Verdict::default();
    let rows = exec.map(&groups, |g| -> Result<serde_json::Value> {
        let s = construct_3chromatic_s(g)?;
        let chi = chromatic_number(CayleyGraph::build(g, &s, Scope::WholeGroup)?.graph());
        let sc = construct_connected_3chromatic_s(g)?;
        let xc = CayleyGraph::build(g, &sc, Scope::WholeGroup)?;
        let chi_c = chromatic_number(xc.graph());
        let fig2 = match g.torsion_moduli() {
            [n] if g.free_rank() == 0 && n.is_power_of_two() && *n >= 8 => {
                let k = n.trailing_zeros();
                let x = circulant(*n, &[1, (*n / 2) as i64])?;
                Some(is_proper(x.graph(), &fig2_coloring(k)?) && chromatic_number(x.graph()) == 3)
            }
            _ => None,
        };
        Ok(serde_json::json!({
            "group": g.to_string(),
            "construct_3chromatic_s": s.labels(),
            "chi": chi,
            "construct_connected_3chromatic_s": sc.labels(),
            "connected": xc.graph().is_connected(),
            "chi_connected": chi_c,
            "fig2_coloring_proper": fig2,
        }))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    for r in &rows {
        let g = &r["group"];
        verdict.record(r["chi"] == 3, || {
            format!("{g}: construction has chi {}", r["chi"])
        });
        verdict.record(r["chi_connected"] == 3, || {
            format!("{g}: connected construction has chi {}", r["chi_connected"])
        });
        verdict.record(r["connected"] == true, || {
            format!("{g}: connected construction is disconnected")
        });
        if !r["fig2_coloring_proper"].is_null() {
            verdict.record(r["fig2_coloring_proper"] == true, || {
                format!("{g}: three-segment coloring fails")
            });
        }
    }
    report.claim("constructions", rows);
    Ok(report.conclude(verdict))
}

/// `X_n = Cay(Z/n, {±1, ±2})` for `from <= n <= to`: `π1 = Z^2`, `χ = 3`
/// exactly when `3 | n` (else 4), and 3-colorings are 3-periodic.
pub fn example54(from: u64, to: u64, exec: Exec) -> Result<Report> {
    if from < 9 || from > to {
        return Err(Error::Precondition(format!(
            "need 9 <= from <= to, got {from}..{to}"
        )));
    }
    let ns: Vec<u64> = (from..=to).collect();
    let mut report = Report::new("example54");
    let mut verdict = Verdict::default();
    let rows = exec.map(&ns, |&n| -> Result<serde_json::Value> {
        let x = circulant(n, &[1, 2])?;
        let p = pi1_invariants(x.group(), x.set())?;
        let chi = chromatic_number(x.graph());
        let periodic = k_colorable(x.graph(), 3).map(|c| (0..n as usize).all(|v| c.color(v) == c.color((v + 3) % n as usize)));
        Ok(serde_json::json!({ "n": n, "pi1_invariants": p.invariants, "chi": chi, "coloring_3_periodic": periodic }))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    for r in &rows {
        let n = r["n"].as_u64().expect("n");
        let inv = &r["pi1_invariants"];
        verdict.record(
            inv["free_rank"] == 2 && inv["torsion"].as_array().is_some_and(Vec::is_empty),
            || format!("n={n}: pi1 = {inv}"),
        );
        let want = if n % 3 == 0 { 3 } else { 4 };
        verdict.record(r["chi"] == want, || {
            format!("n={n}: chi = {}, expected {want}", r["chi"])
        });
        if !r["coloring_3_periodic"].is_null() {
            verdict.record(r["coloring_3_periodic"] == true, || {
                format!("n={n}: 3-coloring is not 3-periodic")
            });
        }
    }
    report.claim("example54", rows);
    Ok(report.conclude(verdict))
}

/// Fixed 3-chromatic test graphs for the winding suites.
fn winding_corpus() -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for (n, gens) in [
        (3u64, vec![1i64]),
        (5, vec![1]),
        (8, vec![1, 4]),
        (9, vec![1, 2]),
        (12, vec![1, 2]),
        (16, vec![1, 8]),
        (15, vec![1, 4]),
    ] {
        out.push((
            format!("Cay(Z/{n}, {gens:?})"),
            circulant(n, &gens)?.graph().clone(),
        ));
    }
    let g = FgAbelianGroup::parse("Z/3 x Z/3")?;
    let s = SymmetricSet::symmetrize(&g, &[g.element(&[1, 0])?, g.element(&[0, 1])?])?;
    out.push((
        "Cay(Z/3 x Z/3, {(1,0),(0,1)})".into(),
        CayleyGraph::build(&g, &s, Scope::WholeGroup)?
            .graph()
            .clone(),
    ));
    Ok(out)
}

fn three_coloring(name: &str, g: &Graph) -> Result<Coloring> {
    k_colorable(g, 3).ok_or_else(|| Error::Precondition(format!("{name} is not 3-colorable")))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random move sequences on random closed walks leave the winding number
/// unchanged at every step.
pub fn winding(sequences: usize, moves: usize, seed: u64, exec: Exec) -> Result<Report> {
    let corpus = winding_corpus()?;
    let colorings = corpus
        .iter()
        .map(|(n, g)| three_coloring(n, g))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("verify winding").seed(seed);
    let results = exec.map_indices(sequences, |i| -> Result<Verdict> {
        let (name, g) = &corpus[i % corpus.len()];
        let c = &colorings[i % corpus.len()];
        let mut rng = stream_rng(seed, i as u64);
        let start = rng.random_range(0..g.n());
        let steps = rng.random_range(0..16);
        let mut w: Walk = random_closed_walk(g, start, steps, &mut rng);
        let w0 = winding_number(g, &w, c)?;
        let mut v = Verdict::default();
        for step in 0..moves {
            let m = random_move(g, &w, &mut rng)?;
            w = apply_move(g, &w, &m)?;
            let wn = winding_number(g, &w, c)?;
            v.record(wn == w0, || {
                format!("{name} sequence {i} step {step}: wind {w0} -> {wn}")
            });
        }
        Ok(v)
    });
    let mut verdict = Verdict::default();
    for r in results {
        verdict.merge(r?);
    }
    report.claim(
        "winding.graphs",
        corpus.iter().map(|(n, _)| n).collect::<Vec<_>>(),
    );
    report.claim("winding.sequences", sequences);
    report.claim("winding.moves_per_sequence", moves);
    Ok(report.conclude(verdict))
}

/// Connected 3-chromatic circulants on at most `max_n` vertices, one per
/// generating set.
fn three_chromatic_circulants(max_n: u64) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let g = FgAbelianGroup::cyclic(n)?;
        let classes = inverse_classes(&g)?;
        for mask in 1..symmetric_set_count(&classes).expect("small group") {
            let s = set_from_mask(&g, &classes, mask)?;
            let x = CayleyGraph::build(&g, &s, Scope::WholeGroup)?;
            if x.graph().is_connected() && chromatic_number(x.graph()) == 3 {
                out.push((format!("Cay(Z/{n}, {:?})", s.labels()), x.graph().clone()));
            }
        }
    }
    Ok(out)
}

/// Odd closed walks in 3-chromatic graphs have odd winding number.
pub fn oddwind(walks: usize, seed: u64, exec: Exec) -> Result<Report> {
    let mut corpus = winding_corpus()?;
    corpus.extend(three_chromatic_circulants(12)?);
    let mut report = Report::new("verify oddwind").seed(seed);
    let results = exec.map_indices(corpus.len(), |i| -> Result<Verdict> {
        let (name, g) = &corpus[i];
        let c = three_coloring(name, g)?;
        let mut rng = stream_rng(seed, i as u64);
        let mut v = Verdict::default();
        for j in 0..walks {
            let start = rng.random_range(0..g.n());
            let w = sample_odd_closed_walk(g, start, 24, &mut rng)
                .ok_or_else(|| Error::Precondition(format!("{name} has no odd closed walk")))?;
            let wn = winding_number(g, &w, &c)?;
            v.record(w.len() % 2 == 1 && wn % 2 != 0, || {
                format!("{name} walk {j} of length {}: wind {wn}", w.len())
            });
        }
        Ok(v)
    });
    let mut verdict = Verdict::default();
    for r in results {
        verdict.merge(r?);
    }
    report.claim("oddwind.graphs", corpus.len());
    report.claim("oddwind.walks_per_graph", walks);
    Ok(report.conclude(verdict))
}

fn homology_corpus(seed: u64) -> Result<Vec<(FgAbelianGroup, SymmetricSet)>> {
    let fixed: [(&str, &str); 14] = [
        ("Z/3", "1"),
        ("Z/5", "1"),
        ("Z/4", "1,2"),
        ("Z/7", "1,2"),
        ("Z/8", "1,4"),
        ("Z/9", "1,2"),
        ("Z/10", "1,2"),
        ("Z/13", "1,5"),
        ("Z/16", "1,8"),
        ("Z/2 x Z/2", "(1,0);(0,1);(1,1)"),
        ("Z/3 x Z/3", "(1,0);(0,1)"),
        ("Z/2 x Z/4", "(1,0);(0,1);(1,1)"),
        // Both have H1 = Z/2.
        ("Z/4 x Z/4", "(1,0);(0,1);(1,1)"),
        ("Z/4 x Z/4", "(1,0);(2,1);(1,1)"),
    ];
    let mut out = Vec::new();
    for (g, s) in fixed {
        let g = FgAbelianGroup::parse(g)?;
        let s = SymmetricSet::symmetrize(&g, &g.parse_element_list(s)?)?;
        out.push((g, s));
    }
    // Random extras: connected, non-bipartite, at most 30 vertices.
    let groups: Vec<FgAbelianGroup> = FgAbelianGroup::finite_up_to_order(30)
        .into_iter()
        .filter(|g| g.order_usize().is_some_and(|n| n >= 5))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extra = 0;
    while extra < 10 {
        let g = &groups[rng.random_range(0..groups.len())];
        let elems = g.enumerate_elements()?;
        let picks: Vec<_> = (0..rng.random_range(1..=3))
            .map(|_| elems[rng.random_range(1..elems.len())].clone())
            .collect();
        let s = SymmetricSet::symmetrize(g, &picks)?;
        let x = CayleyGraph::build(g, &s, Scope::WholeGroup)?;
        if x.graph().is_connected() && !x.graph().is_bipartite() {
            out.push((g.clone(), s));
            extra += 1;
        }
    }
    Ok(out)
}

/// `H1` of the neighborhood complex equals `π1^EVEN` on connected
/// non-bipartite Cayley graphs.
pub fn homology(seed: u64, exec: Exec) -> Result<Report> {
    let corpus = homology_corpus(seed)?;
    let mut report = Report::new("verify homology").seed(seed);
    let rows = exec.map(&corpus, |(g, s)| -> Result<serde_json::Value> {
        let x = CayleyGraph::build(g, s, Scope::WholeGroup)?;
        let h1 = h1_invariants(&neighborhood_complex_2skeleton(x.graph()));
        let even = pi1_even_invariants(g, s)?.invariants;
        Ok(serde_json::json!({
            "group": g.to_string(),
            "set": s.labels(),
            "connected": x.graph().is_connected(),
            "non_bipartite": !x.graph().is_bipartite(),
            "h1_invariants": h1,
            "pi1_even_invariants": even,
            "equal": h1 == even,
        }))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict::default();
    for r in &rows {
        verdict.record(r["connected"] == true && r["non_bipartite"] == true, || {
            format!(
                "{} {}: corpus graph is bipartite or disconnected",
                r["group"], r["set"]
            )
        });
        verdict.record(r["equal"] == true, || {
            format!(
                "{} {}: H1 {} vs pi1_even {}",
                r["group"], r["set"], r["h1_invariants"], r["pi1_even_invariants"]
            )
        });
    }
    report.claim("homology", rows);
    Ok(report.conclude(verdict))
}

/// Every group of order at most `order_max` and every symmetric set: a
/// certified lower bound of 4 is never contradicted by a 3-coloring.
pub fn certificates(order_max: u64, exec: Exec) -> Result<Report> {
    if order_max > CERTIFICATE_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "order must be at most {CERTIFICATE_MAX_ORDER}, got {order_max}"
        )));
    }
    let mut report = Report::new("verify certificates");
    let mut verdict = Verdict::default();
    let (mut total, mut certified) = (0u64, 0u64);
    for g in FgAbelianGroup::finite_up_to_order(order_max) {
        let classes = inverse_classes(&g)?;
        let count = symmetric_set_count(&classes).expect("small group") as usize;
        let results = exec.map_indices(count, |mask| -> Result<Option<bool>> {
            let s = set_from_mask(&g, &classes, mask as u64)?;
            let x0 = CayleyGraph::build(&g, &s, Scope::GeneratedSubgroup)?;
            let cert = chi4_certificate(&x0)?;
            Ok(cert
                .implied_lower_bound
                .map(|_| k_colorable(x0.graph(), 3).is_none()))
        });
        for (mask, r) in results.into_iter().enumerate() {
            total += 1;
            if let Some(sound) = r? {
                certified += 1;
                verdict.record(sound, || {
                    format!("{g} mask={mask:#x}: certified graph is 3-colorable")
                });
            }
        }
    }
    report.claim("certificates.sets", total);
    report.claim("certificates.issued", certified);
    Ok(report.conclude(verdict))
}

/// Whether some coloring in `0..k` is proper, trying all `k^n` assignments.
pub fn brute_force_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let edges = g.edges();
    let mut colors = vec![0usize; n];
    loop {
        if edges.iter().all(|&(a, b)| colors[a] != colors[b]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(1..=9);
    let p: f64 = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// `k_colorable` against exhaustive enumeration for `k` in 2, 3, 4.
pub fn solver(graphs: usize, seed: u64, exec: Exec) -> Result<Report> {
    let mut corpus: Vec<(String, Graph)> = (0..graphs)
        .map(|i| {
            (
                format!("random #{i}"),
                random_graph(&mut stream_rng(seed, i as u64)),
            )
        })
        .collect();
    let mut cayley = 0;
    for g in FgAbelianGroup::finite_up_to_order(9) {
        let classes = inverse_classes(&g)?;
        for mask in 0..symmetric_set_count(&classes).expect("small group") {
            let s = set_from_mask(&g, &classes, mask)?;
            let x = CayleyGraph::build(&g, &s, Scope::WholeGroup)?;
            corpus.push((format!("Cay({g}, {:?})", s.labels()), x.graph().clone()));
            cayley += 1;
        }
    }
    let mut report = Report::new("verify solver").seed(seed);
    let results = exec.map(&corpus, |(name, g)| {
        let mut v = Verdict::default();
        for k in 2..=4 {
            let found = k_colorable(g, k);
            let valid = found.as_ref().is_none_or(|c| c.k() <= k && is_proper(g, c));
            v.record(
                valid && found.is_some() == brute_force_colorable(g, k),
                || format!("{name}, k={k}: solver {} disagrees", found.is_some()),
            );
        }
        v
    });
    let mut verdict = Verdict::default();
    for v in results {
        verdict.merge(v);
    }
    report.claim("solver.random_graphs", graphs);
    report.claim("solver.cayley_graphs", cayley);
    Ok(report.conclude(verdict))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

fn check_smith(a: &IntMatrix) -> std::result::Result<(), String> {
    let f = smith_normal_form(a);
    if f.u.mul(a).mul(&f.v) != f.d {
        return Err("U A V != D".into());
    }
    if !is_unimodular(&f.u) || !is_unimodular(&f.v) {
        return Err("transform is not unimodular".into());
    }
    for i in 0..f.d.rows() {
        for j in 0..f.d.cols() {
            if i != j && !f.d[(i, j)].is_zero() {
                return Err(format!("D has off-diagonal entry at ({i},{j})"));
            }
        }
    }
    let diag = f.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    Ok(())
}

/// Every point of `[-2, 2]^cols` lies in the kernel-mod lattice exactly when
/// it satisfies the congruences.
fn check_kernel_mod(a: &IntMatrix, moduli: &[BigInt]) -> Result<std::result::Result<(), String>> {
    let k = kernel_mod(a, moduli)?;
    let lattice = HermiteBasis::from_generators(a.cols(), k.columns());
    let satisfies = |x: &[BigInt]| {
        a.mul_vec(x).iter().zip(moduli).all(|(y, n)| {
            if n.is_zero() {
                y.is_zero()
            } else {
                y.is_multiple_of(n)
            }
        })
    };
    for col in k.columns() {
        if !satisfies(&col) {
            return Ok(Err("basis vector violates the congruences".into()));
        }
    }
    let cols = a.cols();
    let mut x = vec![-2i64; cols];
    loop {
        let xb: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
        if lattice.contains(&xb) != satisfies(&xb) {
            return Ok(Err(format!("membership of {x:?} disagrees")));
        }
        let mut i = 0;
        loop {
            if i == cols {
                return Ok(Ok(()));
            }
            x[i] += 1;
            if x[i] <= 2 {
                break;
            }
            x[i] = -2;
            i += 1;
        }
    }
}

/// Smith forms and modular kernels of random small integer matrices.
pub fn lattice(matrices: usize, seed: u64, exec: Exec) -> Result<Report> {
    const MODULI: [i64; 6] = [0, 2, 3, 4, 5, 6];
    let mut report = Report::new("verify lattice").seed(seed);
    let results = exec.map_indices(matrices, |i| -> Result<Verdict> {
        let mut rng = stream_rng(seed, i as u64);
        let rows = rng.random_range(1..=5);
        let cols = rng.random_range(1..=5);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        let a = IntMatrix::from_rows_i64(cols, &data);
        let moduli: Vec<BigInt> = (0..rows)
            .map(|_| MODULI[rng.random_range(0..MODULI.len())].into())
            .collect();
        let mut v = Verdict::default();
        let smith = check_smith(&a);
        v.record(smith.is_ok(), || {
            format!("matrix {i} {data:?}: {}", smith.clone().unwrap_err())
        });
        let kernel = check_kernel_mod(&a, &moduli)?;
        v.record(kernel.is_ok(), || {
            format!(
                "matrix {i} {data:?} mod {moduli:?}: {}",
                kernel.clone().unwrap_err()
            )
        });
        Ok(v)
    });
    let mut verdict = Verdict::default();
    for r in results {
        verdict.merge(r?);
    }
    report.claim("lattice.matrices", matrices);
    Ok(report.conclude(verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payan_small_histogram() {
        let r = payan(2, Exec::Sequential).unwrap();
        assert!(r.passed());
        // 8 subsets of the three nonzero vectors of (Z/2)^2.
        let h = &r.get("chromatic_number.by_m").unwrap()["2"]["chi_histogram"];
        assert_eq!(h, &serde_json::json!({"1": 1, "2": 6, "4": 1}));
    }

    #[test]
    fn exp4_up_to_order_8() {
        let r = exp4(8, Exec::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn lemma21_defaults() {
        let r = lemma21(&LEMMA21_DEFAULT, Exec::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(lemma21(&["Z/4"], Exec::Sequential).is_err());
    }

    #[test]
    fn example54_range() {
        let r = example54(9, 12, Exec::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(example54(8, 10, Exec::Sequential).is_err());
    }

    #[test]
    fn small_randomized_suites_pass() {
        assert!(winding(30, 20, 1, Exec::default()).unwrap().passed());
        assert!(oddwind(10, 1, Exec::default()).unwrap().passed());
        assert!(solver(40, 1, Exec::default()).unwrap().passed());
        assert!(lattice(40, 1, Exec::default()).unwrap().passed());
    }

    #[test]
    fn suites_are_deterministic_across_exec_modes() {
        let a = winding(12, 20, 7, Exec::Sequential).unwrap().to_json();
        let b = winding(12, 20, 7, Exec::Parallel { jobs: 3 })
            .unwrap()
            .to_json();
        assert_eq!(a, b);
        let a = homology(3, Exec::Sequential).unwrap().to_json();
        let b = homology(3, Exec::Parallel { jobs: 2 }).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn brute_force_oracle_basics() {
        assert!(brute_force_colorable(&Graph::complete(4), 4));
        assert!(!brute_force_colorable(&Graph::complete(4), 3));
        assert!(!brute_force_colorable(&Graph::cycle(5), 2));
        assert!(brute_force_colorable(&Graph::empty(0), 0));
    }

    #[test]
    fn violations_fail_the_report() {
        let mut v = Verdict::default();
        v.record(false, || "boom".into());
        let r = Report::new("x").conclude(v);
        assert_eq!(r.status, super::super::Status::Violation);
        assert_eq!(r.status.exit_code(), 4);
    }
}
