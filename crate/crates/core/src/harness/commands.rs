//! Single-instance pipelines behind the `group`, `cayley`, `chi`, `pi1`, `h1`
//! and `wind` commands.

use std::time::Duration;

use serde::Serialize;

use super::{Report, Status};
use crate::cayley::{CayleyGraph, Scope, SymmetricSet};
use crate::chromatic::{cayley_chromatic_number, is_proper, ChiOutcome, Coloring};
use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::lattice::canonical_invariants;
use crate::ncomplex::{chi4_certificate, h1_invariants, neighborhood_complex_2skeleton};
use crate::pi1::{four_r_in_h, is_torsion, pi1_even_invariants, pi1_invariants};
use crate::walks::{winding_number, Walk};

/// Parses `--set` text and symmetrizes it unless `raw` is set, in which case
/// the list must already be symmetric.
pub fn parse_set(g: &FgAbelianGroup, text: &str, raw: bool) -> Result<SymmetricSet> {
    let elems = if text.trim().is_empty() {
        Vec::new()
    } else {
        g.parse_element_list(text)?
    };
    if raw {
        SymmetricSet::new(g, elems)
    } else {
        SymmetricSet::symmetrize(g, &elems)
    }
}

#[derive(Serialize)]
struct GroupSummary {
    presentation: String,
    free_rank: usize,
    torsion_moduli: Vec<u64>,
    invariant_factors: crate::lattice::AbelianInvariants,
    order: Option<String>,
    exponent: String,
}

pub fn group_report(g: &FgAbelianGroup) -> Report {
    let moduli: Vec<num_bigint::BigInt> = g.torsion_moduli().iter().map(|&n| n.into()).collect();
    let mut r = Report::new("group").group(g);
    r.claim(
        "group-core",
        GroupSummary {
            presentation: g.to_string(),
            free_rank: g.free_rank(),
            torsion_moduli: g.torsion_moduli().to_vec(),
            invariant_factors: canonical_invariants(&moduli, g.free_rank()),
            order: g.order().map(|o| o.to_string()),
            exponent: g.exponent().to_string(),
        },
    );
    r
}

pub fn cayley_report(
    g: &FgAbelianGroup,
    s: &SymmetricSet,
    scope: Scope,
) -> Result<(Report, CayleyGraph)> {
    let x = CayleyGraph::build(g, s, scope)?;
    let mut r = Report::new("cayley").group(g).set(s);
    r.claim("build_cayley", x.export());
    r.claim("is_connected", x.graph().is_connected());
    r.claim("components", x.graph().components().len());
    r.claim("odd_closed_walk", x.graph().odd_closed_walk());
    Ok((r, x))
}

/// `χ(Cay(G, S))` via the identity component.
pub fn chi_report(
    g: &FgAbelianGroup,
    s: &SymmetricSet,
    budget: Option<Duration>,
) -> Result<Report> {
    let x0 = CayleyGraph::build(g, s, Scope::GeneratedSubgroup)?;
    let mut r = Report::new("chi").group(g).set(s);
    let outcome = cayley_chromatic_number(&x0, budget)?;
    r.claim("identity_component.vertices", x0.n());
    match &outcome {
        ChiOutcome::Exact { chi, coloring } => {
            if !is_proper(x0.graph(), coloring) {
                return Err(Error::ImproperColoring(
                    "solver returned an improper coloring".into(),
                ));
            }
            r.claim("chromatic_number", chi);
            r.claim("chromatic_number.coloring", coloring);
        }
        ChiOutcome::Unknown { lower, upper } => {
            r.claim("chromatic_number", "unknown");
            r.claim("chromatic_number.bounds", [lower, upper]);
            r.status = Status::Unknown;
        }
    }
    Ok(r)
}

pub fn pi1_report(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Report> {
    let mut r = Report::new("pi1").group(g).set(s);
    let p = pi1_invariants(g, s)?;
    r.claim("pi1_invariants", &p);
    r.claim("is_torsion", is_torsion(&p.invariants));
    r.claim("pi1_even_invariants", pi1_even_invariants(g, s)?);
    let e = g.exponent();
    if e == 1.into() || e == 2.into() || e == 4.into() {
        r.claim("four_r_in_h", four_r_in_h(g, s)?);
    }
    Ok(r)
}

pub fn h1_report(g: &FgAbelianGroup, s: &SymmetricSet) -> Result<Report> {
    let x = CayleyGraph::build(g, s, Scope::WholeGroup)?;
    let k = neighborhood_complex_2skeleton(x.graph());
    let mut r = Report::new("h1").group(g).set(s);
    r.claim(
        "neighborhood_complex_2skeleton.sizes",
        [k.vertices.len(), k.edges.len(), k.triangles.len()],
    );
    r.claim("h1_invariants", h1_invariants(&k));
    r.claim("chi4_certificate", chi4_certificate(&x)?);
    Ok(r)
}

/// Winding number of a closed walk given as group elements. Without an
/// explicit coloring, the solver's 3-coloring of the whole graph is used.
pub fn wind_report(
    g: &FgAbelianGroup,
    s: &SymmetricSet,
    walk: &str,
    coloring: Option<&str>,
) -> Result<Report> {
    let x = CayleyGraph::build(g, s, Scope::WholeGroup)?;
    let verts = g
        .parse_element_list(walk)?
        .iter()
        .map(|e| {
            x.vertex_index(e)
                .ok_or_else(|| Error::InvalidWalk(format!("{e} is not a vertex")))
        })
        .collect::<Result<Vec<_>>>()?;
    let w = Walk::new(x.graph(), verts)?;
    let c = match coloring {
        Some(text) => {
            let colors = text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad color {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Coloring::new(3, colors)?
        }
        None => crate::chromatic::k_colorable(x.graph(), 3)
            .ok_or_else(|| Error::Precondition("the graph is not 3-colorable".into()))?,
    };
    let mut r = Report::new("wind").group(g).set(s);
    r.claim("walk", &w);
    r.claim("coloring", &c);
    r.claim("winding_number", winding_number(x.graph(), &w, &c)?);
    Ok(r)
}
