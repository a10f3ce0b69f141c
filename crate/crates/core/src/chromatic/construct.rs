//! Generating sets with `χ = 3` and the explicit colorings behind them.

use num_bigint::BigInt;
use num_traits::One;

use super::coloring::Coloring;
use crate::cayley::SymmetricSet;
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement};

fn unit(g: &FgAbelianGroup, axis: usize, scale: u64) -> GroupElement {
    let mut coords = vec![BigInt::from(0); g.dim()];
    coords[axis] = BigInt::from(scale);
    g.element_big(coords).expect("coordinate count matches")
}

fn times(g: &FgAbelianGroup, k: i64, x: &GroupElement) -> GroupElement {
    g.scale(&BigInt::from(k), x).expect("same group")
}

fn check_exponent(g: &FgAbelianGroup) -> Result<()> {
    let e = g.exponent();
    if e == BigInt::one() || e == BigInt::from(2) || e == BigInt::from(4) {
        return Err(Error::Precondition(format!(
            "{g} has exponent {e}; no Cayley graph over it is 3-chromatic"
        )));
    }
    Ok(())
}

fn odd_part(mut m: u64) -> u64 {
    while m.is_multiple_of(2) {
        m /= 2;
    }
    m
}

/// A symmetric set whose Cayley graph is 3-chromatic, by cases: an infinite
/// order `x` gives `{±x, ±2x}`; an element of order divisible by 8 gives an
/// order-8 `x` with `{±x, 4x}`; otherwise an element `x` of odd order
/// `d ≥ 3` gives the cycle `{±x}`.
pub fn construct_3chromatic_s(g: &FgAbelianGroup) -> Result<SymmetricSet> {
    check_exponent(g)?;
    if g.free_rank() > 0 {
        let x = unit(g, 0, 1);
        return SymmetricSet::symmetrize(g, &[x.clone(), times(g, 2, &x)]);
    }
    let (i, &m) = g
        .torsion_moduli()
        .iter()
        .enumerate()
        .find(|(_, &m)| 4 % m != 0)
        .expect("exponent check guarantees a factor of order not dividing 4");
    let axis = g.free_rank() + i;
    if m % 8 == 0 {
        let x = unit(g, axis, m / 8);
        SymmetricSet::symmetrize(g, &[x.clone(), times(g, 4, &x)])
    } else {
        let d = odd_part(m);
        SymmetricSet::symmetrize(g, &[unit(g, axis, m / d)])
    }
}

/// Prime-power decomposition `n = p1^a1 * ...` in increasing prime order.
fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A symmetric set whose Cayley graph is connected and 3-chromatic.
///
/// `G` is split into cyclic factors of infinite or prime-power order with
/// generators `x_i`. The first factor whose order is not 1, 2 or 4 gets
/// `{±x, ±2x}` (infinite), `{±x}` (odd) or `{±x, 2^(k-1) x}` (order `2^k`);
/// every other factor gets `{±x_i}`. The graph is the box product of the
/// factor graphs.
pub fn construct_connected_3chromatic_s(g: &FgAbelianGroup) -> Result<SymmetricSet> {
    check_exponent(g)?;
    // (generator, order; 0 = infinite)
    let mut factors: Vec<(GroupElement, u64)> =
        (0..g.free_rank()).map(|i| (unit(g, i, 1), 0)).collect();
    for (i, &n) in g.torsion_moduli().iter().enumerate() {
        for q in prime_powers(n) {
            factors.push((unit(g, g.free_rank() + i, n / q), q));
        }
    }
    let first = factors
        .iter()
        .position(|&(_, q)| !matches!(q, 1 | 2 | 4))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "{g} has no cyclic factor of order other than 1, 2, 4"
            ))
        })?;
    let mut raw = Vec::new();
    let (x, q) = &factors[first];
    raw.push(x.clone());
    match q {
        0 => raw.push(times(g, 2, x)),
        q if q % 2 == 1 => {}
        q => raw.push(times(g, (q / 2) as i64, x)),
    }
    for (j, (x, _)) in factors.iter().enumerate() {
        if j != first {
            raw.push(x.clone());
        }
    }
    SymmetricSet::symmetrize(g, &raw)
}

/// The three-segment coloring of `Cay(Z/2^k, {±1, 2^(k-1)})`, vertex `v` at
/// index `v`. With red 0, blue 1, green 2: `1..=2^(k-2)` alternate red/blue,
/// `..=2^(k-1)` alternate green/red, `..=2^k` alternate blue/green.
pub fn fig2_coloring(k: u32) -> Result<Coloring> {
    if k < 3 {
        return Err(Error::Precondition(format!("need k >= 3, got {k}")));
    }
    if k >= usize::BITS - 1 {
        return Err(Error::Precondition(format!(
            "k = {k} is too large to materialize"
        )));
    }
    const RED: usize = 0;
    const BLUE: usize = 1;
    const GREEN: usize = 2;
    let n = 1usize << k;
    let quarter = n / 4;
    let half = n / 2;
    let mut colors = vec![0; n];
    for j in 1..=n {
        let (start, pair) = if j <= quarter {
            (1, [RED, BLUE])
        } else if j <= half {
            (quarter + 1, [GREEN, RED])
        } else {
            (half + 1, [BLUE, GREEN])
        };
        colors[j % n] = pair[(j - start) % 2];
    }
    Coloring::new(3, colors)
}
