use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hermite::HermiteBasis;
use super::matrix::{serialize_bigint_vec, IntMatrix};
use super::smith::smith_diagonal;
use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank x Z/d_1 x ... x Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        AbelianInvariants { free_rank, torsion }
    }

    /// Reads the cokernel `Z^ambient / im(M)` off the Smith diagonal of `M`.
    pub fn from_smith_diagonal(ambient: usize, diagonal: &[BigInt]) -> Self {
        let nonzero: Vec<&BigInt> = diagonal.iter().filter(|d| !d.is_zero()).collect();
        AbelianInvariants {
            free_rank: ambient - nonzero.len(),
            torsion: nonzero
                .into_iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Every element has finite order.
    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_torsion().then(|| self.torsion.iter().product())
    }

    /// Checks the divisibility chain and that no factor is 0 or 1.
    pub fn is_well_formed(&self) -> bool {
        self.torsion.iter().all(|d| *d > BigInt::one())
            && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariants of `L / M` where `L` is spanned by the columns of `r_basis` and
/// `M` by the columns of `h_gens`.
///
/// Every generator of `M` is written in `L`-coordinates by an exact integer
/// solve; a generator outside `L` is reported as [`Error::NotContained`].
pub fn quotient_invariants(r_basis: &IntMatrix, h_gens: &IntMatrix) -> Result<AbelianInvariants> {
    let dim = r_basis.rows();
    if h_gens.cols() > 0 && h_gens.rows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: h_gens.rows(),
        });
    }
    let outer = HermiteBasis::from_generators(dim, r_basis.columns());
    let inner = HermiteBasis::from_generators(dim, h_gens.columns());
    quotient_of_bases(&outer, &inner)
}

pub(crate) fn quotient_of_bases(
    outer: &HermiteBasis,
    inner: &HermiteBasis,
) -> Result<AbelianInvariants> {
    let mut coeff_cols = Vec::with_capacity(inner.rank());
    for g in inner.vectors() {
        match outer.solve(g) {
            Some(c) => coeff_cols.push(c),
            None => {
                let shown: Vec<String> = g.iter().map(ToString::to_string).collect();
                return Err(Error::NotContained(format!(
                    "generator ({}) is not in the outer lattice",
                    shown.join(",")
                )));
            }
        }
    }
    let coeffs = IntMatrix::from_columns(outer.rank(), &coeff_cols);
    Ok(cokernel_invariants(&coeffs))
}

/// Invariants of `Z^rows / im(M)`.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianInvariants {
    AbelianInvariants::from_smith_diagonal(m.rows(), &smith_diagonal(m))
}

/// Invariant-factor form of `Z^free_rank x Z/n_1 x ... x Z/n_k`.
pub fn canonical_invariants(moduli: &[BigInt], free_rank: usize) -> AbelianInvariants {
    let k = moduli.len();
    let d = IntMatrix::diagonal(k, k, moduli.iter().cloned());
    let torsion = AbelianInvariants::from_smith_diagonal(k, &smith_diagonal(&d)).torsion;
    AbelianInvariants { free_rank, torsion }
}

/// A sparse integer column: `(row, value)` pairs sorted by row, no zeros.
pub type SparseColumn = Vec<(usize, i64)>;

/// Invariants of `Z^rows / im(M)` for a sparse `M`, as used for simplicial
/// boundary maps.
///
/// Unit pivots are eliminated first with checked `i64` arithmetic; whatever is
/// left is handed to the dense Smith normal form. On overflow the whole
/// computation restarts on the dense arbitrary-precision path.
pub fn sparse_cokernel_invariants(rows: usize, columns: &[SparseColumn]) -> AbelianInvariants {
    match eliminate_unit_pivots(rows, columns) {
        Some((live_rows, rest)) => {
            let index: Vec<Option<usize>> = {
                let mut idx = vec![None; rows];
                for (k, &r) in live_rows.iter().enumerate() {
                    idx[r] = Some(k);
                }
                idx
            };
            let mut dense = IntMatrix::zeros(live_rows.len(), rest.len());
            for (j, col) in rest.iter().enumerate() {
                for &(r, x) in col {
                    let k = index[r].expect("entry in an eliminated row");
                    dense[(k, j)] = BigInt::from(x);
                }
            }
            cokernel_invariants(&dense)
        }
        None => {
            let mut dense = IntMatrix::zeros(rows, columns.len());
            for (j, col) in columns.iter().enumerate() {
                for &(r, x) in col {
                    dense[(r, j)] = BigInt::from(x);
                }
            }
            cokernel_invariants(&dense)
        }
    }
}

/// `dst - factor * src` on sorted sparse columns, or `None` on overflow.
fn sparse_axpy(dst: &[(usize, i64)], factor: i64, src: &[(usize, i64)]) -> Option<SparseColumn> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i]);
            i += 1;
        } else if take_src {
            let v = factor.checked_mul(src[j].1)?.checked_neg()?;
            out.push((src[j].0, v));
            j += 1;
        } else {
            let v = dst[i].1.checked_sub(factor.checked_mul(src[j].1)?)?;
            if v != 0 {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Repeatedly pivots on `+-1` entries. Returns the surviving rows and the
/// surviving nonzero columns, or `None` if an entry overflowed.
fn eliminate_unit_pivots(
    rows: usize,
    columns: &[SparseColumn],
) -> Option<(Vec<usize>, Vec<SparseColumn>)> {
    let mut cols: Vec<Option<SparseColumn>> = columns
        .iter()
        .map(|c| (!c.is_empty()).then(|| c.clone()))
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        if let Some(c) = c {
            for &(r, _) in c {
                row_cols[r].insert(j);
            }
        }
    }
    let mut alive = vec![true; rows];
    loop {
        // First column with a unit entry; among its units, the sparsest row.
        let mut choice = None;
        for (j, c) in cols.iter().enumerate() {
            let Some(c) = c else { continue };
            let best = c
                .iter()
                .filter(|(_, x)| x.abs() == 1)
                .min_by_key(|(r, _)| row_cols[*r].len());
            if let Some(&(r, x)) = best {
                choice = Some((j, r, x));
                break;
            }
        }
        let Some((pj, pr, px)) = choice else { break };
        let pivot_col = cols[pj].take().expect("pivot column present");
        for &(r, _) in &pivot_col {
            row_cols[r].remove(&pj);
        }
        let touching: Vec<usize> = row_cols[pr].iter().copied().collect();
        for j in touching {
            let col = cols[j].take().expect("indexed column present");
            let a = col
                .iter()
                .find(|(r, _)| *r == pr)
                .map(|&(_, x)| x)
                .expect("row index consistent");
            // px is +-1, so a / px = a * px.
            let updated = sparse_axpy(&col, a.checked_mul(px)?, &pivot_col)?;
            for &(r, _) in &col {
                row_cols[r].remove(&j);
            }
            for &(r, _) in &updated {
                row_cols[r].insert(j);
            }
            debug_assert!(updated.iter().all(|(r, _)| *r != pr));
            cols[j] = (!updated.is_empty()).then_some(updated);
        }
        alive[pr] = false;
    }
    let live_rows = (0..rows).filter(|&r| alive[r]).collect();
    Some((live_rows, cols.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn z2_mod_2e1() {
        let r = IntMatrix::identity(2);
        let h = IntMatrix::from_rows_i64(1, &[vec![2], vec![0]]);
        let q = quotient_invariants(&r, &h).unwrap();
        assert_eq!(q, AbelianInvariants::new(1, ints(&[2])));
    }

    #[test]
    fn lattice_mod_itself_is_trivial() {
        let r = IntMatrix::from_rows_i64(2, &[vec![2, 1], vec![0, 3]]);
        assert!(quotient_invariants(&r, &r).unwrap().is_trivial());
    }

    #[test]
    fn worked_relation_quotient() {
        // R = {a - b + 4c = 0 mod 8}, H generated by (1,1,0), (0,0,2), (1,1,-2).
        let r =
            IntMatrix::from_columns(3, &[ints(&[1, 1, 0]), ints(&[4, 0, -1]), ints(&[8, 0, 0])]);
        let h =
            IntMatrix::from_columns(3, &[ints(&[1, 1, 0]), ints(&[0, 0, 2]), ints(&[1, 1, -2])]);
        let q = quotient_invariants(&r, &h).unwrap();
        assert_eq!(q, AbelianInvariants::new(1, vec![]));
    }

    #[test]
    fn containment_violation_is_an_error() {
        let r = IntMatrix::from_columns(2, &[ints(&[2, 0]), ints(&[0, 2])]);
        let h = IntMatrix::from_columns(2, &[ints(&[1, 0])]);
        assert!(matches!(
            quotient_invariants(&r, &h),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            canonical_invariants(&ints(&[2, 4]), 0).torsion,
            ints(&[2, 4])
        );
        assert_eq!(canonical_invariants(&ints(&[2, 3]), 0).torsion, ints(&[6]));
        assert_eq!(
            canonical_invariants(&ints(&[6, 4]), 0).torsion,
            ints(&[2, 12])
        );
        assert_eq!(
            canonical_invariants(&[], 2),
            AbelianInvariants::new(2, vec![])
        );
    }

    #[test]
    fn sparse_matches_dense() {
        let cols: Vec<SparseColumn> = vec![
            vec![(0, 2), (1, 1)],
            vec![(1, -1), (2, 3)],
            vec![(0, 4), (2, 6)],
        ];
        let mut dense = IntMatrix::zeros(3, 3);
        for (j, c) in cols.iter().enumerate() {
            for &(r, x) in c {
                dense[(r, j)] = BigInt::from(x);
            }
        }
        assert_eq!(
            sparse_cokernel_invariants(3, &cols),
            cokernel_invariants(&dense)
        );
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        assert_eq!(
            AbelianInvariants::new(2, ints(&[2, 4])).to_string(),
            "Z^2 x Z/2 x Z/4"
        );
    }
}
