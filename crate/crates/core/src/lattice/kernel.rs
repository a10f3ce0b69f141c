use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::hermite::HermiteBasis;
use super::matrix::{ext_gcd, IntMatrix};
use crate::error::{Error, Result};

/// Replaces columns `i`, `j` by `x*c_i + y*c_j` and `p*c_i + q*c_j`.
fn combine_cols(m: &mut IntMatrix, i: usize, j: usize, coeffs: [&BigInt; 4]) {
    let [x, y, p, q] = coeffs;
    for r in 0..m.rows() {
        let ci = m[(r, i)].clone();
        let cj = m[(r, j)].clone();
        if ci.is_zero() && cj.is_zero() {
            continue;
        }
        m[(r, i)] = x * &ci + y * &cj;
        m[(r, j)] = p * &ci + q * &cj;
    }
}

/// Basis of the integer kernel `{x in Z^cols : A x = 0}`, as the columns of a
/// `cols x k` matrix in canonical column Hermite form.
///
/// The basis is saturated: it spans every integer solution, not just a
/// finite-index sublattice.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut work = a.clone();
    let mut v = IntMatrix::identity(n);
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if work[(r, j)].is_zero() {
                continue;
            }
            if work[(r, c)].is_zero() {
                work.swap_cols(c, j);
                v.swap_cols(c, j);
                continue;
            }
            let a_c = work[(r, c)].clone();
            let a_j = work[(r, j)].clone();
            let (g, x, y) = ext_gcd(&a_c, &a_j);
            let p = &a_j / &g;
            let q = -(&a_c / &g);
            combine_cols(&mut work, c, j, [&x, &y, &p, &q]);
            combine_cols(&mut v, c, j, [&x, &y, &p, &q]);
        }
        if !work[(r, c)].is_zero() {
            c += 1;
        }
    }
    let gens = (c..n).map(|j| v.column(j));
    HermiteBasis::from_generators(n, gens).to_matrix()
}

/// Basis of `{x in Z^cols : (A x)_i = 0 mod n_i}` where `moduli[i] = n_i`, and a
/// modulus of 0 asks for exact vanishing of that row.
///
/// Works by adjoining a column `n_i * e_i` per torsion row, taking the integer
/// kernel of the augmented matrix and projecting back to the first `cols`
/// coordinates.
pub fn kernel_mod(a: &IntMatrix, moduli: &[BigInt]) -> Result<IntMatrix> {
    if moduli.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: moduli.len(),
        });
    }
    if let Some(bad) = moduli
        .iter()
        .find(|n| n.is_negative() || **n == BigInt::from(1))
    {
        return Err(Error::InvalidModulus(bad.to_string()));
    }
    let torsion_rows: Vec<usize> = (0..moduli.len())
        .filter(|&i| !moduli[i].is_zero())
        .collect();
    let mut extra = IntMatrix::zeros(a.rows(), torsion_rows.len());
    for (k, &i) in torsion_rows.iter().enumerate() {
        extra[(i, k)] = moduli[i].clone();
    }
    let augmented = a.hcat(&extra);
    let kernel = kernel_basis(&augmented);
    let projected = (0..kernel.cols()).map(|j| kernel.column(j)[..a.cols()].to_vec());
    Ok(HermiteBasis::from_generators(a.cols(), projected).to_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_difference() {
        let k = kernel_basis(&IntMatrix::from_rows_i64(2, &[vec![1, -1]]));
        assert_eq!(k.columns(), vec![ints(&[1, 1])]);
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let k = kernel_basis(&IntMatrix::from_rows_i64(1, &[vec![2]]));
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 1);
    }

    #[test]
    fn kernel_of_sum_has_rank_two() {
        let a = IntMatrix::from_rows_i64(3, &[vec![1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        // Saturation: some 2x2 minor is a unit.
        let minors = [(0, 1), (0, 2), (1, 2)].map(|(r0, r1)| {
            let m = IntMatrix::from_columns(
                2,
                &[
                    vec![k[(r0, 0)].clone(), k[(r1, 0)].clone()],
                    vec![k[(r0, 1)].clone(), k[(r1, 1)].clone()],
                ],
            );
            m.determinant().abs()
        });
        assert!(minors.iter().any(|d| *d == BigInt::from(1)));
    }

    #[test]
    fn kernel_mod_index_eight() {
        let a = IntMatrix::from_rows_i64(3, &[vec![1, -1, 4]]);
        let k = kernel_mod(&a, &ints(&[8])).unwrap();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.determinant().abs(), BigInt::from(8));
        for col in [ints(&[1, 1, 0]), ints(&[4, 0, -1]), ints(&[8, 0, 0])] {
            let basis = HermiteBasis::from_generators(3, k.columns());
            assert!(basis.contains(&col));
        }
    }

    #[test]
    fn kernel_mod_free_row() {
        let k = kernel_mod(&IntMatrix::from_rows_i64(1, &[vec![1]]), &ints(&[0])).unwrap();
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_mod_parity() {
        let k = kernel_mod(&IntMatrix::from_rows_i64(2, &[vec![1, 1]]), &ints(&[2])).unwrap();
        let basis = HermiteBasis::from_generators(2, k.columns());
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                assert_eq!(
                    basis.contains(&ints(&[a, b])),
                    (a + b) % 2 == 0,
                    "({a},{b})"
                );
            }
        }
        assert_eq!(k.determinant().abs(), BigInt::from(2));
    }

    #[test]
    fn kernel_mod_rejects_bad_moduli() {
        let a = IntMatrix::from_rows_i64(1, &[vec![1]]);
        assert!(matches!(
            kernel_mod(&a, &ints(&[1])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            kernel_mod(&a, &ints(&[2, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
