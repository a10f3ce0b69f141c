use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{ext_gcd, IntMatrix};

/// A lattice basis kept in column echelon form: every vector has a distinct
/// pivot (index of its first nonzero entry) and a positive pivot entry.
///
/// Vectors are stored in increasing pivot order. After [`HermiteBasis::reduce`]
/// the basis is the canonical Hermite normal form of the lattice: entries of a
/// vector at a later vector's pivot row lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    dim: usize,
    vecs: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn first_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(dst: &mut [BigInt], factor: &BigInt, src: &[BigInt]) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += factor * s;
        }
    }
}

impl HermiteBasis {
    pub fn new(dim: usize) -> Self {
        HermiteBasis {
            dim,
            vecs: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut basis = Self::new(dim);
        for g in gens {
            basis.insert(g);
        }
        basis.reduce();
        basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vecs
    }

    pub fn into_vectors(self) -> Vec<Vec<BigInt>> {
        self.vecs
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.vecs)
    }

    /// Adds a generator to the lattice, keeping the echelon shape.
    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "generator has wrong length");
        loop {
            let Some(p) = first_nonzero(&v) else { return };
            match self.pivots.binary_search(&p) {
                Err(pos) => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.vecs.insert(pos, v);
                    self.pivots.insert(pos, p);
                    return;
                }
                Ok(pos) => {
                    let a = self.vecs[pos][p].clone();
                    let c = v[p].clone();
                    if c.is_multiple_of(&a) {
                        let q = -(c / &a);
                        axpy(&mut v, &q, &self.vecs[pos]);
                        continue;
                    }
                    // Unimodular 2x2 step: [b; v] -> [x*b + y*v; (c/g)*b - (a/g)*v].
                    let (g, x, y) = ext_gcd(&a, &c);
                    let b = &self.vecs[pos];
                    let cg = &c / &g;
                    let ag = &a / &g;
                    let mut new_b = Vec::with_capacity(self.dim);
                    let mut new_v = Vec::with_capacity(self.dim);
                    for (bi, vi) in b.iter().zip(&v) {
                        new_b.push(&x * bi + &y * vi);
                        new_v.push(&cg * bi - &ag * vi);
                    }
                    self.vecs[pos] = new_b;
                    v = new_v;
                }
            }
        }
    }

    /// Brings the basis to reduced (canonical) Hermite form.
    pub fn reduce(&mut self) {
        for j in 0..self.vecs.len() {
            let p = self.pivots[j];
            let (head, tail) = self.vecs.split_at_mut(j);
            let pivot_vec = &tail[0];
            let piv = &pivot_vec[p];
            for earlier in head.iter_mut() {
                let q = earlier[p].div_floor(piv);
                if !q.is_zero() {
                    axpy(earlier, &(-q), pivot_vec);
                }
            }
        }
    }

    /// Integer coefficients `c` with `v = sum c_i * basis_i`, or `None` when `v`
    /// is not in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.vecs.len());
        for (b, &p) in self.vecs.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut rest, &(-&q), b);
            coeffs.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// Absolute value of the product of the pivots: the index of the lattice in
    /// `Z^dim` when the lattice has full rank.
    pub fn pivot_product(&self) -> BigInt {
        self.vecs
            .iter()
            .zip(&self.pivots)
            .map(|(b, &p)| b[p].abs())
            .product()
    }
}

/// Canonical Hermite basis of the lattice spanned by `gens` in `Z^dim`.
pub fn hermite_basis<I>(dim: usize, gens: I) -> Vec<Vec<BigInt>>
where
    I: IntoIterator<Item = Vec<BigInt>>,
{
    HermiteBasis::from_generators(dim, gens).into_vectors()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_form_is_independent_of_generator_order() {
        let gens = [v(&[2, 4, 6]), v(&[0, 3, 3]), v(&[4, 2, 0]), v(&[0, 0, 5])];
        let a = hermite_basis(3, gens.iter().cloned());
        let b = hermite_basis(3, gens.iter().rev().cloned());
        assert_eq!(a, b);
    }

    #[test]
    fn solve_and_membership() {
        let basis = HermiteBasis::from_generators(2, [v(&[2, 0]), v(&[0, 3])]);
        assert_eq!(basis.solve(&v(&[4, -3])), Some(v(&[2, -1])));
        assert!(!basis.contains(&v(&[1, 0])));
        assert_eq!(basis.pivot_product(), BigInt::from(6));
    }

    #[test]
    fn dependent_generators_collapse() {
        let basis = HermiteBasis::from_generators(2, [v(&[1, 1]), v(&[2, 2]), v(&[0, 0])]);
        assert_eq!(basis.rank(), 1);
        assert_eq!(basis.vectors()[0], v(&[1, 1]));
    }
}
