use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `D = U * A * V` with `U`, `V` unimodular and `D` diagonal
/// with nonnegative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Transform matrices tracked alongside the elimination. `u_inv` is kept so
/// callers can map quotient generators back into the source lattice.
struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

struct Eliminator<'a> {
    a: &'a mut IntMatrix,
    t: Option<&'a mut Transforms>,
}

impl Eliminator<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = self.t.as_deref_mut() {
            t.v.swap_cols(i, j);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.add_row_multiple(dst, src, f);
            t.u_inv.add_col_multiple(src, dst, &(-f));
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(t) = self.t.as_deref_mut() {
            t.v.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    /// Position of the smallest nonzero |entry| in the trailing block from `t`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let is_unit = ax.is_one();
                    best = Some((i, j, ax));
                    if is_unit {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|(_, _, b)| b.is_one()) {
                break;
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &(-q));
                    dirty |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &(-q));
                    dirty |= !self.a[(t, j)].is_zero();
                }
                if dirty {
                    // Move the smallest remainder in the pivot row/column onto the pivot.
                    let mut best = (t, t, self.a[(t, t)].abs());
                    for i in t + 1..m {
                        let x = self.a[(i, t)].abs();
                        if !x.is_zero() && x < best.2 {
                            best = (i, t, x);
                        }
                    }
                    for j in t + 1..n {
                        let x = self.a[(t, j)].abs();
                        if !x.is_zero() && x < best.2 {
                            best = (t, j, x);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Pivot row and column are clear; enforce divisibility.
                let piv = self.a[(t, t)].clone();
                let offender =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&piv)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transforms. Deterministic for a fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (u, d, v, _) = smith_with_inverse(a);
    SmithForm { u, d, v }
}

/// Smith normal form that also returns `U^{-1}`.
pub(crate) fn smith_with_inverse(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix, IntMatrix) {
    let mut d = a.clone();
    let mut t = Transforms {
        u: IntMatrix::identity(a.rows()),
        u_inv: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
    };
    Eliminator {
        a: &mut d,
        t: Some(&mut t),
    }
    .run();
    (t.u, d, t.v, t.u_inv)
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`), without
/// tracking transforms.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    Eliminator { a: &mut d, t: None }.run();
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .collect()
}
