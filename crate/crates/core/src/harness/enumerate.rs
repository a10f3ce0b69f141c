//! Enumeration of symmetric sets for exhaustive sweeps.

use crate::cayley::SymmetricSet;
use crate::error::Result;
use crate::group::{FgAbelianGroup, GroupElement};

/// Nonzero elements of a finite group grouped as `{x, -x}` (a singleton when
/// `x` is self-inverse), in order of first element. Every symmetric set is a
/// union of classes.
pub fn inverse_classes(g: &FgAbelianGroup) -> Result<Vec<Vec<GroupElement>>> {
    let elems = g.enumerate_elements()?;
    let mut taken = vec![false; elems.len()];
    let mut out = Vec::new();
    for (i, x) in elems.iter().enumerate().skip(1) {
        if taken[i] {
            continue;
        }
        taken[i] = true;
        let neg = g.neg(x)?;
        let j = g.index_of(&neg).expect("finite group element");
        let mut class = vec![x.clone()];
        if j != i {
            taken[j] = true;
            class.push(neg);
        }
        out.push(class);
    }
    Ok(out)
}

/// The union of the classes selected by the bits of `mask`.
pub fn set_from_mask(
    g: &FgAbelianGroup,
    classes: &[Vec<GroupElement>],
    mask: u64,
) -> Result<SymmetricSet> {
    let elems: Vec<GroupElement> = classes
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, c)| c.iter().cloned())
        .collect();
    SymmetricSet::new(g, elems)
}

/// Number of symmetric subsets, `2^classes`, if it fits in a `u64`.
pub fn symmetric_set_count(classes: &[Vec<GroupElement>]) -> Option<u64> {
    1u64.checked_shl(u32::try_from(classes.len()).ok()?)
}

/// Abelian groups of order at most `max_order` whose exponent divides 4.
pub fn exponent_dividing_4(max_order: u64) -> Vec<FgAbelianGroup> {
    FgAbelianGroup::finite_up_to_order(max_order)
        .into_iter()
        .filter(|g| g.torsion_moduli().iter().all(|&n| 4 % n == 0))
        .collect()
}

/// Nonzero vectors of `(Z/2)^m` packed as bit masks `1 ..= 2^m - 1`; subset
/// masks over them use bit `v - 1` for vector `v`.
#[derive(Clone, Debug)]
pub struct BinaryCube {
    m: u32,
    /// For each coordinate permutation, the induced map on vector indices.
    perms: Vec<Vec<u8>>,
}

impl BinaryCube {
    pub fn new(m: u32) -> Self {
        assert!((1..=6).contains(&m), "binary cube dimension must be 1..=6");
        let mut perms = Vec::new();
        let mut p: Vec<u32> = (0..m).collect();
        loop {
            let map = (1u32..1 << m)
                .map(|v| {
                    let w = (0..m)
                        .filter(|&i| v >> i & 1 == 1)
                        .fold(0u32, |acc, i| acc | 1 << p[i as usize]);
                    (w - 1) as u8
                })
                .collect();
            perms.push(map);
            if !next_permutation(&mut p) {
                break;
            }
        }
        BinaryCube { m, perms }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of nonzero vectors, `2^m - 1`.
    pub fn nonzero(&self) -> u32 {
        (1 << self.m) - 1
    }

    /// One past the largest subset mask.
    pub fn subset_count(&self) -> u128 {
        1u128 << self.nonzero()
    }

    pub fn permute(&self, perm: usize, mask: u64) -> u64 {
        let map = &self.perms[perm];
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1 << map[i];
            rest &= rest - 1;
        }
        out
    }

    /// Least mask in the orbit under coordinate permutations.
    pub fn canonical(&self, mask: u64) -> u64 {
        (0..self.perms.len())
            .map(|p| self.permute(p, mask))
            .min()
            .expect("identity permutation")
    }

    pub fn is_canonical(&self, mask: u64) -> bool {
        (0..self.perms.len()).all(|p| self.permute(p, mask) >= mask)
    }

    /// Size of the orbit of `mask`.
    pub fn orbit_size(&self, mask: u64) -> u64 {
        let mut images: Vec<u64> = (0..self.perms.len())
            .map(|p| self.permute(p, mask))
            .collect();
        images.sort_unstable();
        images.dedup();
        images.len() as u64
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::elementary(2, self.m as usize).expect("2 is a valid modulus")
    }

    /// The symmetric set of vectors selected by `mask`.
    pub fn set(&self, g: &FgAbelianGroup, mask: u64) -> Result<SymmetricSet> {
        let elems = (0..self.nonzero())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| {
                let v = i + 1;
                // Coordinate 0 is the most significant bit so that vector
                // `v` is the element at index `v` in enumeration order.
                let coords: Vec<i64> = (0..self.m).rev().map(|b| i64::from(v >> b & 1)).collect();
                g.element(&coords)
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetricSet::new(g, elems)
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_nonzero_elements() {
        let g = FgAbelianGroup::parse("Z/4 x Z/2").unwrap();
        let c = inverse_classes(&g).unwrap();
        let total: usize = c.iter().map(Vec::len).sum();
        assert_eq!(total, 7);
        // Order-2 elements (0,1), (2,0), (2,1) are singletons.
        assert_eq!(c.iter().filter(|k| k.len() == 1).count(), 3);
        assert_eq!(symmetric_set_count(&c), Some(32));
        let s = set_from_mask(&g, &c, 0b11111).unwrap();
        assert_eq!(s.len(), 7);
    }

    #[test]
    fn exponent_four_census() {
        let names: Vec<String> = exponent_dividing_4(16)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            names,
            [
                "1",
                "Z/2",
                "Z/2 x Z/2",
                "Z/4",
                "Z/2 x Z/2 x Z/2",
                "Z/2 x Z/4",
                "Z/2 x Z/2 x Z/2 x Z/2",
                "Z/2 x Z/2 x Z/4",
                "Z/4 x Z/4"
            ]
        );
    }

    #[test]
    fn cube_orbits_cover_everything() {
        for m in 1..=4u32 {
            let cube = BinaryCube::new(m);
            let total: u64 = (0..cube.subset_count() as u64)
                .filter(|&mask| cube.is_canonical(mask))
                .map(|mask| cube.orbit_size(mask))
                .sum();
            assert_eq!(u128::from(total), cube.subset_count());
        }
        let cube = BinaryCube::new(3);
        assert_eq!(cube.canonical(0b1000), 0b0001);
        assert_eq!(cube.canonical(0b100000), 0b100);
        let g = cube.group();
        let s = cube.set(&g, 0b1).unwrap();
        assert_eq!(s.labels(), ["(0,0,1)"]);
    }
}
