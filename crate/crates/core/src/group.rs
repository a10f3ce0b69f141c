//! Finitely generated abelian groups presented as `Z^r x Z/n_1 x ... x Z/n_k`.
//!
//! Elements are coordinate vectors: the `r` free coordinates come first, then
//! one coordinate per torsion factor, reduced into `[0, n_i)`. Factors keep the
//! order in which they were presented.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{kernel_mod, smith_with_inverse, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A subgroup given abstractly, with the images of its coordinate generators
/// in the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbelianGroup,
    pub generators: Vec<GroupElement>,
}

impl Subgroup {
    /// Image in the parent of the abstract coordinate vector `coords`.
    pub fn embed(&self, parent: &FgAbelianGroup, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                found: coords.len(),
            });
        }
        let mut acc = parent.zero();
        for (c, g) in coords.iter().zip(&self.generators) {
            acc = parent.add(&acc, &parent.scale(c, g)?)?;
        }
        Ok(acc)
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, moduli: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidModulus(bad.to_string()));
        }
        Ok(FgAbelianGroup { free_rank, moduli })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            moduli: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(0, vec![n])
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            moduli: Vec::new(),
        }
    }

    /// `(Z/p)^m`
    pub fn elementary(p: u64, m: usize) -> Result<Self> {
        Self::new(0, vec![p; m])
    }

    pub fn parse(spec: &str) -> Result<Self> {
        spec.parse()
    }

    /// One representative per isomorphism class of finite abelian group of
    /// order at most `max_order`, in invariant-factor form `Z/d1 x ... x Z/dk`
    /// with `d1 | d2 | ... | dk`, ordered by order and then by factors.
    pub fn finite_up_to_order(max_order: u64) -> Vec<FgAbelianGroup> {
        fn rec(prod: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            out.push(cur.clone());
            let step = cur.last().copied().unwrap_or(1);
            let mut d = if step == 1 { 2 } else { step };
            while prod * d <= max {
                cur.push(d);
                rec(prod * d, max, cur, out);
                cur.pop();
                d += step;
            }
        }
        let mut chains = Vec::new();
        rec(1, max_order.max(1), &mut Vec::new(), &mut chains);
        chains.sort_by_key(|c| (c.iter().product::<u64>(), c.clone()));
        chains
            .into_iter()
            .map(|m| FgAbelianGroup {
                free_rank: 0,
                moduli: m,
            })
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of coordinates of an element.
    pub fn dim(&self) -> usize {
        self.free_rank + self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.moduli.iter().map(|&n| BigInt::from(n)).product())
    }

    /// Order as a machine integer for enumeration-sized groups.
    pub fn order_usize(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Per-coordinate moduli for lattice computations: 0 for free coordinates.
    pub fn relation_moduli(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.moduli.iter().map(|&n| BigInt::from(n)))
            .collect()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.dim()],
        }
    }

    /// Builds an element from raw coordinates, reducing torsion coordinates.
    pub fn element_big(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        let mut coords = coords;
        for (i, &n) in self.moduli.iter().enumerate() {
            let c = &mut coords[self.free_rank + i];
            *c = c.mod_floor(&BigInt::from(n));
        }
        Ok(GroupElement { coords })
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element_big(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.len() == self.dim()
            && self.moduli.iter().enumerate().all(|(i, &n)| {
                let c = &a.coords[self.free_rank + i];
                !c.is_negative() && *c < BigInt::from(n)
            })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.element_big(coords)
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_len(a.len())?;
        self.element_big(a.coords.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// `k * a`
    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> Result<GroupElement> {
        self.check_len(a.len())?;
        self.element_big(a.coords.iter().map(|x| k * x).collect())
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }

    /// Least `k >= 1` with `k * g = 0` for all `g`; 0 when no such `k` exists,
    /// 1 for the trivial group.
    pub fn exponent(&self) -> BigInt {
        if self.free_rank > 0 {
            return BigInt::zero();
        }
        self.moduli
            .iter()
            .fold(BigInt::one(), |acc, &n| lcm_big(&acc, &BigInt::from(n)))
    }

    /// Order of `a`, 0 meaning infinite.
    pub fn order_of(&self, a: &GroupElement) -> Result<BigInt> {
        self.check_len(a.len())?;
        if a.coords[..self.free_rank].iter().any(|c| !c.is_zero()) {
            return Ok(BigInt::zero());
        }
        Ok(self
            .moduli
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &n)| {
                let n = BigInt::from(n);
                let g = a.coords[self.free_rank + i].gcd(&n);
                lcm_big(&acc, &(n / g))
            }))
    }

    /// All elements in lexicographic coordinate order.
    pub fn enumerate_elements(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup(self.to_string()));
        }
        let total = self.order_usize().ok_or_else(|| {
            Error::Precondition(format!("group {self} is too large to enumerate"))
        })?;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0u64; self.moduli.len()];
        for _ in 0..total {
            out.push(GroupElement {
                coords: digits.iter().map(|&d| BigInt::from(d)).collect(),
            });
            for i in (0..digits.len()).rev() {
                digits[i] += 1;
                if digits[i] < self.moduli[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
        Ok(out)
    }

    /// Position of `a` in [`Self::enumerate_elements`] order.
    pub fn index_of(&self, a: &GroupElement) -> Option<usize> {
        if !self.is_finite() || !self.contains(a) {
            return None;
        }
        let mut idx = 0usize;
        for (c, &n) in a.coords.iter().zip(&self.moduli) {
            idx = idx.checked_mul(n as usize)?.checked_add(c.to_usize()?)?;
        }
        Some(idx)
    }

    /// Columns are the coordinate vectors of `elems` (a `dim x |elems|` matrix).
    pub fn coordinate_matrix(&self, elems: &[GroupElement]) -> Result<IntMatrix> {
        for e in elems {
            self.check_len(e.len())?;
        }
        let cols: Vec<Vec<BigInt>> = elems.iter().map(|e| e.coords.clone()).collect();
        Ok(IntMatrix::from_columns(self.dim(), &cols))
    }

    /// The subgroup generated by `gens`, computed from the Smith normal form of
    /// the relation lattice of `gens`.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        if gens.is_empty() {
            return Ok(Subgroup {
                group: FgAbelianGroup::trivial(),
                generators: Vec::new(),
            });
        }
        let m = self.coordinate_matrix(gens)?;
        let relations = kernel_mod(&m, &self.relation_moduli())?;
        let k = gens.len();
        let (_, d, _, u_inv) = smith_with_inverse(&relations);
        let diag_len = d.rows().min(d.cols());
        let mut free_gens = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..k {
            let di = if i < diag_len {
                d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if di.is_one() {
                continue;
            }
            let mut image = self.zero();
            for (j, g) in gens.iter().enumerate() {
                let c = &u_inv[(j, i)];
                if !c.is_zero() {
                    image = self.add(&image, &self.scale(c, g)?)?;
                }
            }
            if di.is_zero() {
                free_gens.push(image);
            } else {
                let n = di
                    .to_u64()
                    .ok_or_else(|| Error::InvalidModulus(di.to_string()))?;
                torsion.push((n, image));
            }
        }
        let group =
            FgAbelianGroup::new(free_gens.len(), torsion.iter().map(|(n, _)| *n).collect())?;
        let mut generators = free_gens;
        generators.extend(torsion.into_iter().map(|(_, g)| g));
        Ok(Subgroup { group, generators })
    }

    /// Elements of the subgroup generated by `gens`, by breadth-first closure,
    /// sorted lexicographically. All generators must have finite order.
    pub fn subgroup_elements(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
        for g in gens {
            self.check_len(g.len())?;
            if g.coords[..self.free_rank].iter().any(|c| !c.is_zero()) {
                return Err(Error::InfiniteGroup(format!(
                    "generator {g} has infinite order"
                )));
            }
        }
        let zero = self.zero();
        let mut seen: HashSet<GroupElement> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<GroupElement> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Parses a single element: `(a,b,...)`, `a,b,...` or a bare integer for
    /// one-coordinate groups.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(&t);
        if inner.is_empty() {
            return if self.dim() == 0 {
                Ok(self.zero())
            } else {
                Err(Error::Parse(format!("empty element for group {self}")))
            };
        }
        let coords = inner
            .split(',')
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element_big(coords)
    }

    /// Parses a list of elements. Elements are separated by `;`; without any
    /// `;`, parenthesized tuples may be comma separated, and for one-coordinate
    /// groups bare integers may be comma separated.
    pub fn parse_element_list(&self, text: &str) -> Result<Vec<GroupElement>> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Ok(Vec::new());
        }
        let pieces: Vec<String> = if t.contains(';') {
            t.split(';')
                .filter(|p| !p.is_empty())
                .map(String::from)
                .collect()
        } else if t.contains('(') {
            split_top_level(&t)?
        } else if self.dim() == 1 {
            t.split(',').map(String::from).collect()
        } else {
            vec![t]
        };
        pieces.iter().map(|p| self.parse_element(p)).collect()
    }
}

fn split_top_level(t: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in t.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {t:?}")));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {t:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_count(s: &str, what: &str, spec: &str) -> Result<u64> {
    if let Some(rest) = s.strip_prefix('-') {
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            return Err(Error::Parse(format!("negative {what} in {spec:?}")));
        }
    }
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "expected a number for {what}, got {s:?} in {spec:?}"
        )));
    }
    s.parse::<u64>()
        .map_err(|_| Error::Parse(format!("{what} {s:?} out of range in {spec:?}")))
}

impl FromStr for FgAbelianGroup {
    type Err = Error;

    /// Grammar: `term ("x" term)*` with `term` one of `Z`, `Z^r`, `Z/n`,
    /// `(Z/n)^k`; whitespace is ignored.
    fn from_str(spec: &str) -> Result<Self> {
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let mut free_rank = 0usize;
        let mut moduli = Vec::new();
        for term in compact.split('x') {
            if term == "Z" {
                free_rank += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                let r = parse_count(r, "rank", spec)?;
                if r == 0 {
                    return Err(Error::Parse(format!("rank must be at least 1 in {spec:?}")));
                }
                free_rank += r as usize;
            } else if let Some(n) = term.strip_prefix("Z/") {
                let n = parse_count(n, "modulus", spec)?;
                if n < 2 {
                    return Err(Error::InvalidModulus(n.to_string()));
                }
                moduli.push(n);
            } else if let Some(rest) = term.strip_prefix("(Z/") {
                let (n, k) = rest
                    .split_once(")^")
                    .ok_or_else(|| Error::Parse(format!("malformed term {term:?} in {spec:?}")))?;
                let n = parse_count(n, "modulus", spec)?;
                let k = parse_count(k, "power", spec)?;
                if n < 2 {
                    return Err(Error::InvalidModulus(n.to_string()));
                }
                if k == 0 {
                    return Err(Error::Parse(format!(
                        "power must be at least 1 in {spec:?}"
                    )));
                }
                moduli.extend(std::iter::repeat_n(n, k as usize));
            } else {
                return Err(Error::Parse(format!(
                    "unrecognized term {term:?} in {spec:?}"
                )));
            }
        }
        FgAbelianGroup::new(free_rank, moduli)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.moduli.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}
