//! Classical root systems of types A, B, C, D in the standard `e_k` coordinates,
//! with Weyl groups realised as signed permutations.
//!
//! Type A keeps all `n` coordinates (roots `e_i - e_j`), so `A` of rank `n`
//! means the roots of `gl(n)`. A root system may be supported on a subset of
//! the ambient coordinates split into blocks; the Weyl group is then the
//! product of the family's group on each block. This is how the compact
//! subgroups and centraliser subsystems of the dual pairs are represented.

use crate::error::{Error, Result};
use crate::torus::Weight;
use crate::Rational;

/// Largest number of permuted coordinates for which Weyl groups are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    fn allows_signs(self) -> bool {
        self != Family::A
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    /// Number of ambient coordinates.
    pub rank: usize,
    /// Coordinate blocks the Weyl group acts on; disjoint, each in increasing order.
    pub blocks: Vec<Vec<usize>>,
    pub positive_roots: Vec<Weight>,
    pub compact_positive_roots: Vec<Weight>,
}

/// Positive roots of `family` on the given coordinates of a `rank`-dimensional space.
///
/// Order: pairs `(i, j)` with `i < j` in block order, `e_i - e_j` before
/// `e_i + e_j`, followed by the short or long roots `e_k` / `2 e_k`.
fn block_roots(family: Family, rank: usize, coords: &[usize]) -> Vec<Weight> {
    let unit = |entries: &[(usize, i64)]| {
        let mut v = vec![0i64; rank];
        for &(k, c) in entries {
            v[k] += c;
        }
        Weight::from_ints(&v)
    };
    let mut roots = Vec::new();
    for (a, &i) in coords.iter().enumerate() {
        for &j in &coords[a + 1..] {
            roots.push(unit(&[(i, 1), (j, -1)]));
            if family != Family::A {
                roots.push(unit(&[(i, 1), (j, 1)]));
            }
        }
    }
    match family {
        Family::B => roots.extend(coords.iter().map(|&k| unit(&[(k, 1)]))),
        Family::C => roots.extend(coords.iter().map(|&k| unit(&[(k, 2)]))),
        Family::A | Family::D => {}
    }
    roots
}

/// The root system of `family` and `rank` on all coordinates.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    if rank == 0 || (family == Family::D && rank == 1) {
        return Err(Error::InvalidRank { family, rank });
    }
    Ok(RootSystem::on_blocks(family, rank, vec![(0..rank).collect()]))
}

impl RootSystem {
    /// Root system of `family` on each coordinate block of a `rank`-dimensional space.
    ///
    /// Degenerate blocks are accepted: `D` on one coordinate has no roots and a
    /// trivial Weyl group, and an empty block contributes nothing.
    pub fn on_blocks(family: Family, rank: usize, blocks: Vec<Vec<usize>>) -> RootSystem {
        let positive_roots = blocks
            .iter()
            .flat_map(|b| block_roots(family, rank, b))
            .collect();
        RootSystem {
            family,
            rank,
            blocks,
            positive_roots,
            compact_positive_roots: Vec::new(),
        }
    }

    /// Marks the positive roots selected by `is_compact` as compact.
    pub fn with_compact(mut self, is_compact: impl Fn(&Weight) -> bool) -> RootSystem {
        self.compact_positive_roots = self
            .positive_roots
            .iter()
            .filter(|r| is_compact(r))
            .cloned()
            .collect();
        self
    }

    pub fn noncompact_positive_roots(&self) -> Vec<Weight> {
        self.positive_roots
            .iter()
            .filter(|r| !self.compact_positive_roots.contains(r))
            .cloned()
            .collect()
    }

    /// Number of coordinates moved by the Weyl group.
    pub fn acting_coordinates(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| block_order(self.family, b.len()))
            .product()
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        self.positive_roots
            .iter()
            .all(|a| lambda.dot(a) >= Rational::from_integer(0))
    }
}

fn factorial(s: usize) -> u64 {
    (1..=s as u64).product()
}

fn sign_patterns(family: Family, s: usize) -> u64 {
    match family {
        Family::A => 1,
        Family::B | Family::C => 1 << s,
        Family::D => {
            if s == 0 {
                1
            } else {
                1 << (s - 1)
            }
        }
    }
}

fn block_order(family: Family, s: usize) -> u64 {
    factorial(s) * sign_patterns(family, s)
}

/// ρ, half the sum of the positive roots.
pub fn rho(rs: &RootSystem) -> Weight {
    let mut acc = Weight::zeros(rs.rank);
    for a in &rs.positive_roots {
        acc = &acc + a;
    }
    acc.scale(Rational::new(1, 2))
}

/// A signed permutation acting by `(w·μ)_k = signs_k · μ_{perm(k)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        WeylElement {
            perm: (0..rank).collect(),
            signs: vec![1; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// `self ∘ other`, so that `act(self ∘ other, μ) = act(self, act(other, μ))`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s * other.signs[p])
            .collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for k in 0..n {
            perm[self.perm[k]] = k;
            signs[self.perm[k]] = self.signs[k];
        }
        WeylElement { perm, signs }
    }

    /// Acts on an angle vector with the same rule as on weights.
    pub fn act_angles(&self, theta: &[f64]) -> Vec<f64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| f64::from(s) * theta[p])
            .collect()
    }
}

pub fn act(w: &WeylElement, mu: &Weight) -> Result<Weight> {
    if w.rank() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: w.rank(),
            got: mu.len(),
        });
    }
    Ok(Weight::from_rationals_unchecked(
        w.perm
            .iter()
            .zip(&w.signs)
            .map(|(&p, &s)| mu[p] * Rational::from_integer(i64::from(s)))
            .collect(),
    ))
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn sign(w: &WeylElement) -> i64 {
    permutation_sign(&w.perm) * w.signs.iter().map(|&s| i64::from(s)).product::<i64>()
}

/// Lazily enumerates the Weyl group in a fixed order: blocks most significant
/// first, permutations in lexicographic order, then sign patterns.
#[derive(Clone, Debug)]
pub struct WeylIter {
    family: Family,
    rank: usize,
    blocks: Vec<Vec<usize>>,
    next: u64,
    total: u64,
}

impl Iterator for WeylIter {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        if self.next >= self.total {
            return None;
        }
        let mut idx = self.next;
        self.next += 1;
        let mut w = WeylElement::identity(self.rank);
        for block in self.blocks.iter().rev() {
            let s = block.len();
            let order = block_order(self.family, s);
            let local = idx % order;
            idx /= order;
            let signs = sign_patterns(self.family, s);
            decode_block(self.family, block, local / signs, local % signs, &mut w);
        }
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for WeylIter {}

fn decode_block(family: Family, block: &[usize], perm_idx: u64, sign_idx: u64, w: &mut WeylElement) {
    let s = block.len();
    let mut pool: Vec<usize> = (0..s).collect();
    let mut rem = perm_idx;
    for i in 0..s {
        let f = factorial(s - 1 - i);
        let pick = (rem / f) as usize;
        rem %= f;
        let chosen = pool.remove(pick);
        w.perm[block[i]] = block[chosen];
    }
    if !family.allows_signs() || s == 0 {
        return;
    }
    let free = if family == Family::D { s - 1 } else { s };
    let mut parity = 0;
    for (i, &k) in block.iter().take(free).enumerate() {
        if (sign_idx >> (free - 1 - i)) & 1 == 1 {
            w.signs[k] = -1;
            parity ^= 1;
        }
    }
    if family == Family::D && parity == 1 {
        w.signs[block[s - 1]] = -1;
    }
}

pub fn weyl_elements(rs: &RootSystem) -> Result<WeylIter> {
    weyl_elements_with_cap(rs, DEFAULT_ENUMERATION_CAP)
}

pub fn weyl_elements_with_cap(rs: &RootSystem, cap: usize) -> Result<WeylIter> {
    if rs.acting_coordinates() > cap {
        return Err(Error::CapExceeded {
            what: format!("Weyl group on {} coordinates", rs.acting_coordinates()),
            cap,
        });
    }
    Ok(WeylIter {
        family: rs.family,
        rank: rs.rank,
        blocks: rs.blocks.clone(),
        next: 0,
        total: rs.weyl_order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn w(ints: &[i64]) -> Weight {
        Weight::from_ints(ints)
    }

    #[test]
    fn root_lists() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        assert_eq!(a3.positive_roots, vec![w(&[1, -1, 0]), w(&[1, 0, -1]), w(&[0, 1, -1])]);
        let c2 = build_root_system(Family::C, 2).unwrap();
        assert_eq!(c2.positive_roots, vec![w(&[1, -1]), w(&[1, 1]), w(&[2, 0]), w(&[0, 2])]);
        let b2 = build_root_system(Family::B, 2).unwrap();
        assert_eq!(b2.positive_roots, vec![w(&[1, -1]), w(&[1, 1]), w(&[1, 0]), w(&[0, 1])]);
    }

    #[test]
    fn root_counts() {
        for n in 1..=6 {
            assert_eq!(build_root_system(Family::A, n).unwrap().positive_roots.len(), n * (n - 1) / 2);
            assert_eq!(build_root_system(Family::B, n).unwrap().positive_roots.len(), n * n);
            assert_eq!(build_root_system(Family::C, n).unwrap().positive_roots.len(), n * n);
            if n >= 2 {
                assert_eq!(build_root_system(Family::D, n).unwrap().positive_roots.len(), n * (n - 1));
            }
        }
    }

    #[test]
    fn rejected_ranks() {
        assert!(matches!(build_root_system(Family::A, 0), Err(Error::InvalidRank { .. })));
        assert!(matches!(build_root_system(Family::D, 1), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn rho_values() {
        let r = |f, n| rho(&build_root_system(f, n).unwrap());
        assert_eq!(r(Family::A, 3), w(&[1, 0, -1]));
        assert_eq!(r(Family::D, 2), w(&[1, 0]));
        assert_eq!(r(Family::C, 2), w(&[2, 1]));
        let b3 = r(Family::B, 3);
        for k in 0..3 {
            assert_eq!(b3[k], Rational::new(2 * (3 - k as i64) - 1, 2));
        }
    }

    #[test]
    fn group_orders() {
        let count = |f, n| weyl_elements(&build_root_system(f, n).unwrap()).unwrap().count();
        assert_eq!(count(Family::A, 3), 6);
        assert_eq!(count(Family::C, 2), 8);
        assert_eq!(count(Family::D, 3), 24);
        assert_eq!(count(Family::B, 3), 48);
    }

    #[test]
    fn cap_enforced() {
        let b11 = RootSystem::on_blocks(Family::B, 11, vec![(0..11).collect()]);
        assert!(matches!(weyl_elements(&b11), Err(Error::CapExceeded { .. })));
        let a10 = build_root_system(Family::A, 10).unwrap();
        assert!(weyl_elements(&a10).is_ok());
    }

    #[test]
    fn enumeration_distinct_with_single_identity() {
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let rs = build_root_system(f, n).unwrap();
            let all: Vec<_> = weyl_elements(&rs).unwrap().collect();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert_eq!(all.iter().filter(|x| **x == WeylElement::identity(n)).count(), 1);
            assert_eq!(all[0], WeylElement::identity(n));
            if f == Family::D {
                assert!(all.iter().all(|x| x.signs.iter().filter(|&&s| s < 0).count() % 2 == 0));
            }
        }
    }

    #[test]
    fn action_examples() {
        let id = WeylElement::identity(2);
        assert_eq!(act(&id, &w(&[2, 1])).unwrap(), w(&[2, 1]));
        assert_eq!(sign(&id), 1);
        let swap = WeylElement { perm: vec![1, 0], signs: vec![1, 1] };
        assert_eq!(act(&swap, &w(&[2, 1])).unwrap(), w(&[1, 2]));
        assert_eq!(sign(&swap), -1);
        let flip = WeylElement { perm: vec![0, 1], signs: vec![-1, 1] };
        assert_eq!(act(&flip, &w(&[2, 1])).unwrap(), w(&[-2, 1]));
        assert_eq!(sign(&flip), -1);
        assert!(act(&id, &w(&[1, 2, 3])).is_err());
    }

    #[test]
    fn degenerate_blocks() {
        let d1 = RootSystem::on_blocks(Family::D, 3, vec![vec![2]]);
        assert!(d1.positive_roots.is_empty());
        assert_eq!(weyl_elements(&d1).unwrap().count(), 1);
        let empty = RootSystem::on_blocks(Family::C, 2, vec![vec![]]);
        assert_eq!(rho(&empty), Weight::zeros(2));
    }

    fn family_strategy() -> impl Strategy<Value = (Family, usize)> {
        prop_oneof![
            (1usize..=5).prop_map(|n| (Family::A, n)),
            (1usize..=4).prop_map(|n| (Family::B, n)),
            (1usize..=4).prop_map(|n| (Family::C, n)),
            (2usize..=4).prop_map(|n| (Family::D, n)),
        ]
    }

    proptest! {
        #[test]
        fn two_rho_is_root_sum((f, n) in family_strategy()) {
            let rs = build_root_system(f, n).unwrap();
            let mut sum = Weight::zeros(n);
            for a in &rs.positive_roots {
                sum = &sum + a;
            }
            prop_assert_eq!(sum, rho(&rs).scale(Rational::from_integer(2)));
        }

        #[test]
        fn inversion_parity_matches_sign((f, n) in family_strategy(), pick in any::<u64>()) {
            let rs = build_root_system(f, n).unwrap();
            let order = rs.weyl_order();
            let el = weyl_elements(&rs).unwrap().nth((pick % order) as usize).unwrap();
            let positive: HashSet<_> = rs.positive_roots.iter().cloned().collect();
            let flipped = rs
                .positive_roots
                .iter()
                .filter(|a| !positive.contains(&act(&el, a).unwrap()))
                .count();
            prop_assert_eq!(flipped % 2 == 1, sign(&el) == -1);
        }

        #[test]
        fn action_is_homomorphic(
            (f, n) in family_strategy(),
            i in any::<u64>(),
            j in any::<u64>(),
            mu in proptest::collection::vec(-6i64..6, 5),
        ) {
            let rs = build_root_system(f, n).unwrap();
            let order = rs.weyl_order();
            let w1 = weyl_elements(&rs).unwrap().nth((i % order) as usize).unwrap();
            let w2 = weyl_elements(&rs).unwrap().nth((j % order) as usize).unwrap();
            let mu = Weight::from_ints(&mu[..n]);
            let lhs = act(&w1, &act(&w2, &mu).unwrap()).unwrap();
            let rhs = act(&w1.compose(&w2), &mu).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(sign(&w1.compose(&w2)), sign(&w1) * sign(&w2));
            prop_assert_eq!(act(&w1.inverse(), &act(&w1, &mu).unwrap()).unwrap(), mu);
        }
    }
}
