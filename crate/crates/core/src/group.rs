//! Arithmetic in the group of `s`-tuples of residues mod `n`.
//!
//! Every residue produced here goes through [`reduce`], so elements are
//! always held in canonical form `[0, n)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ceiling on `n^s` for group construction.
pub const DEFAULT_CARDINALITY_CAP: u64 = 100_000_000;

/// Canonical residue of `value` modulo `n`.
#[inline]
pub fn reduce(value: i128, n: u64) -> u64 {
    value.rem_euclid(n as i128) as u64
}

/// The ambient group `Z_n^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub n: u64,
    pub s: u32,
    #[serde(skip)]
    cardinality: u64,
}

impl GroupSpec {
    pub fn new(n: u64, s: u32) -> Result<Self> {
        Self::with_cap(n, s, DEFAULT_CARDINALITY_CAP)
    }

    pub fn with_cap(n: u64, s: u32, cap: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if s < 1 {
            return Err(Error::InvalidRank(s));
        }
        match n.checked_pow(s) {
            Some(cardinality) if cardinality <= cap => Ok(Self { n, s, cardinality }),
            _ => Err(Error::CardinalityCap { n, s, cap }),
        }
    }

    /// `n^s`.
    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn rank(&self) -> usize {
        self.s as usize
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_rank(coords.len())?;
        Ok(GroupElement {
            coords: coords.iter().map(|&c| reduce(c as i128, self.n)).collect(),
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// The element at position `index` in lexicographic order, last
    /// coordinate varying fastest.
    pub fn decode(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for c in coords.iter_mut().rev() {
            *c = index % self.n;
            index /= self.n;
        }
        GroupElement { coords }
    }

    pub fn encode(&self, element: &GroupElement) -> u64 {
        element.coords.iter().fold(0, |acc, &c| acc * self.n + c)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.cardinality).map(move |i| self.decode(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (1..self.cardinality).map(move |i| self.decode(i))
    }

    pub(crate) fn check_rank(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    pub(crate) fn check(&self, element: &GroupElement) -> Result<()> {
        self.check_rank(element.coords.len())?;
        if let Some(&c) = element.coords.iter().find(|&&c| c >= self.n) {
            return Err(Error::OutOfRange(c as i128));
        }
        Ok(())
    }
}

/// A vector of canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

pub fn add(a: &GroupElement, b: &GroupElement, spec: &GroupSpec) -> Result<GroupElement> {
    spec.check(a)?;
    spec.check(b)?;
    Ok(GroupElement {
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| reduce(x as i128 + y as i128, spec.n))
            .collect(),
    })
}

/// `gcd(b_1, ..., b_s, n)`, the divisor whose multiples form the image of
/// `x -> x.b`.
pub fn gcd_class(b: &GroupElement, spec: &GroupSpec) -> Result<u64> {
    spec.check(b)?;
    if b.is_zero() {
        return Err(Error::ZeroElement(0));
    }
    Ok(b.coords.iter().fold(spec.n, |g, &c| g.gcd(&c)))
}

/// `{0, d, 2d, ..., n - d}`.
pub fn subgroup_multiples(d: u64, n: u64) -> Result<Vec<u64>> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor { d, n });
    }
    Ok((0..n).step_by(d as usize).collect())
}

/// `sum_j x_j b_j mod n`.
pub fn dot_mod(x: &GroupElement, b: &GroupElement, spec: &GroupSpec) -> Result<u64> {
    spec.check(x)?;
    spec.check(b)?;
    let n = spec.n as u128;
    let acc = x
        .coords
        .iter()
        .zip(&b.coords)
        .fold(0u128, |acc, (&xj, &bj)| (acc + xj as u128 * bj as u128) % n);
    Ok(acc as u64)
}

/// Divisors `d` of `n` with `1 <= d < n`, ascending.
pub fn proper_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.pop();
    small
}

/// An ordered sequence of nonzero elements; repeats are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSequence {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
}

impl GroupSequence {
    pub fn new(spec: GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            spec.check(e)?;
            if e.is_zero() {
                return Err(Error::ZeroElement(i));
            }
        }
        Ok(Self { spec, elements })
    }

    /// Convenience constructor from raw integer coordinates.
    pub fn from_coords(spec: GroupSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let elements = rows
            .iter()
            .map(|r| spec.element(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, elements)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: &GroupSpec, c: &[i64]) -> GroupElement {
        spec.element(c).unwrap()
    }

    #[test]
    fn addition_examples() {
        let z5 = GroupSpec::new(5, 2).unwrap();
        assert_eq!(
            add(&el(&z5, &[3, 4]), &el(&z5, &[4, 3]), &z5).unwrap(),
            el(&z5, &[2, 2])
        );
        let e = el(&z5, &[1, 3]);
        assert_eq!(add(&e, &z5.zero(), &z5).unwrap(), e);
        let z7 = GroupSpec::new(7, 1).unwrap();
        assert_eq!(
            add(&el(&z7, &[6]), &el(&z7, &[6]), &z7).unwrap().coords,
            vec![5]
        );
    }

    #[test]
    fn addition_rank_mismatch() {
        let z5 = GroupSpec::new(5, 2).unwrap();
        let bad = GroupElement { coords: vec![1] };
        assert!(matches!(
            add(&bad, &z5.zero(), &z5),
            Err(Error::RankMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn gcd_class_examples() {
        let z6 = GroupSpec::new(6, 2).unwrap();
        assert_eq!(gcd_class(&el(&z6, &[2, 4]), &z6).unwrap(), 2);
        for n in 2..12 {
            let g = GroupSpec::new(n, 2).unwrap();
            assert_eq!(gcd_class(&el(&g, &[1, 0]), &g).unwrap(), 1);
        }
        let z9 = GroupSpec::new(9, 1).unwrap();
        assert_eq!(gcd_class(&el(&z9, &[3]), &z9).unwrap(), 3);
        assert!(matches!(
            gcd_class(&z9.zero(), &z9),
            Err(Error::ZeroElement(_))
        ));
    }

    #[test]
    fn gcd_class_is_proper_divisor() {
        for n in 2..20 {
            let g = GroupSpec::new(n, 2).unwrap();
            for b in g.nonzero_elements() {
                let d = gcd_class(&b, &g).unwrap();
                assert!(n % d == 0 && d < n);
            }
        }
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(subgroup_multiples(2, 6).unwrap(), vec![0, 2, 4]);
        assert_eq!(subgroup_multiples(1, 5).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(subgroup_multiples(3, 9).unwrap(), vec![0, 3, 6]);
        assert!(matches!(
            subgroup_multiples(4, 6),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn subgroup_closed_under_addition() {
        for n in 2..40u64 {
            for d in proper_divisors(n) {
                let h = subgroup_multiples(d, n).unwrap();
                assert_eq!(h.len() as u64, n / d);
                for &a in &h {
                    for &b in &h {
                        assert!(h.contains(&((a + b) % n)));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_mod_examples() {
        let z5 = GroupSpec::new(5, 2).unwrap();
        assert_eq!(
            dot_mod(&el(&z5, &[1, 2]), &el(&z5, &[3, 4]), &z5).unwrap(),
            1
        );
        for b in z5.elements() {
            assert_eq!(dot_mod(&z5.zero(), &b, &z5).unwrap(), 0);
        }
        let z7 = GroupSpec::new(7, 1).unwrap();
        assert_eq!(dot_mod(&el(&z7, &[2]), &el(&z7, &[3]), &z7).unwrap(), 6);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            GroupSpec::new(1, 1),
            Err(Error::InvalidModulus(1))
        ));
        assert!(matches!(GroupSpec::new(3, 0), Err(Error::InvalidRank(0))));
        assert!(matches!(
            GroupSpec::new(11, 9),
            Err(Error::CardinalityCap { .. })
        ));
        assert!(GroupSpec::new(10, 8).is_ok());
        assert!(matches!(
            GroupSpec::new(u64::MAX, 3),
            Err(Error::CardinalityCap { .. })
        ));
    }

    #[test]
    fn negative_coordinates_are_normalized() {
        let g = GroupSpec::new(7, 2).unwrap();
        assert_eq!(g.element(&[-1, 15]).unwrap().coords, vec![6, 1]);
    }

    #[test]
    fn decode_encode_round_trip() {
        let g = GroupSpec::new(4, 3).unwrap();
        for (i, e) in g.elements().enumerate() {
            assert_eq!(g.encode(&e), i as u64);
        }
        assert_eq!(g.decode(1).coords, vec![0, 0, 1]);
    }

    #[test]
    fn sequence_rejects_zero() {
        let g = GroupSpec::new(5, 1).unwrap();
        let r = GroupSequence::from_coords(g, &[vec![1], vec![5]]);
        assert!(matches!(r, Err(Error::ZeroElement(1))));
    }

    #[test]
    fn divisors() {
        assert_eq!(proper_divisors(12), vec![1, 2, 3, 4, 6]);
        assert_eq!(proper_divisors(7), vec![1]);
        assert_eq!(proper_divisors(2), vec![1]);
        assert_eq!(proper_divisors(9), vec![1, 3]);
    }
}
