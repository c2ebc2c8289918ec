//! Ground-truth sum-freeness and exact maximum sum-free subsequences.
//!
//! A collection is sum-free when no `a1 + a2 = a3` holds among its members,
//! `a1 = a2` included. Sequences are handled by position: repeated values
//! stand or fall together, since copies of `a` add no new sums.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{reduce, GroupElement, GroupSpec};

/// Default sequence length accepted by [`max_sum_free`].
pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Addition context for the predicate and the exact search.
pub trait AdditiveDomain {
    type Value: Clone + Eq + Hash;

    /// `None` when the sum leaves the representable range, which means it
    /// cannot coincide with any member.
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Option<Self::Value>;
}

/// The integers, with sums computed in `i64` and overflow treated as absent.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl AdditiveDomain for Integers {
    type Value = i64;

    fn add(&self, a: &i64, b: &i64) -> Option<i64> {
        a.checked_add(*b)
    }
}

/// The cyclic group `Z_n`.
#[derive(Clone, Copy, Debug)]
pub struct Cyclic(pub u64);

impl AdditiveDomain for Cyclic {
    type Value = u64;

    fn add(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(reduce(*a as i128 + *b as i128, self.0))
    }
}

impl AdditiveDomain for GroupSpec {
    type Value = GroupElement;

    fn add(&self, a: &GroupElement, b: &GroupElement) -> Option<GroupElement> {
        Some(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| reduce(x as i128 + y as i128, self.n))
                .collect(),
        })
    }
}

/// Positions of a sum-free subsequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFreeWitness {
    pub indices: Vec<usize>,
    pub size: usize,
}

impl SumFreeWitness {
    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        let size = indices.len();
        Self { indices, size }
    }

    pub fn select<'a, T>(&self, items: &'a [T]) -> Vec<&'a T> {
        self.indices.iter().map(|&i| &items[i]).collect()
    }
}

pub fn is_sum_free<D: AdditiveDomain>(domain: &D, elements: &[D::Value]) -> bool {
    let distinct: Vec<&D::Value> = {
        let mut seen = std::collections::HashSet::new();
        elements.iter().filter(|v| seen.insert(*v)).collect()
    };
    let members: std::collections::HashSet<&D::Value> = distinct.iter().copied().collect();
    distinct.iter().enumerate().all(|(i, a)| {
        distinct[i..].iter().all(|b| match domain.add(a, b) {
            Some(sum) => !members.contains(&sum),
            None => true,
        })
    })
}

/// Exact maximum sum-free subsequence by branch and bound.
///
/// Among maximum witnesses the lexicographically smallest index list is
/// returned. Sequences longer than `limit` (at most 64) are refused.
pub fn max_sum_free<D: AdditiveDomain>(
    domain: &D,
    elements: &[D::Value],
    limit: usize,
) -> Result<SumFreeWitness> {
    if elements.len() > limit.min(64) {
        return Err(Error::ExactModeUnavailable {
            len: elements.len(),
            limit: limit.min(64),
        });
    }

    // Distinct values in order of first occurrence. Comparing value-choice
    // vectors in this order is the same as comparing position lists.
    let mut index_of: HashMap<&D::Value, usize> = HashMap::new();
    let mut values: Vec<&D::Value> = Vec::new();
    let mut positions: Vec<Vec<usize>> = Vec::new();
    for (pos, v) in elements.iter().enumerate() {
        let id = *index_of.entry(v).or_insert_with(|| {
            values.push(v);
            positions.push(Vec::new());
            values.len() - 1
        });
        positions[id].push(pos);
    }
    let k = values.len();

    // sums[a * k + b] = bit of the value equal to a + b, or 0.
    let mut sums = vec![0u64; k * k];
    for a in 0..k {
        for b in a..k {
            if let Some(s) = domain.add(values[a], values[b]) {
                if let Some(&id) = index_of.get(&s) {
                    sums[a * k + b] = 1 << id;
                    sums[b * k + a] = 1 << id;
                }
            }
        }
    }
    let weights: Vec<usize> = positions.iter().map(Vec::len).collect();

    let mut search = Search {
        k,
        sums: &sums,
        weights: &weights,
        best_weight: 0,
        best_mask: 0,
    };
    search.descend(0, 0, 0, 0);

    let mut indices: Vec<usize> = (0..k)
        .filter(|&id| search.best_mask >> id & 1 == 1)
        .flat_map(|id| positions[id].iter().copied())
        .collect();
    indices.sort_unstable();
    Ok(SumFreeWitness::from_indices(indices))
}

struct Search<'a> {
    k: usize,
    sums: &'a [u64],
    weights: &'a [usize],
    best_weight: usize,
    best_mask: u64,
}

impl Search<'_> {
    /// `chosen`: included values; `forbidden`: sums of pairs within `chosen`.
    fn descend(&mut self, next: usize, chosen: u64, forbidden: u64, weight: usize) {
        if next == self.k {
            if weight > self.best_weight {
                self.best_weight = weight;
                self.best_mask = chosen;
            }
            return;
        }
        let remaining: usize = (next..self.k)
            .filter(|&j| forbidden >> j & 1 == 0)
            .map(|j| self.weights[j])
            .sum();
        if weight + remaining <= self.best_weight {
            return;
        }

        if forbidden >> next & 1 == 0 {
            let with = chosen | 1 << next;
            let row = &self.sums[next * self.k..(next + 1) * self.k];
            let mut new_sums = 0u64;
            let mut rest = with;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                new_sums |= row[u];
                rest &= rest - 1;
            }
            if new_sums & with == 0 {
                self.descend(
                    next + 1,
                    with,
                    forbidden | new_sums,
                    weight + self.weights[next],
                );
            }
        }
        self.descend(next + 1, chosen, forbidden, weight);
    }
}

/// Greedy lower bound for sequences too long for the exact search: scan
/// positions in order and keep each one that leaves the selection sum-free.
pub fn greedy_sum_free<D: AdditiveDomain>(domain: &D, elements: &[D::Value]) -> SumFreeWitness {
    let mut kept: Vec<usize> = Vec::new();
    let mut values: Vec<D::Value> = Vec::new();
    for (i, v) in elements.iter().enumerate() {
        values.push(v.clone());
        if is_sum_free(domain, &values) {
            kept.push(i);
        } else {
            values.pop();
        }
    }
    SumFreeWitness::from_indices(kept)
}
