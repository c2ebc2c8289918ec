//! The extremal bound `k p^(s-1)` for `(Z/pZ)^s`, `p = 3k + 1` prime, and
//! the `Z_7` instance where every nonzero element is present and the best
//! sum-free subset has size `(2/7)(6 + 1) = 2`.
//!
//! Only the bound value is exposed; no extremal sets are constructed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSequence, GroupSpec};
use crate::oracle::{max_sum_free, DEFAULT_EXACT_LIMIT};
use crate::primes::is_prime;
use crate::rational::Rational;

pub fn rhemtulla_street_bound(p: u64, s: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(Error::WrongResidue { p, residue: 1 });
    }
    if s < 1 {
        return Err(Error::InvalidRank(s));
    }
    let k = (p - 1) / 3;
    p.checked_pow(s - 1)
        .and_then(|v| v.checked_mul(k))
        .ok_or(Error::OutOfRange(p as i128))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub p: u64,
    /// `p - 1`, the number of elements.
    pub n: u64,
    pub bound: u64,
    pub oracle_max: u64,
    pub witness: Vec<GroupElement>,
    /// `(2/7)(n + 1)`.
    pub two_sevenths_n_plus_1: Rational,
    pub matches_bound: bool,
    pub matches_two_sevenths: bool,
}

/// All nonzero elements of `Z_p`, checked against the exact oracle.
///
/// Any prime `p ≡ 1 (mod 3)` with `p - 1` within the oracle limit is
/// accepted; `p = 7` is the case where the bound meets `(2/7)(n + 1)`.
pub fn tightness_instance(p: u64) -> Result<(GroupSequence, TightnessReport)> {
    let bound = rhemtulla_street_bound(p, 1)?;
    let spec = GroupSpec::new(p, 1)?;
    let seq = GroupSequence::new(spec, spec.nonzero_elements().collect())?;
    let witness = max_sum_free(&spec, seq.elements(), DEFAULT_EXACT_LIMIT)?;
    let n = p - 1;
    let two_sevenths = Rational::new(2 * (n + 1), 7);
    let oracle_max = witness.size as u64;
    let report = TightnessReport {
        p,
        n,
        bound,
        oracle_max,
        witness: witness
            .select(seq.elements())
            .into_iter()
            .cloned()
            .collect(),
        matches_bound: oracle_max == bound,
        matches_two_sevenths: Rational::integer(oracle_max) == two_sevenths,
        two_sevenths_n_plus_1: two_sevenths,
    };
    Ok((seq, report))
}
