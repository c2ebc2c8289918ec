//! Exact verification toolkit for sum-free subsets.
//!
//! - [`group`]: arithmetic in `Z_n^s`, gcd classes, divisor subgroups.
//! - [`window`]: the sum-free target windows `C`, `I_1`, `I_2`.
//! - [`oracle`]: sum-free predicate and exact maximum sum-free subsequences.
//! - [`integers`]: deterministic extraction of a sum-free subset of size `> n/3`
//!   from nonzero integers.
//! - [`scan`]: divisor profiles, exact expected counts and exhaustive residue
//!   scans over `Z_n^s`.
//! - [`adjudicate`]: side-by-side averaging quantities and counterexample search.
//! - [`extremal`]: the `k p^(s-1)` bound and its `Z_7` tightness instance.
//! - [`io`]: input parsing and report serialization.
//!
//! All counting is integer or exact rational; nothing on the counting path
//! touches floating point.

pub mod adjudicate;
pub mod error;
pub mod extremal;
pub mod group;
pub mod integers;
pub mod io;
pub mod oracle;
pub mod primes;
pub mod rational;
pub mod scan;
pub mod window;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupSequence, GroupSpec};
pub use rational::Rational;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The single RNG used by every randomized path.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
