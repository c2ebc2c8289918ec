//! Deterministic sum-free extraction from a list of nonzero integers.
//!
//! Pick the smallest prime `p = 3k + 2` above `2 max |b_i|`, scale every
//! `b_i` by each multiplier `x` in `[1, p)` and keep the column whose residues
//! land most often in the middle window `C = {k+1, ..., 2k+1}`. Every row of
//! that residue table hits `C` exactly `k + 1` times, so some column carries
//! more than `n / 3` hits, and the preimage of `C` in that column is sum-free.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::reduce;
use crate::oracle::{is_sum_free, Integers, SumFreeWitness};
use crate::primes::{inverse_mod_prime, is_prime};
use crate::window::{window_c, Window};

/// Largest magnitude accepted as input.
pub const MAX_MAGNITUDE: u64 = 1 << 61;

/// Largest prime for which the exhaustive column scan is attempted.
pub const EXHAUSTIVE_PRIME_CAP: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeChoice {
    pub p: u64,
    pub k: u64,
    /// `2 max |b_i|`; `p` is strictly above it.
    pub bound: u64,
}

impl PrimeChoice {
    pub fn window(&self) -> Window {
        window_c(self.k)
    }

    fn in_window(&self, residue: u64) -> bool {
        self.k < residue && residue <= 2 * self.k + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnSelection {
    pub x: u64,
    pub hits: Vec<usize>,
    pub count: usize,
}

fn check_input(b: &[i64]) -> Result<u64> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(i) = b.iter().position(|&v| v == 0) {
        return Err(Error::ZeroElement(i));
    }
    let max = b.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if max > MAX_MAGNITUDE {
        return Err(Error::OutOfRange(max as i128));
    }
    Ok(max)
}

/// Smallest prime `p ≡ 2 (mod 3)` with `p > 2 max |b_i|`.
pub fn choose_prime(b: &[i64]) -> Result<PrimeChoice> {
    let bound = 2 * check_input(b)?;
    // Odd and ≡ 2 mod 3 means ≡ 5 mod 6; p = 2 would need bound < 2.
    let mut p = bound + 1;
    p += (5 + 6 - p % 6) % 6;
    while !is_prime(p) {
        p += 6;
    }
    Ok(PrimeChoice {
        p,
        k: (p - 2) / 3,
        bound,
    })
}

/// Number of `x` in `[1, p)` with `x b mod p` in `C`, by walking the row.
pub fn row_hit_count(b: i64, choice: &PrimeChoice) -> Result<u64> {
    let p = choice.p;
    let r = reduce(b as i128, p);
    if r == 0 {
        return Err(Error::ZeroElement(0));
    }
    let mut residue = 0;
    let mut hits = 0;
    for _ in 1..p {
        residue += r;
        if residue >= p {
            residue -= p;
        }
        if choice.in_window(residue) {
            hits += 1;
        }
    }
    Ok(hits)
}

fn residues(b: &[i64], choice: &PrimeChoice) -> Result<Vec<u64>> {
    b.iter()
        .enumerate()
        .map(|(i, &v)| match reduce(v as i128, choice.p) {
            0 => Err(Error::ZeroElement(i)),
            r => Ok(r),
        })
        .collect()
}

fn column_hits(residues: &[u64], x: u64, choice: &PrimeChoice) -> Vec<usize> {
    residues
        .iter()
        .enumerate()
        .filter(|(_, &r)| choice.in_window((r as u128 * x as u128 % choice.p as u128) as u64))
        .map(|(i, _)| i)
        .collect()
}

trait Counter: Copy + Default + Ord + Into<u64> + AddAssign + From<u8> {}
impl Counter for u8 {}
impl Counter for u16 {}
impl Counter for u32 {}

/// Hits per column for `x` in `[1, (p-1)/2]`, index `x`.
///
/// `C = -C` in `Z_p`, so columns `x` and `p - x` agree; only the lower half
/// is tallied. For each residue `r`, the columns hitting `C` are `c r^{-1}`,
/// and walking `c` over the lower half of `C` reaches every folded column once.
fn tally<T: Counter>(residues: &[u64], choice: &PrimeChoice) -> Vec<T> {
    let (p, k) = (choice.p, choice.k);
    let half = (p - 1) / 2;
    let mut counts = vec![T::default(); half as usize + 1];
    for &r in residues {
        let step = inverse_mod_prime(r, p);
        let mut x = ((k + 1) as u128 * step as u128 % p as u128) as u64;
        for _ in k + 1..=half {
            let folded = x.min(p - x);
            counts[folded as usize] += T::from(1);
            x += step;
            if x >= p {
                x -= p;
            }
        }
    }
    counts
}

fn argmax<T: Counter>(counts: &[T]) -> (u64, u64) {
    let mut best = (1u64, 0u64);
    for (x, &c) in counts.iter().enumerate().skip(1) {
        let c: u64 = c.into();
        if c > best.1 {
            best = (x as u64, c);
        }
    }
    best
}

fn widened<T: Counter>(counts: Vec<T>) -> Vec<u64> {
    counts.into_iter().map(Into::into).collect()
}

fn folded_counts(residues: &[u64], choice: &PrimeChoice) -> Vec<u64> {
    match residues.len() {
        0..=255 => widened(tally::<u8>(residues, choice)),
        256..=65_535 => widened(tally::<u16>(residues, choice)),
        _ => widened(tally::<u32>(residues, choice)),
    }
}

/// The multiplier with the most hits in `C`, smallest `x` on ties.
pub fn best_column(b: &[i64], choice: &PrimeChoice) -> Result<ColumnSelection> {
    check_input(b)?;
    if choice.p > EXHAUSTIVE_PRIME_CAP {
        return Err(Error::ScanInfeasible {
            size: choice.p - 1,
            cap: EXHAUSTIVE_PRIME_CAP,
        });
    }
    let residues = residues(b, choice)?;
    let (x, _) = match residues.len() {
        0..=255 => argmax(&tally::<u8>(&residues, choice)),
        256..=65_535 => argmax(&tally::<u16>(&residues, choice)),
        _ => argmax(&tally::<u32>(&residues, choice)),
    };
    let hits = column_hits(&residues, x, choice);
    Ok(ColumnSelection {
        x,
        count: hits.len(),
        hits,
    })
}

/// Random multipliers until one clears `n / 3`; falls back to the best seen
/// after `samples` draws. Ties keep the smaller `x`.
pub fn sample_column<R: Rng>(
    b: &[i64],
    choice: &PrimeChoice,
    samples: u64,
    rng: &mut R,
) -> Result<ColumnSelection> {
    check_input(b)?;
    let residues = residues(b, choice)?;
    let mut best: Option<ColumnSelection> = None;
    for _ in 0..samples.max(1) {
        let x = rng.gen_range(1..choice.p);
        let hits = column_hits(&residues, x, choice);
        let better = match &best {
            None => true,
            Some(sel) => hits.len() > sel.count || (hits.len() == sel.count && x < sel.x),
        };
        if better {
            best = Some(ColumnSelection {
                x,
                count: hits.len(),
                hits,
            });
        }
        if best.as_ref().is_some_and(|s| 3 * s.count > b.len()) {
            break;
        }
    }
    Ok(best.expect("at least one sample is drawn"))
}

/// How many multipliers `x` produce each hit count, over all of `[1, p)`.
pub fn column_hit_distribution(b: &[i64], choice: &PrimeChoice) -> Result<BTreeMap<u64, u64>> {
    check_input(b)?;
    let residues = residues(b, choice)?;
    let mut dist = BTreeMap::new();
    for &c in folded_counts(&residues, choice).iter().skip(1) {
        *dist.entry(c).or_insert(0) += 2;
    }
    Ok(dist)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerExtraction {
    pub choice: PrimeChoice,
    pub column: ColumnSelection,
    pub witness: SumFreeWitness,
    /// `x a mod p` lies in `C` for every selected `a`.
    pub image_in_window: bool,
    /// Distinct inputs stay distinct after scaling by `x`.
    pub injective: bool,
    /// The selection passes the sum-free predicate over the integers.
    pub verified: bool,
    /// `|A| > n / 3`.
    pub exceeds_third: bool,
}

impl IntegerExtraction {
    pub fn holds(&self) -> bool {
        self.image_in_window && self.injective && self.verified && self.exceeds_third
    }
}

pub fn extract_sum_free_integers(b: &[i64]) -> Result<IntegerExtraction> {
    extract_with_mode(b, ColumnMode::Exhaustive)
}

pub fn extract_with_mode(b: &[i64], mode: ColumnMode) -> Result<IntegerExtraction> {
    let choice = choose_prime(b)?;
    let column = match mode {
        ColumnMode::Exhaustive => best_column(b, &choice)?,
        ColumnMode::Sampled { samples, seed } => {
            let mut rng = crate::seeded_rng(seed);
            sample_column(b, &choice, samples, &mut rng)?
        }
    };
    let witness = SumFreeWitness::from_indices(column.hits.clone());
    let selected: Vec<i64> = witness.select(b).into_iter().copied().collect();
    let scale =
        |v: i64| (reduce(v as i128, choice.p) as u128 * column.x as u128 % choice.p as u128) as u64;

    let image_in_window = selected.iter().all(|&a| choice.in_window(scale(a)));
    let mut images: BTreeMap<u64, i64> = BTreeMap::new();
    let injective = b.iter().all(|&v| *images.entry(scale(v)).or_insert(v) == v);

    Ok(IntegerExtraction {
        choice,
        verified: is_sum_free(&Integers, &selected),
        exceeds_third: 3 * witness.size > b.len(),
        column,
        witness,
        image_in_window,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Full residue table, every column, no symmetry shortcut.
    fn table_columns(b: &[i64], choice: &PrimeChoice) -> Vec<usize> {
        let p = choice.p as i128;
        (1..choice.p)
            .map(|x| {
                b.iter()
                    .filter(|&&v| {
                        let r = (x as i128 * v as i128).rem_euclid(p) as u64;
                        choice.k < r && r <= 2 * choice.k + 1
                    })
                    .count()
            })
            .collect()
    }

    fn table_best(b: &[i64], choice: &PrimeChoice) -> (u64, usize) {
        let cols = table_columns(b, choice);
        let max = *cols.iter().max().unwrap();
        let x = cols.iter().position(|&c| c == max).unwrap() as u64 + 1;
        (x, max)
    }

    #[test]
    fn prime_choice_examples() {
        let c = choose_prime(&[1, 2, 3]).unwrap();
        assert_eq!((c.p, c.k, c.bound), (11, 3, 6));
        let c = choose_prime(&[1]).unwrap();
        assert_eq!((c.p, c.k), (5, 1));
        let c = choose_prime(&[-50, 3]).unwrap();
        assert_eq!((c.p, c.k), (101, 33));
        let c = choose_prime(&[4, 5, 6]).unwrap();
        assert_eq!((c.p, c.k), (17, 5));
    }

    #[test]
    fn prime_choice_errors() {
        assert!(matches!(choose_prime(&[]), Err(Error::EmptyInput)));
        assert!(matches!(choose_prime(&[3, 0]), Err(Error::ZeroElement(1))));
        assert!(matches!(
            choose_prime(&[i64::MIN]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn choice_is_smallest() {
        for max in 1..400i64 {
            let c = choose_prime(&[max]).unwrap();
            assert!(is_prime(c.p) && c.p % 3 == 2 && c.p > 2 * max as u64);
            assert!(((2 * max as u64 + 1)..c.p).all(|q| !(is_prime(q) && q % 3 == 2)));
        }
    }

    #[test]
    fn row_counts() {
        let c = choose_prime(&[1, 2, 3]).unwrap();
        assert_eq!(row_hit_count(1, &c).unwrap(), 4);
        assert_eq!(row_hit_count(2, &c).unwrap(), 4);
        assert!(matches!(row_hit_count(11, &c), Err(Error::ZeroElement(_))));
        for b in -10..=10 {
            if b != 0 {
                assert_eq!(row_hit_count(b, &c).unwrap(), c.k + 1);
            }
        }
    }

    #[test]
    fn best_column_examples() {
        let b = [1, 2, 3];
        let c = choose_prime(&b).unwrap();
        let cols = table_columns(&b, &c);
        assert_eq!(cols.iter().sum::<usize>(), 3 * 4);
        let sel = best_column(&b, &c).unwrap();
        assert!(sel.count >= 2);
        assert_eq!((sel.x, sel.count), table_best(&b, &c));

        let c = choose_prime(&[1]).unwrap();
        let sel = best_column(&[1], &c).unwrap();
        assert_eq!((sel.x, sel.count, sel.hits.clone()), (2, 1, vec![0]));

        let b = [4, 5, 6];
        let c = choose_prime(&b).unwrap();
        let sel = best_column(&b, &c).unwrap();
        assert!(sel.count >= 2);
        assert_eq!((sel.x, sel.count), table_best(&b, &c));
    }

    #[test]
    fn extraction_examples() {
        let e = extract_sum_free_integers(&[1, 2, 3]).unwrap();
        assert!(e.holds() && e.witness.size >= 2);
        let e = extract_sum_free_integers(&[1]).unwrap();
        assert_eq!(e.witness.indices, vec![0]);
        let b: Vec<i64> = (1..=8).flat_map(|v| [v, -v]).collect();
        let e = extract_sum_free_integers(&b).unwrap();
        assert!(e.holds() && e.witness.size >= 6);
    }

    #[test]
    fn duplicates_follow_sequence_semantics() {
        let e = extract_sum_free_integers(&[5, 5, 5, 2]).unwrap();
        assert!(e.holds());
        assert!(e.witness.size >= 2);
    }

    #[test]
    fn distribution_covers_every_column() {
        let b = [3, -7, 12, 1];
        let c = choose_prime(&b).unwrap();
        let dist = column_hit_distribution(&b, &c).unwrap();
        assert_eq!(dist.values().sum::<u64>(), c.p - 1);
        let total: u64 = dist.iter().map(|(k, v)| k * v).sum();
        assert_eq!(total, 4 * (c.k + 1));
        let mut direct = BTreeMap::new();
        for col in table_columns(&b, &c) {
            *direct.entry(col as u64).or_insert(0u64) += 1;
        }
        assert_eq!(dist, direct);
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let b: Vec<i64> = (1..=20).collect();
        let mode = ColumnMode::Sampled {
            samples: 1000,
            seed: 9,
        };
        let a = extract_with_mode(&b, mode).unwrap();
        assert_eq!(a, extract_with_mode(&b, mode).unwrap());
        assert!(a.holds());
    }

    proptest! {
        #[test]
        fn fast_scan_matches_table(b in prop::collection::vec(-300i64..300, 1..30)) {
            let b: Vec<i64> = b.into_iter().filter(|&v| v != 0).collect();
            prop_assume!(!b.is_empty());
            let c = choose_prime(&b).unwrap();
            let sel = best_column(&b, &c).unwrap();
            prop_assert_eq!((sel.x, sel.count), table_best(&b, &c));
            prop_assert_eq!(table_columns(&b, &c).iter().sum::<usize>() as u64, b.len() as u64 * (c.k + 1));
        }

        #[test]
        fn extraction_always_holds(b in prop::collection::vec(-100_000i64..100_000, 1..40)) {
            let b: Vec<i64> = b.into_iter().filter(|&v| v != 0).collect();
            prop_assume!(!b.is_empty());
            let e = extract_sum_free_integers(&b).unwrap();
            prop_assert!(e.holds());
            prop_assert!(e.witness.size > b.len() / 3);
        }
    }
}
