//! Residue scans over every multiplier vector `x` in `Z_n^s`.
//!
//! For a sequence `b_1, ..., b_m` each column `x` maps `b_i` to
//! `f_i(x) = x . b_i mod n`; a column's count for window `I_j` is the number
//! of `i` with `f_i(x)` in `I_j`. The scan tallies those counts for all
//! columns, row totals per element, and the exact expected counts built from
//! the divisor profile of the sequence.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{gcd_class, proper_divisors, GroupElement, GroupSequence, GroupSpec};
use crate::oracle::{is_sum_free, SumFreeWitness};
use crate::rational::Rational;
use crate::window::{window_i1, window_i2, Window};

/// Default ceiling on the number of columns in an exhaustive scan.
pub const DEFAULT_SCAN_CAP: u64 = 10_000_000;

/// Report schema version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorProfile {
    /// `d -> m_d`, number of elements whose gcd class is `d`.
    pub counts: BTreeMap<u64, u64>,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub m: u64,
}

pub fn divisor_profile(seq: &GroupSequence) -> Result<DivisorProfile> {
    let mut counts = BTreeMap::new();
    for (i, b) in seq.elements().iter().enumerate() {
        let d = gcd_class(b, seq.spec()).map_err(|e| match e {
            Error::ZeroElement(_) => Error::ZeroElement(i),
            other => other,
        })?;
        *counts.entry(d).or_insert(0) += 1;
    }
    Ok(DivisorProfile {
        alpha: counts.keys().next().copied(),
        beta: counts.keys().next_back().copied(),
        m: seq.len() as u64,
        counts,
    })
}

/// `|dZ_n ∩ W| / |dZ_n|`.
pub fn window_ratio(window: &Window, d: u64) -> Rational {
    Rational::new(window.multiples_count(d), window.modulus / d)
}

/// `M_j = sum_d m_d |dZ_n ∩ I_j| / |dZ_n|` for `j = 1, 2`.
pub fn expected_counts(profile: &DivisorProfile, n: u64) -> Result<(Rational, Rational)> {
    let (i1, i2) = (window_i1(n), window_i2(n));
    let mut m1 = Rational::zero();
    let mut m2 = Rational::zero();
    for (&d, &md) in &profile.counts {
        if d == 0 || !n.is_multiple_of(d) || d >= n {
            return Err(Error::NotDivisor { d, n });
        }
        m1 = m1 + Rational::integer(md) * window_ratio(&i1, d);
        m2 = m2 + Rational::integer(md) * window_ratio(&i2, d);
    }
    Ok((m1, m2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub n: u64,
    pub d: u64,
    pub ratio_1: Rational,
    pub ratio_2: Rational,
    /// `4/7 ratio_1 + 3/7 ratio_2`.
    pub lhs: Rational,
    /// `lhs >= 2/7`.
    pub pass: bool,
}

/// Every `(n, d)` with `2 <= n <= max_n`, `d | n`, `1 <= d < n`.
pub fn weighted_inequality_sweep(max_n: u64) -> Result<Vec<InequalityRow>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_n must be at least 2, got {max_n}"
        )));
    }
    let threshold = Rational::new(2, 7);
    let rows = (2..=max_n)
        .into_par_iter()
        .flat_map_iter(|n| {
            let (i1, i2) = (window_i1(n), window_i2(n));
            let threshold = threshold.clone();
            proper_divisors(n).into_iter().map(move |d| {
                let ratio_1 = window_ratio(&i1, d);
                let ratio_2 = window_ratio(&i2, d);
                let lhs =
                    Rational::new(4, 7) * ratio_1.clone() + Rational::new(3, 7) * ratio_2.clone();
                InequalityRow {
                    n,
                    d,
                    pass: lhs >= threshold,
                    ratio_1,
                    ratio_2,
                    lhs,
                }
            })
        })
        .collect();
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub mode: ScanMode,
    /// Worker count; `0` uses rayon's default.
    pub threads: usize,
    pub cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            mode: ScanMode::Exhaustive,
            threads: 0,
            cap: DEFAULT_SCAN_CAP,
        }
    }
}

impl ScanOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }
}

/// Sum-free subsequence read off one column and one window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupExtraction {
    /// Which window, 1 or 2.
    pub window: u8,
    pub x: GroupElement,
    #[serde(flatten)]
    pub witness: SumFreeWitness,
    /// `size > 2m/7`.
    pub meets_2_7: bool,
    /// Oracle check of the selection in `Z_n^s`.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub mode: ScanMode,
    pub spec: GroupSpec,
    pub m: u64,
    /// Columns evaluated: `n^s` when exhaustive, the sample count otherwise.
    pub columns: u64,
    pub profile: DivisorProfile,
    pub m1: Rational,
    pub m2: Rational,
    /// Grand totals over the evaluated columns.
    pub total_1: u64,
    pub total_2: u64,
    /// Total divided by the number of evaluated columns.
    pub mean_all_x_1: Rational,
    pub mean_all_x_2: Rational,
    /// Total divided by `n^s - 1`; exhaustive scans only.
    pub note_formula_1: Option<Rational>,
    pub note_formula_2: Option<Rational>,
    pub mean_equals_m1: bool,
    pub mean_equals_m2: bool,
    pub best_x_1: GroupElement,
    pub best_x_2: GroupElement,
    pub max_count_1: u64,
    pub max_count_2: u64,
    /// Count for the zero column; exhaustive scans only.
    pub zero_column_count_1: Option<u64>,
    /// Entry `c` is the number of columns whose window-1 count is `c`.
    pub count_distribution_1: Vec<u64>,
    pub count_distribution_2: Vec<u64>,
    pub row_totals_1: Vec<u64>,
    pub row_totals_2: Vec<u64>,
    /// Row totals equal `d_i n^(s-1) |d_i Z_n ∩ I_j|` for both windows;
    /// exhaustive scans only.
    pub row_totals_match: Option<bool>,
    pub extraction: GroupExtraction,
}

/// Exact row total predicted for an element of gcd class `d`.
pub fn predicted_row_total(spec: &GroupSpec, window: &Window, d: u64) -> u64 {
    d * spec.cardinality() / spec.n * window.multiples_count(d)
}

/// Accumulated column statistics for one contiguous block of `x`.
#[derive(Clone, Debug)]
struct Tally {
    columns: u64,
    total: [u64; 2],
    rows: [Vec<u64>; 2],
    dist: [Vec<u64>; 2],
    /// `(count, column index)`, first occurrence wins.
    best: [(u64, u64); 2],
}

impl Tally {
    fn new(m: usize) -> Self {
        Self {
            columns: 0,
            total: [0; 2],
            rows: [vec![0; m], vec![0; m]],
            dist: [vec![0; m + 1], vec![0; m + 1]],
            best: [(0, u64::MAX); 2],
        }
    }

    fn record(&mut self, index: u64, counts: [u64; 2]) {
        self.columns += 1;
        for (j, &count) in counts.iter().enumerate() {
            self.total[j] += count;
            self.dist[j][count as usize] += 1;
            let (c, at) = self.best[j];
            if count > c || (count == c && index < at) {
                self.best[j] = (count, index);
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.columns += other.columns;
        for j in 0..2 {
            self.total[j] += other.total[j];
            for (a, b) in self.rows[j].iter_mut().zip(&other.rows[j]) {
                *a += b;
            }
            for (a, b) in self.dist[j].iter_mut().zip(&other.dist[j]) {
                *a += b;
            }
            let (c, at) = other.best[j];
            if c > self.best[j].0 || (c == self.best[j].0 && at < self.best[j].1) {
                self.best[j] = (c, at);
            }
        }
        self
    }
}

/// Precomputed data shared by all workers.
struct Kernel<'a> {
    spec: &'a GroupSpec,
    elements: &'a [GroupElement],
    in1: Vec<u8>,
    in2: Vec<u8>,
    /// `steps[level * m + i] = sum_{l >= level} b_il mod n`: the change in
    /// `f_i` when the odometer increments coordinate `level` and wraps every
    /// later one (`n - 1 -> 0` adds `b` as well, since `-(n-1) b ≡ b`).
    steps: Vec<u64>,
}

impl<'a> Kernel<'a> {
    fn new(seq: &'a GroupSequence, i1: &Window, i2: &Window) -> Self {
        let spec = seq.spec();
        let n = spec.n;
        let s = spec.rank();
        let m = seq.len();
        let mut steps = vec![0u64; s * m];
        for (i, b) in seq.elements().iter().enumerate() {
            let mut acc = 0;
            for level in (0..s).rev() {
                acc = (acc + b.coords[level]) % n;
                steps[level * m + i] = acc;
            }
        }
        Self {
            spec,
            elements: seq.elements(),
            in1: i1.bitmap(),
            in2: i2.bitmap(),
            steps,
        }
    }

    fn column_values(&self, x: &GroupElement) -> Vec<u64> {
        let n = self.spec.n as u128;
        self.elements
            .iter()
            .map(|b| {
                x.coords
                    .iter()
                    .zip(&b.coords)
                    .fold(0u128, |acc, (&xj, &bj)| (acc + xj as u128 * bj as u128) % n)
                    as u64
            })
            .collect()
    }

    fn scan_block(&self, start: u64, end: u64) -> Tally {
        let m = self.elements.len();
        let n = self.spec.n;
        let last = self.spec.rank() - 1;
        let mut tally = Tally::new(m);
        let mut x = self.spec.decode(start);
        let mut f = self.column_values(&x);
        let mut rows1 = vec![0u64; m];
        let mut rows2 = vec![0u64; m];
        for index in start..end {
            if index > start {
                let mut level = last;
                while x.coords[level] == n - 1 {
                    x.coords[level] = 0;
                    level -= 1;
                }
                x.coords[level] += 1;
                let step = &self.steps[level * m..(level + 1) * m];
                for (v, &d) in f.iter_mut().zip(step) {
                    *v += d;
                    if *v >= n {
                        *v -= n;
                    }
                }
            }
            let (mut c1, mut c2) = (0u64, 0u64);
            for ((&v, r1), r2) in f.iter().zip(rows1.iter_mut()).zip(rows2.iter_mut()) {
                let a = self.in1[v as usize] as u64;
                let b = self.in2[v as usize] as u64;
                c1 += a;
                c2 += b;
                *r1 += a;
                *r2 += b;
            }
            tally.record(index, [c1, c2]);
        }
        tally.rows = [rows1, rows2];
        tally
    }
}

fn run_in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(pool.install(job))
}

fn exhaustive_tally(kernel: &Kernel<'_>, threads: usize) -> Result<Tally> {
    let total = kernel.spec.cardinality();
    let m = kernel.elements.len();
    let workers = if threads == 0 {
        rayon::current_num_threads()
    } else {
        threads
    };
    let blocks = (workers as u64 * 8).clamp(1, total);
    let bounds: Vec<(u64, u64)> = (0..blocks)
        .map(|b| (total * b / blocks, total * (b + 1) / blocks))
        .collect();
    run_in_pool(threads, || {
        bounds
            .par_iter()
            .map(|&(lo, hi)| kernel.scan_block(lo, hi))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::new(m), Tally::merge)
    })
}

fn sampled_tally(kernel: &Kernel<'_>, samples: u64, seed: u64) -> Tally {
    let mut rng = crate::seeded_rng(seed);
    let mut tally = Tally::new(kernel.elements.len());
    for _ in 0..samples {
        let index = rng.gen_range(0..kernel.spec.cardinality());
        let f = kernel.column_values(&kernel.spec.decode(index));
        let mut counts = [0u64; 2];
        for (i, &v) in f.iter().enumerate() {
            let a = kernel.in1[v as usize] as u64;
            let b = kernel.in2[v as usize] as u64;
            counts[0] += a;
            counts[1] += b;
            tally.rows[0][i] += a;
            tally.rows[1][i] += b;
        }
        tally.record(index, counts);
    }
    tally
}

fn extraction_at(
    seq: &GroupSequence,
    kernel: &Kernel<'_>,
    window: u8,
    x: GroupElement,
) -> GroupExtraction {
    let map = if window == 1 {
        &kernel.in1
    } else {
        &kernel.in2
    };
    let f = kernel.column_values(&x);
    let indices: Vec<usize> = (0..f.len()).filter(|&i| map[f[i] as usize] == 1).collect();
    let witness = SumFreeWitness::from_indices(indices);
    let selected: Vec<GroupElement> = witness
        .select(seq.elements())
        .into_iter()
        .cloned()
        .collect();
    GroupExtraction {
        window,
        meets_2_7: 7 * witness.size > 2 * seq.len(),
        verified: is_sum_free(seq.spec(), &selected),
        x,
        witness,
    }
}

/// Scans the sequence, exhaustively or by seeded sampling.
pub fn full_scan(seq: &GroupSequence, options: &ScanOptions) -> Result<ScanReport> {
    let spec = *seq.spec();
    let n = spec.n;
    let size = spec.cardinality();
    let (i1, i2) = (window_i1(n), window_i2(n));
    let profile = divisor_profile(seq)?;
    let (m1, m2) = expected_counts(&profile, n)?;
    let kernel = Kernel::new(seq, &i1, &i2);

    let exhaustive = match options.mode {
        ScanMode::Exhaustive => {
            if size > options.cap {
                return Err(Error::ScanInfeasible {
                    size,
                    cap: options.cap,
                });
            }
            true
        }
        ScanMode::Sampled { samples: 0, .. } => {
            return Err(Error::InvalidArgument(
                "sample count must be positive".into(),
            ));
        }
        ScanMode::Sampled { .. } => false,
    };
    let tally = match options.mode {
        ScanMode::Exhaustive => exhaustive_tally(&kernel, options.threads)?,
        ScanMode::Sampled { samples, seed } => sampled_tally(&kernel, samples, seed),
    };

    let columns = tally.columns;
    let mean = |t: u64| Rational::new(t, columns);
    let mean_all_x_1 = mean(tally.total[0]);
    let mean_all_x_2 = mean(tally.total[1]);
    let note = |t: u64| exhaustive.then(|| Rational::new(t, size - 1));

    let row_totals_match = exhaustive.then(|| {
        seq.elements().iter().enumerate().all(|(i, b)| {
            let d = gcd_class(b, &spec).expect("sequence elements are nonzero");
            tally.rows[0][i] == predicted_row_total(&spec, &i1, d)
                && tally.rows[1][i] == predicted_row_total(&spec, &i2, d)
        })
    });

    let best_x_1 = spec.decode(tally.best[0].1);
    let best_x_2 = spec.decode(tally.best[1].1);
    let (max_count_1, max_count_2) = (tally.best[0].0, tally.best[1].0);
    let extraction = if max_count_1 >= max_count_2 {
        extraction_at(seq, &kernel, 1, best_x_1.clone())
    } else {
        extraction_at(seq, &kernel, 2, best_x_2.clone())
    };

    // The zero column maps everything to 0, which is never in I_1.
    let zero_column_count_1 = exhaustive.then(|| {
        let f = kernel.column_values(&spec.zero());
        f.iter().filter(|&&v| kernel.in1[v as usize] == 1).count() as u64
    });

    Ok(ScanReport {
        schema: SCHEMA_VERSION,
        mode: options.mode,
        spec,
        m: seq.len() as u64,
        columns,
        mean_equals_m1: mean_all_x_1 == m1,
        mean_equals_m2: mean_all_x_2 == m2,
        note_formula_1: note(tally.total[0]),
        note_formula_2: note(tally.total[1]),
        profile,
        m1,
        m2,
        total_1: tally.total[0],
        total_2: tally.total[1],
        mean_all_x_1,
        mean_all_x_2,
        best_x_1,
        best_x_2,
        max_count_1,
        max_count_2,
        zero_column_count_1,
        count_distribution_1: tally.dist[0].clone(),
        count_distribution_2: tally.dist[1].clone(),
        row_totals_1: tally.rows[0].clone(),
        row_totals_2: tally.rows[1].clone(),
        row_totals_match,
        extraction,
    })
}

/// Column and window with the largest count, and the preimage of the window.
pub fn extract_sum_free_group(
    seq: &GroupSequence,
    options: &ScanOptions,
) -> Result<GroupExtraction> {
    Ok(full_scan(seq, options)?.extraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dot_mod;
    use proptest::prelude::*;

    fn seq(n: u64, s: u32, rows: &[Vec<i64>]) -> GroupSequence {
        GroupSequence::from_coords(GroupSpec::new(n, s).unwrap(), rows).unwrap()
    }

    fn nonzero_z7() -> GroupSequence {
        seq(7, 1, &(1..7).map(|v| vec![v]).collect::<Vec<_>>())
    }

    /// Column counts by direct dot products over every x.
    fn brute_counts(seq: &GroupSequence, window: &Window) -> Vec<u64> {
        let spec = seq.spec();
        spec.elements()
            .map(|x| {
                seq.elements()
                    .iter()
                    .filter(|b| window.contains(dot_mod(&x, b, spec).unwrap()))
                    .count() as u64
            })
            .collect()
    }

    #[test]
    fn profile_examples() {
        let p = divisor_profile(&nonzero_z7()).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(1, 6)]));
        assert_eq!((p.alpha, p.beta), (Some(1), Some(1)));
        let p = divisor_profile(&seq(6, 2, &[vec![2, 4], vec![3, 3]])).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(2, 1), (3, 1)]));
        assert_eq!((p.alpha, p.beta), (Some(2), Some(3)));
        let p = divisor_profile(&seq(10, 1, &[vec![1]])).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn expected_count_examples() {
        let p = divisor_profile(&nonzero_z7()).unwrap();
        assert_eq!(
            expected_counts(&p, 7).unwrap(),
            (Rational::new(12, 7), Rational::new(12, 7))
        );
        let empty = divisor_profile(&seq(7, 1, &[])).unwrap();
        assert_eq!(
            expected_counts(&empty, 7).unwrap(),
            (Rational::zero(), Rational::zero())
        );
        let bad = DivisorProfile {
            counts: BTreeMap::from([(4, 1)]),
            alpha: Some(4),
            beta: Some(4),
            m: 1,
        };
        assert!(expected_counts(&bad, 6).is_err());
    }

    #[test]
    fn sweep_examples() {
        let rows = weighted_inequality_sweep(7).unwrap();
        let find = |n, d| rows.iter().find(|r| r.n == n && r.d == d).unwrap();
        assert_eq!(find(7, 1).lhs, Rational::new(2, 7));
        assert_eq!(find(4, 2).ratio_1, Rational::new(1, 2));
        assert_eq!(find(4, 2).ratio_2, Rational::zero());
        assert_eq!(find(4, 2).lhs, Rational::new(2, 7));
        assert_eq!(find(6, 3).ratio_1, Rational::new(1, 2));
        assert!(find(6, 3).lhs >= Rational::new(2, 7));
        assert!(rows.iter().all(|r| r.pass));
        let two = weighted_inequality_sweep(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(
            (two[0].n, two[0].d, two[0].lhs.clone()),
            (2, 1, Rational::new(2, 7))
        );
        assert!(weighted_inequality_sweep(1).is_err());
    }

    #[test]
    fn scan_nonzero_z7() {
        let r = full_scan(&nonzero_z7(), &ScanOptions::default()).unwrap();
        assert_eq!(r.row_totals_1, vec![2; 6]);
        assert_eq!(r.total_1, 12);
        assert_eq!(r.mean_all_x_1, Rational::new(12, 7));
        assert!(r.mean_equals_m1);
        assert_eq!(r.note_formula_1, Some(Rational::new(2, 1)));
        assert_eq!(r.max_count_1, 2);
        assert_eq!(r.best_x_1.coords, vec![1]);
        assert_eq!(r.zero_column_count_1, Some(0));
        assert_eq!(r.row_totals_match, Some(true));
        assert_eq!(r.extraction.witness.size, 2);
        assert!(r.extraction.meets_2_7 && r.extraction.verified);
    }

    #[test]
    fn scan_single_z3() {
        let s = seq(3, 1, &[vec![1]]);
        let r = full_scan(&s, &ScanOptions::default()).unwrap();
        assert_eq!(brute_counts(&s, &window_i1(3)), vec![0, 0, 1]);
        assert_eq!(r.mean_all_x_1, Rational::new(1, 3));
        assert_eq!(r.m1, Rational::new(1, 3));
        assert_eq!(r.best_x_1.coords, vec![2]);
    }

    #[test]
    fn extraction_examples() {
        let e = extract_sum_free_group(&seq(5, 1, &[vec![1]]), &ScanOptions::default()).unwrap();
        assert_eq!(e.witness.size, 1);
        assert_eq!((e.window, e.x.coords.clone()), (1, vec![2]));
        let e = extract_sum_free_group(
            &seq(3, 1, &[vec![1], vec![1], vec![1]]),
            &ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(e.witness.indices, vec![0, 1, 2]);
        assert_eq!(e.x.coords, vec![2]);
    }

    #[test]
    fn cap_and_sampling() {
        let s = seq(11, 6, &[vec![1, 0, 0, 0, 0, 0]]);
        let opts = ScanOptions {
            cap: 1000,
            ..ScanOptions::default()
        };
        assert!(matches!(
            full_scan(&s, &opts),
            Err(Error::ScanInfeasible { .. })
        ));
        let sampled = ScanOptions {
            mode: ScanMode::Sampled {
                samples: 500,
                seed: 3,
            },
            cap: 1000,
            threads: 0,
        };
        let r = full_scan(&s, &sampled).unwrap();
        assert_eq!(r.columns, 500);
        assert!(r.note_formula_1.is_none() && r.row_totals_match.is_none());
        assert_eq!(r, full_scan(&s, &sampled).unwrap());
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let s = seq(
            6,
            3,
            &[vec![1, 2, 3], vec![0, 2, 4], vec![3, 0, 3], vec![5, 5, 1]],
        );
        let one = full_scan(&s, &ScanOptions::with_threads(1)).unwrap();
        for t in [2, 3, 5] {
            assert_eq!(one, full_scan(&s, &ScanOptions::with_threads(t)).unwrap());
        }
    }

    fn arb_seq() -> impl Strategy<Value = GroupSequence> {
        (2u64..9, 1u32..4).prop_flat_map(|(n, s)| {
            let row = prop::collection::vec(0..n as i64, s as usize)
                .prop_filter("nonzero", |r| r.iter().any(|&c| c != 0));
            prop::collection::vec(row, 0..12).prop_map(move |rows| seq(n, s, &rows))
        })
    }

    proptest! {
        #[test]
        fn kernel_matches_brute_force(s in arb_seq()) {
            let r = full_scan(&s, &ScanOptions::default()).unwrap();
            let n = s.spec().n;
            let c1 = brute_counts(&s, &window_i1(n));
            let c2 = brute_counts(&s, &window_i2(n));
            prop_assert_eq!(r.total_1, c1.iter().sum::<u64>());
            prop_assert_eq!(r.total_2, c2.iter().sum::<u64>());
            let max1 = *c1.iter().max().unwrap();
            prop_assert_eq!(r.max_count_1, max1);
            prop_assert_eq!(s.spec().encode(&r.best_x_1), c1.iter().position(|&c| c == max1).unwrap() as u64);
            prop_assert_eq!(r.row_totals_match, Some(true));
            prop_assert!(r.mean_equals_m1 && r.mean_equals_m2);
            prop_assert!(r.extraction.verified);
            if !s.is_empty() {
                prop_assert!(r.note_formula_1.clone().unwrap() >= r.mean_all_x_1);
            }
        }
    }
}
