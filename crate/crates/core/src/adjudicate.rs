//! Side-by-side measurement of the two competing averages for a sequence in
//! `Z_n^s`, and searches for sequences with no large sum-free subsequence.
//!
//! The averaging argument predicts that the mean window-1 count over all
//! `n^s` columns equals `M_1`; the rival per-column value divides the same
//! grand total by `n^s - 1` instead. Both are computed exactly from one
//! exhaustive scan and left side by side; every flag is derived from the
//! numbers, never asserted.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSequence, GroupSpec};
use crate::oracle::{max_sum_free, DEFAULT_EXACT_LIMIT};
use crate::primes::is_prime;
use crate::rational::Rational;
use crate::scan::{full_scan, ScanOptions, ScanReport, DEFAULT_SCAN_CAP, SCHEMA_VERSION};
use crate::window::window_i1;

/// Default ceiling on the number of multisets an exhaustive search may visit.
pub const DEFAULT_SEARCH_CAP: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub mean_equals_m1: bool,
    pub mean_equals_m2: bool,
    /// Some column carries strictly more than `M_1` window-1 hits.
    pub exists_x_above_m1: bool,
    /// `extraction_size > 2m/7`.
    pub extraction_exceeds_2_7: bool,
    /// `note_formula_1 > mean_all_x_1`.
    pub note_exceeds_mean: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationRecord {
    pub schema: u32,
    pub id: String,
    pub n: u64,
    pub s: u32,
    pub m: u64,
    pub m1: Rational,
    pub m2: Rational,
    pub mean_all_x_1: Rational,
    pub mean_all_x_2: Rational,
    pub note_formula_1: Rational,
    pub note_formula_2: Rational,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    /// `alpha m ((floor(2n/3) - floor(n/3)) / beta) n^(s-1) / (n^s - 1)`.
    pub alpha_beta_bound: Option<Rational>,
    /// Large-`n` limit of the bound, `alpha m / (3 beta)`.
    pub alpha_beta_limit: Option<Rational>,
    pub max_count_1: u64,
    pub max_count_2: u64,
    pub zero_column_count_1: u64,
    /// Entry `c`: number of columns with window-1 count `c`.
    pub count_distribution_1: Vec<u64>,
    pub extraction_size: u64,
    pub extraction_window: u8,
    pub verdicts: Verdicts,
}

impl AdjudicationRecord {
    /// Flags as a pure function of the numeric fields.
    pub fn derive_verdicts(&self) -> Verdicts {
        let max1 = Rational::integer(self.max_count_1);
        Verdicts {
            mean_equals_m1: self.mean_all_x_1 == self.m1,
            mean_equals_m2: self.mean_all_x_2 == self.m2,
            exists_x_above_m1: max1 > self.m1,
            extraction_exceeds_2_7: 7 * self.extraction_size > 2 * self.m,
            note_exceeds_mean: self.note_formula_1 > self.mean_all_x_1,
        }
    }

    pub fn verdicts_consistent(&self) -> bool {
        self.derive_verdicts() == self.verdicts
    }
}

/// Exact finite form of the alpha/beta lower bound and its limit.
pub fn alpha_beta_bound(spec: &GroupSpec, m: u64, alpha: u64, beta: u64) -> (Rational, Rational) {
    let n = spec.n;
    let i1 = window_i1(n).len();
    let size = spec.cardinality();
    let bound =
        Rational::integer(alpha * m) * Rational::new(i1, beta) * Rational::new(size / n, size - 1);
    (bound, Rational::new(alpha * m, 3 * beta))
}

pub fn record_from_scan(id: impl Into<String>, report: &ScanReport) -> Result<AdjudicationRecord> {
    let (Some(note_1), Some(note_2), Some(zero_1)) = (
        report.note_formula_1.clone(),
        report.note_formula_2.clone(),
        report.zero_column_count_1,
    ) else {
        return Err(Error::InvalidArgument(
            "adjudication needs an exhaustive scan".into(),
        ));
    };
    let (alpha, beta) = (report.profile.alpha, report.profile.beta);
    let (bound, limit) = match (alpha, beta) {
        (Some(a), Some(b)) => {
            let (bound, limit) = alpha_beta_bound(&report.spec, report.m, a, b);
            (Some(bound), Some(limit))
        }
        _ => (None, None),
    };
    let mut record = AdjudicationRecord {
        schema: SCHEMA_VERSION,
        id: id.into(),
        n: report.spec.n,
        s: report.spec.s,
        m: report.m,
        m1: report.m1.clone(),
        m2: report.m2.clone(),
        mean_all_x_1: report.mean_all_x_1.clone(),
        mean_all_x_2: report.mean_all_x_2.clone(),
        note_formula_1: note_1,
        note_formula_2: note_2,
        alpha,
        beta,
        alpha_beta_bound: bound,
        alpha_beta_limit: limit,
        max_count_1: report.max_count_1,
        max_count_2: report.max_count_2,
        zero_column_count_1: zero_1,
        count_distribution_1: report.count_distribution_1.clone(),
        extraction_size: report.extraction.witness.size as u64,
        extraction_window: report.extraction.window,
        verdicts: Verdicts {
            mean_equals_m1: false,
            mean_equals_m2: false,
            exists_x_above_m1: false,
            extraction_exceeds_2_7: false,
            note_exceeds_mean: false,
        },
    };
    record.verdicts = record.derive_verdicts();
    Ok(record)
}

pub fn adjudicate(
    id: impl Into<String>,
    seq: &GroupSequence,
    options: &ScanOptions,
) -> Result<AdjudicationRecord> {
    let options = ScanOptions {
        mode: crate::scan::ScanMode::Exhaustive,
        ..*options
    };
    record_from_scan(id, &full_scan(seq, &options)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug)]
pub struct CounterexampleQuery {
    pub spec: GroupSpec,
    /// Sequences of every length `1..=m` are examined.
    pub m: usize,
    pub mode: SearchMode,
    /// Maximum number of sequences examined.
    pub budget: u64,
    pub seed: u64,
    /// Exhaustive mode refuses spaces larger than this.
    pub cap: u64,
    /// Sequences up to this length also get the exact oracle.
    pub oracle_limit: usize,
    pub threads: usize,
}

impl CounterexampleQuery {
    pub fn exhaustive(spec: GroupSpec, m: usize) -> Self {
        Self {
            spec,
            m,
            mode: SearchMode::Exhaustive,
            budget: u64::MAX,
            seed: 0,
            cap: DEFAULT_SEARCH_CAP,
            oracle_limit: DEFAULT_EXACT_LIMIT,
            threads: 0,
        }
    }

    pub fn randomized(spec: GroupSpec, m: usize, budget: u64, seed: u64) -> Self {
        Self {
            mode: SearchMode::Randomized,
            budget,
            seed,
            ..Self::exhaustive(spec, m)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingCategory {
    /// The exact maximum is at most `2m/7`.
    TheoremCounterexample,
    /// The scan-based extraction reached at most `2m/7`.
    MethodFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Finding {
    pub category: FindingCategory,
    pub n: u64,
    pub s: u32,
    pub m: u64,
    pub elements: Vec<GroupElement>,
    pub extraction_size: u64,
    /// Exact maximum sum-free subsequence size, when within the oracle limit.
    pub exact_size: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub schema: u32,
    pub n: u64,
    pub s: u32,
    pub m: u64,
    pub mode: SearchMode,
    pub seed: Option<u64>,
    /// Number of multisets of lengths `1..=m` (saturating).
    pub space_size: u64,
    pub instances: u64,
    /// Every multiset in the space was examined.
    pub complete: bool,
    pub theorem_counterexamples: u64,
    pub method_failures: u64,
    /// Method failures whose exact maximum was computed.
    pub method_failures_oracle_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub summary: SearchSummary,
    /// Canonically sorted.
    pub findings: Vec<Finding>,
}

/// `sum_{k=1}^{m} C(N + k - 1, k)`, saturating at `u64::MAX`.
pub fn multiset_space_size(nonzero: u64, m: usize) -> u64 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for k in 1..=m as u128 {
        // C(N+k-1, k) = C(N+k-2, k-1) (N+k-1) / k
        term = match term.checked_mul(nonzero as u128 + k - 1) {
            Some(t) => t / k,
            None => return u64::MAX,
        };
        total = total.saturating_add(term);
        if total > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    total as u64
}

/// Non-decreasing index tuples of length `1..=m` over `0..count`, shortest
/// first, lexicographic within a length.
fn multisets(count: usize, m: usize, limit: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    for len in 1..=m {
        let mut tuple = vec![0u32; len];
        loop {
            if out.len() as u64 >= limit {
                return out;
            }
            out.push(tuple.clone());
            let Some(pos) = (0..len).rev().find(|&i| (tuple[i] as usize) < count - 1) else {
                break;
            };
            let v = tuple[pos] + 1;
            for t in &mut tuple[pos..] {
                *t = v;
            }
        }
    }
    out
}

fn evaluate(
    query: &CounterexampleQuery,
    nonzero: &[GroupElement],
    tuple: &[u32],
) -> Result<Vec<Finding>> {
    let elements: Vec<GroupElement> = tuple.iter().map(|&i| nonzero[i as usize].clone()).collect();
    let seq = GroupSequence::new(query.spec, elements.clone())?;
    let scan = full_scan(&seq, &ScanOptions::with_threads(0))?;
    let m = seq.len() as u64;
    let extraction_size = scan.extraction.witness.size as u64;
    let exact_size = if seq.len() <= query.oracle_limit {
        Some(max_sum_free(&query.spec, &elements, query.oracle_limit)?.size as u64)
    } else {
        None
    };
    let finding = |category| Finding {
        category,
        n: query.spec.n,
        s: query.spec.s,
        m,
        elements: elements.clone(),
        extraction_size,
        exact_size,
    };
    let mut found = Vec::new();
    if exact_size.is_some_and(|e| 7 * e <= 2 * m) {
        found.push(finding(FindingCategory::TheoremCounterexample));
    }
    if 7 * extraction_size <= 2 * m {
        found.push(finding(FindingCategory::MethodFailure));
    }
    Ok(found)
}

pub fn counterexample_search(query: &CounterexampleQuery) -> Result<SearchOutcome> {
    if query.m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let nonzero: Vec<GroupElement> = query.spec.nonzero_elements().collect();
    let space_size = multiset_space_size(nonzero.len() as u64, query.m);

    let tuples: Vec<Vec<u32>> = match query.mode {
        SearchMode::Exhaustive => {
            if space_size > query.cap {
                return Err(Error::SearchSpaceTooLarge {
                    size: space_size,
                    cap: query.cap,
                });
            }
            multisets(nonzero.len(), query.m, query.budget)
        }
        SearchMode::Randomized => {
            let mut rng = crate::seeded_rng(query.seed);
            (0..query.budget)
                .map(|_| {
                    let len = rng.gen_range(1..=query.m);
                    let mut t: Vec<u32> = (0..len)
                        .map(|_| rng.gen_range(0..nonzero.len() as u32))
                        .collect();
                    t.sort_unstable();
                    t
                })
                .collect()
        }
    };

    let job = || -> Result<Vec<Finding>> {
        let nested: Vec<Vec<Finding>> = tuples
            .par_iter()
            .map(|t| evaluate(query, &nonzero, t))
            .collect::<Result<_>>()?;
        Ok(nested.into_iter().flatten().collect())
    };
    let mut findings = if query.threads == 0 {
        job()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(query.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(job)?
    };
    findings.sort_by(|a, b| (a.m, &a.elements, a.category).cmp(&(b.m, &b.elements, b.category)));
    findings.dedup();

    let count = |c| findings.iter().filter(|f| f.category == c).count() as u64;
    let summary = SearchSummary {
        schema: SCHEMA_VERSION,
        n: query.spec.n,
        s: query.spec.s,
        m: query.m as u64,
        mode: query.mode,
        seed: (query.mode == SearchMode::Randomized).then_some(query.seed),
        space_size,
        instances: tuples.len() as u64,
        complete: query.mode == SearchMode::Exhaustive && tuples.len() as u64 == space_size,
        theorem_counterexamples: count(FindingCategory::TheoremCounterexample),
        method_failures: count(FindingCategory::MethodFailure),
        method_failures_oracle_checked: findings
            .iter()
            .filter(|f| f.category == FindingCategory::MethodFailure && f.exact_size.is_some())
            .count() as u64,
    };
    Ok(SearchOutcome { summary, findings })
}

/// Longest sequence drawn by [`theorem4_check`].
pub const THEOREM4_MAX_M: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem4Summary {
    pub schema: u32,
    pub p: u64,
    pub s: u32,
    pub seed: u64,
    pub trials: u64,
    /// `|I_1| / p`.
    pub window_ratio: Rational,
    pub ratio_at_least_2_7: bool,
    /// `I_1` is empty.
    pub degenerate: bool,
    /// Trials where every element has gcd class 1.
    pub all_gcd_one: u64,
    /// Trials where the all-column mean equals `m |I_1| / p` and `M_1`.
    pub mean_identity: u64,
    /// Trials where the `n^s - 1` average equals `m p^(s-1) |I_1| / (p^s - 1)`.
    pub note_identity: u64,
    /// Trials where that average exceeds `m |I_1| / p`.
    pub note_exceeds_mean: u64,
    /// Trials whose extraction exceeds `2m/7`.
    pub extraction_exceeds_2_7: u64,
    pub failed_trials: Vec<u64>,
}

impl Theorem4Summary {
    pub fn holds(&self) -> bool {
        self.failed_trials.is_empty() && self.ratio_at_least_2_7 && !self.degenerate
    }
}

/// Random sequences over `Z_p^s` checked against the prime-case chain.
pub fn theorem4_check(
    p: u64,
    s: u32,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<Theorem4Summary> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let spec = GroupSpec::with_cap(p, s, DEFAULT_SCAN_CAP)?;
    let i1 = window_i1(p).len();
    let window_ratio = Rational::new(i1, p);
    let size = spec.cardinality();

    let mut rng = crate::seeded_rng(seed);
    let sequences: Vec<Vec<GroupElement>> = (0..trials)
        .map(|_| {
            let m = rng.gen_range(1..=THEOREM4_MAX_M);
            (0..m)
                .map(|_| spec.decode(rng.gen_range(1..size)))
                .collect()
        })
        .collect();

    let mut summary = Theorem4Summary {
        schema: SCHEMA_VERSION,
        p,
        s,
        seed,
        trials,
        ratio_at_least_2_7: window_ratio >= Rational::new(2, 7),
        degenerate: i1 == 0,
        window_ratio: window_ratio.clone(),
        all_gcd_one: 0,
        mean_identity: 0,
        note_identity: 0,
        note_exceeds_mean: 0,
        extraction_exceeds_2_7: 0,
        failed_trials: Vec::new(),
    };
    for (trial, elements) in sequences.into_iter().enumerate() {
        let seq = GroupSequence::new(spec, elements)?;
        let r = full_scan(&seq, &ScanOptions::with_threads(threads))?;
        let m = r.m;
        let mean_form = Rational::integer(m) * window_ratio.clone();
        let note_form = Rational::new(m * (size / p) * i1, size - 1);
        let note = r.note_formula_1.clone().unwrap_or_else(Rational::zero);

        let checks = [
            r.profile.counts.keys().all(|&d| d == 1),
            r.mean_all_x_1 == mean_form && r.m1 == mean_form,
            note == note_form,
            m.is_zero() || note > mean_form,
            7 * r.extraction.witness.size as u64 > 2 * m,
        ];
        let counters = [
            &mut summary.all_gcd_one,
            &mut summary.mean_identity,
            &mut summary.note_identity,
            &mut summary.note_exceeds_mean,
            &mut summary.extraction_exceeds_2_7,
        ];
        for (ok, counter) in checks.iter().zip(counters) {
            *counter += *ok as u64;
        }
        if !checks.iter().all(|&c| c) {
            summary.failed_trials.push(trial as u64);
        }
    }
    Ok(summary)
}
