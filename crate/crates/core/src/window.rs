//! Sum-free target windows: unions of integer intervals inside `[1, modulus)`.
//!
//! Fractional bounds such as `n/3 < x <= 2n/3` are realized with floors:
//! `x > n/3` iff `x >= floor(n/3) + 1`, and `x <= 2n/3` iff `x <= floor(2n/3)`.

use serde::Serialize;

/// Moduli up to this size are checked exhaustively when a window is built.
pub const EXHAUSTIVE_CHECK_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumFreeStatus {
    /// Every pair was checked and no sum landed back in the window.
    Verified,
    /// The exhaustive check found `a + b = c` inside the window.
    Violated,
    /// Modulus above [`EXHAUSTIVE_CHECK_CAP`]; sum-freeness is assumed.
    Asserted,
}

/// A union of disjoint half-open intervals `(lo, hi]` of residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub modulus: u64,
    pub intervals: Vec<(u64, u64)>,
    pub status: SumFreeStatus,
}

impl Window {
    /// Builds a window and runs the sum-free check when the modulus is small.
    /// Empty intervals are dropped.
    pub fn new(modulus: u64, intervals: Vec<(u64, u64)>) -> Self {
        let intervals: Vec<_> = intervals.into_iter().filter(|&(lo, hi)| lo < hi).collect();
        debug_assert!(intervals.iter().all(|&(_, hi)| hi < modulus));
        debug_assert!(intervals.windows(2).all(|w| w[0].1 <= w[1].0));
        let mut window = Self {
            modulus,
            intervals,
            status: SumFreeStatus::Asserted,
        };
        if modulus <= EXHAUSTIVE_CHECK_CAP {
            window.status = if window.check_sum_free() {
                SumFreeStatus::Verified
            } else {
                SumFreeStatus::Violated
            };
        }
        window
    }

    pub fn contains(&self, x: u64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo < x && x <= hi)
    }

    pub fn len(&self) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| hi - lo).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.intervals.iter().flat_map(|&(lo, hi)| lo + 1..=hi)
    }

    /// Membership table over `[0, modulus)`, one byte per residue.
    pub fn bitmap(&self) -> Vec<u8> {
        let mut map = vec![0u8; self.modulus as usize];
        for x in self.members() {
            map[x as usize] = 1;
        }
        map
    }

    /// `|dZ_n ∩ W|`: multiples of `d` inside each interval, counted by floors.
    pub fn multiples_count(&self, d: u64) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| hi / d - lo / d).sum()
    }

    /// Exhaustive test that no `a + b` (mod modulus), `a = b` allowed, lies
    /// in the window. Runs one shifted-bitset intersection per member `a`.
    pub fn check_sum_free(&self) -> bool {
        let n = self.modulus as usize;
        let words = n.div_ceil(64);
        let mut base = vec![0u64; words];
        // Doubled so that bit (a + b) for a, b < n is a plain lookup.
        let mut doubled = vec![0u64; (2 * n).div_ceil(64) + 1];
        for x in self.members() {
            let x = x as usize;
            base[x / 64] |= 1 << (x % 64);
            doubled[x / 64] |= 1 << (x % 64);
            doubled[(x + n) / 64] |= 1 << ((x + n) % 64);
        }
        self.members().all(|a| {
            let a = a as usize;
            (0..words).all(|w| {
                let bit = a + 64 * w;
                let (q, r) = (bit / 64, bit % 64);
                let mut shifted = doubled[q] >> r;
                if r != 0 {
                    shifted |= doubled[q + 1] << (64 - r);
                }
                shifted & base[w] == 0
            })
        })
    }
}

/// `C = {k+1, ..., 2k+1}` inside `Z_{3k+2}`.
pub fn window_c(k: u64) -> Window {
    Window::new(3 * k + 2, vec![(k, 2 * k + 1)])
}

fn floor_frac(n: u64, num: u64, den: u64) -> u64 {
    (n as u128 * num as u128 / den as u128) as u64
}

/// Middle third `n/3 < x <= 2n/3`.
pub fn window_i1(n: u64) -> Window {
    Window::new(n, vec![(floor_frac(n, 1, 3), floor_frac(n, 2, 3))])
}

/// `n/6 < x <= n/3` or `2n/3 < x <= 5n/6`.
pub fn window_i2(n: u64) -> Window {
    Window::new(
        n,
        vec![
            (floor_frac(n, 1, 6), floor_frac(n, 1, 3)),
            (floor_frac(n, 2, 3), floor_frac(n, 5, 6)),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sum_free(w: &Window) -> bool {
        let m: Vec<u64> = w.members().collect();
        m.iter()
            .all(|&a| m.iter().all(|&b| !w.contains((a + b) % w.modulus)))
    }

    fn set(w: &Window) -> Vec<u64> {
        w.members().collect()
    }

    #[test]
    fn c_windows() {
        let c = window_c(3);
        assert_eq!(c.modulus, 11);
        assert_eq!(set(&c), vec![4, 5, 6, 7]);
        assert_eq!(c.status, SumFreeStatus::Verified);
        let c0 = window_c(0);
        assert_eq!((c0.modulus, set(&c0)), (2, vec![1]));
        let c2 = window_c(2);
        assert_eq!((c2.modulus, set(&c2)), (8, vec![3, 4, 5]));
        assert_eq!(c2.len(), 3);
    }

    #[test]
    fn i_windows() {
        assert_eq!(set(&window_i1(7)), vec![3, 4]);
        assert_eq!(set(&window_i2(7)), vec![2, 5]);
        assert_eq!(set(&window_i1(6)), vec![3, 4]);
        assert_eq!(set(&window_i2(6)), vec![2, 5]);
        assert_eq!(set(&window_i1(3)), vec![2]);
        // 3/6 < 1 <= 3/3, so 1 belongs to the lower branch.
        assert_eq!(set(&window_i2(3)), vec![1]);
        assert_eq!(set(&window_i1(2)), vec![1]);
        assert!(window_i2(2).is_empty());
        assert_eq!(set(&window_i2(4)), vec![1, 3]);
    }

    #[test]
    fn non_sum_free_window_is_flagged() {
        let w = Window::new(10, vec![(0, 3)]);
        assert_eq!(w.status, SumFreeStatus::Violated);
        assert!(!w.check_sum_free());
    }

    #[test]
    fn large_modulus_is_asserted() {
        let w = window_i1(EXHAUSTIVE_CHECK_CAP + 1);
        assert_eq!(w.status, SumFreeStatus::Asserted);
    }

    #[test]
    fn bitset_check_agrees_with_naive() {
        for n in 2..200u64 {
            for lo in 0..n.min(20) {
                for hi in lo + 1..n.min(lo + 40) {
                    let w = Window::new(n, vec![(lo, hi)]);
                    assert_eq!(w.check_sum_free(), naive_sum_free(&w), "n={n} ({lo},{hi}]");
                }
            }
        }
    }

    #[test]
    fn bitmap_matches_contains() {
        let w = window_i2(37);
        let map = w.bitmap();
        for x in 0..37 {
            assert_eq!(map[x as usize] == 1, w.contains(x));
        }
    }

    proptest! {
        #[test]
        fn multiples_count_matches_enumeration(n in 2u64..500, d_seed in 1u64..500) {
            let divs = crate::group::proper_divisors(n);
            let d = divs[(d_seed as usize) % divs.len()];
            for w in [window_i1(n), window_i2(n)] {
                let direct = (0..n).step_by(d as usize).filter(|&x| w.contains(x)).count() as u64;
                prop_assert_eq!(w.multiples_count(d), direct);
            }
        }

        #[test]
        fn windows_are_sum_free(n in 2u64..3000) {
            prop_assert!(window_i1(n).check_sum_free());
            prop_assert!(window_i2(n).check_sum_free());
        }
    }
}
