//! Words of a given split weight inside the radius-`t` sphere of a codeword.
//!
//! For a codeword of split weight `c = (c1, c2)` and a target split weight
//! `r = (r1, r2)`, a word of the sphere is reached by zeroing some support
//! positions, filling `I` zero positions with nonzero symbols and replacing
//! `J` surviving nonzero symbols by different nonzero symbols. The index `i`
//! in the sums below is the number of filled positions that fall in the
//! information part, so `c1 - r1 + i` information symbols of `c` are zeroed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{binom, int_pow, ExactInt};
use crate::enumerator::CodeParams;

/// Weight of a word split into information and redundancy parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitWeight {
    pub info: usize,
    pub red: usize,
}

impl SplitWeight {
    pub const fn new(info: usize, red: usize) -> Self {
        Self { info, red }
    }

    pub fn total(&self) -> usize {
        self.info + self.red
    }

    fn check(&self, params: &CodeParams) {
        assert!(
            self.info <= params.k && self.red <= params.r(),
            "split weight ({},{}) invalid for {params}",
            self.info,
            self.red
        );
    }
}

/// Count of sphere words of one split weight together with the number of
/// information symbols of the codeword that those words disagree with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereStats {
    pub count: ExactInt,
    /// Sum over the `count` words of the information positions in the
    /// support of the codeword where the word differs from it. These are
    /// the symbols the decoder rewrites to a wrong nonzero value.
    pub change_total: ExactInt,
    pub alpha: i64,
    pub beta: i64,
}

impl SphereStats {
    /// Average decoder change count `change_total / count`, zero on an
    /// empty cell.
    pub fn mean_changes(&self) -> BigRational {
        if self.count.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(self.change_total.clone(), self.count.clone())
        }
    }
}

/// `alpha = t - |c1 - r1| - |c2 - r2|`, `beta = t - c1 + r1 - c2 + r2`.
pub fn alpha_beta(params: &CodeParams, c: SplitWeight, r: SplitWeight) -> (i64, i64) {
    let t = params.t() as i64;
    let (c1, c2, r1, r2) = (c.info as i64, c.red as i64, r.info as i64, r.red as i64);
    (t - (c1 - r1).abs() - (c2 - r2).abs(), t - c1 + r1 - c2 + r2)
}

/// Per-(J, I, i) weight shared by the count and the change total: the
/// number of ways to pick the zeroed, kept and filled positions.
fn placement(params: &CodeParams, c: SplitWeight, r: SplitWeight, big_i: i64, i: i64) -> ExactInt {
    let (k, red) = (params.ki(), params.r() as i64);
    let (c1, c2, r1, r2) = (c.info as i64, c.red as i64, r.info as i64, r.red as i64);
    binom(c1, r1 - i) * binom(c2, r2 - big_i + i) * binom(k - c1, i) * binom(red - c2, big_i - i)
}

fn sphere_sum(
    params: &CodeParams,
    c: SplitWeight,
    r: SplitWeight,
    mut kernel: impl FnMut(i64, i64, i64) -> ExactInt,
) -> ExactInt {
    let (alpha, beta) = alpha_beta(params, c, r);
    let q = params.qi();
    let mut total = BigInt::zero();
    for big_j in 0..=alpha {
        let top = (beta - big_j).div_euclid(2);
        for big_i in 0..=top {
            let mut inner = BigInt::zero();
            for i in 0..=big_i {
                let w = placement(params, c, r, big_i, i);
                if !w.is_zero() {
                    inner += w * kernel(big_j, big_i, i);
                }
            }
            if !inner.is_zero() {
                total += int_pow(q - 2, big_j as u32) * int_pow(q - 1, big_i as u32) * inner;
            }
        }
    }
    total
}

/// Number of words of split weight `r` within distance `t` of a fixed
/// codeword of split weight `c`. Total over all inputs; zero when
/// `alpha < 0`.
pub fn sphere_count(params: &CodeParams, c: SplitWeight, r: SplitWeight) -> ExactInt {
    c.check(params);
    r.check(params);
    let s = (r.info + r.red) as i64;
    sphere_sum(params, c, r, |big_j, big_i, _| binom(s - big_i, big_j))
}

/// Which sign pattern of `(r1 - c1, r2 - c2)` a cell falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereCase {
    /// `r1 <= c1`, `r2 <= c2`
    BothShrink,
    /// `r1 <= c1`, `r2 > c2`
    RedundancyGrows,
    /// `r1 > c1`, `r2 <= c2`
    InfoGrows,
    /// `r1 > c1`, `r2 > c2`
    BothGrow,
}

impl SphereCase {
    pub fn of(c: SplitWeight, r: SplitWeight) -> Self {
        match (r.info > c.info, r.red > c.red) {
            (false, false) => Self::BothShrink,
            (false, true) => Self::RedundancyGrows,
            (true, false) => Self::InfoGrows,
            (true, true) => Self::BothGrow,
        }
    }
}

/// Same count as [`sphere_count`], evaluated through the separate formula of
/// each sign case, with the per-part change counts `j` kept explicit rather
/// than collapsed by Vandermonde convolution.
pub fn sphere_count_cases(params: &CodeParams, c: SplitWeight, r: SplitWeight) -> ExactInt {
    c.check(params);
    r.check(params);
    let (alpha, _) = alpha_beta(params, c, r);
    if alpha < 0 {
        return BigInt::zero();
    }
    let (k, red, q) = (params.ki(), params.r() as i64, params.qi());
    let (c1, c2, r1, r2) = (c.info as i64, c.red as i64, r.info as i64, r.red as i64);
    // extra filled positions forced by a growing part
    let shift = match SphereCase::of(c, r) {
        SphereCase::BothShrink => 0,
        SphereCase::RedundancyGrows => r2 - c2,
        SphereCase::InfoGrows => r1 - c1,
        SphereCase::BothGrow => r1 - c1 + r2 - c2,
    };
    let mut total = BigInt::zero();
    for big_j in 0..=alpha {
        for big_i in 0..=((alpha - big_j) / 2 + shift) {
            let mut inner = BigInt::zero();
            for j in 0..=big_j {
                for i in 0..=big_i {
                    inner += binom(c1, j)
                        * binom(c2, big_j - j)
                        * binom(c1 - j, c1 - r1 + i)
                        * binom(c2 - big_j + j, c2 - r2 + big_i - i)
                        * binom(k - c1, i)
                        * binom(red - c2, big_i - i);
                }
            }
            total += int_pow(q - 2, big_j as u32) * int_pow(q - 1, big_i as u32) * inner;
        }
    }
    total
}

/// Count and decoder change total for one `(c, r)` cell.
///
/// For each way of reaching the word, the decoder rewrites the
/// `c1 - r1 + i` zeroed and the `j` replaced information symbols of the
/// codeword; summing over `j` collapses to
/// `(c1 - r1 + i) C(s - I, J) + (r1 - i) C(s - I - 1, J - 1)` with
/// `s = r1 + r2`, independently of the sign of `r1 - c1`.
pub fn decoder_change_stats(params: &CodeParams, c: SplitWeight, r: SplitWeight) -> SphereStats {
    change_stats_with(params, c, r, |c1, r1, i| c1 - r1 + i)
}

/// Variant of [`decoder_change_stats`] that uses the literal kernel
/// `i C(s - I, J) + (r1 - i) C(s - I - 1, J - 1)` whenever `r1 > c1`.
///
/// Kept for the literal evaluation mode. It disagrees with a brute-force
/// count of decoder changes on cells with `r1 > c1` and `r1 + r2 > t`
/// where the codeword has zeroed information symbols.
pub fn decoder_change_stats_literal(
    params: &CodeParams,
    c: SplitWeight,
    r: SplitWeight,
) -> SphereStats {
    change_stats_with(params, c, r, |c1, r1, i| if r1 <= c1 { c1 - r1 + i } else { i })
}

fn change_stats_with(
    params: &CodeParams,
    c: SplitWeight,
    r: SplitWeight,
    zeroed: impl Fn(i64, i64, i64) -> i64,
) -> SphereStats {
    c.check(params);
    r.check(params);
    let (alpha, beta) = alpha_beta(params, c, r);
    if alpha < 0 {
        return SphereStats {
            count: BigInt::zero(),
            change_total: BigInt::zero(),
            alpha,
            beta,
        };
    }
    let (c1, r1) = (c.info as i64, r.info as i64);
    let s = (r.info + r.red) as i64;
    let count = sphere_sum(params, c, r, |big_j, big_i, _| binom(s - big_i, big_j));
    let change_total = sphere_sum(params, c, r, |big_j, big_i, i| {
        BigInt::from(zeroed(c1, r1, i)) * binom(s - big_i, big_j)
            + BigInt::from(r1 - i) * binom(s - big_i - 1, big_j - 1)
    });
    SphereStats {
        count,
        change_total,
        alpha,
        beta,
    }
}

/// Hamming ball volume `sum_{s<=t} C(n, s) (q-1)^s`.
pub fn ball_volume(params: &CodeParams) -> ExactInt {
    (0..=params.t() as i64)
        .map(|s| binom(params.ni(), s) * int_pow(params.qi() - 1, s as u32))
        .sum()
}

/// Received split weights a sphere around `c` can reach (`alpha >= 0`).
pub fn reachable(params: &CodeParams, c: SplitWeight) -> impl Iterator<Item = SplitWeight> + '_ {
    let t = params.t();
    let r1_range = c.info.saturating_sub(t)..=(c.info + t).min(params.k);
    r1_range.flat_map(move |r1| {
        let slack = t - r1.abs_diff(c.info);
        (c.red.saturating_sub(slack)..=(c.red + slack).min(params.r()))
            .map(move |r2| SplitWeight::new(r1, r2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(n: usize, k: usize, q: u64) -> CodeParams {
        CodeParams::symbolic(n, k, q).unwrap()
    }

    fn sw(a: usize, b: usize) -> SplitWeight {
        SplitWeight::new(a, b)
    }

    const CANONICAL: [(usize, usize, u64); 4] = [(3, 1, 2), (4, 2, 5), (6, 2, 7), (7, 3, 8)];

    fn all_splits(params: &CodeParams) -> Vec<SplitWeight> {
        (0..=params.k)
            .flat_map(|a| (0..=params.r()).map(move |b| sw(a, b)))
            .collect()
    }

    #[test]
    fn examples() {
        let t3 = p(6, 2, 7);
        assert_eq!(sphere_count(&t3, sw(1, 4), sw(0, 3)), BigInt::from(4));
        assert_eq!(sphere_count_cases(&t3, sw(1, 4), sw(0, 3)), BigInt::from(4));
        assert_eq!(sphere_count(&t3, sw(1, 4), sw(2, 0)), BigInt::zero());
        let t2 = p(4, 2, 5);
        assert_eq!(sphere_count_cases(&t2, sw(1, 2), sw(0, 2)), BigInt::one());
        assert_eq!(sphere_count(&t2, sw(1, 2), sw(0, 2)), BigInt::one());
        assert_eq!(ball_volume(&t2), BigInt::from(17));
        assert_eq!(ball_volume(&t3), BigInt::from(577));
        assert_eq!(ball_volume(&p(3, 2, 4)), BigInt::one());
    }

    #[test]
    fn change_stats_example() {
        let t3 = p(6, 2, 7);
        let s = decoder_change_stats(&t3, sw(1, 4), sw(0, 3));
        assert_eq!(s.count, BigInt::from(4));
        assert_eq!(s.change_total, BigInt::from(4));
        assert_eq!(s.mean_changes(), BigRational::one());
        let far = decoder_change_stats(&t3, sw(1, 4), sw(2, 0));
        assert!(far.alpha < 0);
        assert!(far.count.is_zero() && far.change_total.is_zero());
        assert!(far.mean_changes().is_zero());
    }

    #[test]
    fn unified_equals_cases_on_full_grid() {
        for (n, k, q) in CANONICAL.into_iter().chain([(15, 9, 16), (10, 3, 11)]) {
            let params = p(n, k, q);
            for c in all_splits(&params) {
                for r in all_splits(&params) {
                    assert_eq!(
                        sphere_count(&params, c, r),
                        sphere_count_cases(&params, c, r),
                        "{params} c={c:?} r={r:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sphere_decomposes_by_split_weight() {
        for (n, k, q) in CANONICAL.into_iter().chain([(15, 9, 16), (31, 25, 32)]) {
            let params = p(n, k, q);
            let vol = ball_volume(&params);
            for c in all_splits(&params) {
                let total: BigInt = all_splits(&params)
                    .into_iter()
                    .map(|r| sphere_count(&params, c, r))
                    .sum();
                assert_eq!(total, vol, "{params} c={c:?}");
                let reach: BigInt = reachable(&params, c).map(|r| sphere_count(&params, c, r)).sum();
                assert_eq!(reach, vol);
                assert!(sphere_count(&params, c, c) >= BigInt::one());
            }
        }
    }

    #[test]
    fn binary_repetition_code() {
        // [3,1]_2, t = 1: the word 111 has itself and three neighbours
        let t1 = p(3, 1, 2);
        assert_eq!(sphere_count(&t1, sw(1, 2), sw(1, 2)), BigInt::one());
        assert_eq!(sphere_count(&t1, sw(1, 2), sw(0, 2)), BigInt::one());
        assert_eq!(sphere_count(&t1, sw(1, 2), sw(1, 1)), BigInt::from(2));
    }

    #[test]
    fn mean_changes_bounded_by_k() {
        for (n, k, q) in CANONICAL {
            let params = p(n, k, q);
            for c in all_splits(&params) {
                for r in reachable(&params, c) {
                    let s = decoder_change_stats(&params, c, r);
                    assert!(s.change_total >= BigInt::zero());
                    assert!(s.change_total <= &s.count * BigInt::from(params.k));
                    assert!(s.mean_changes() <= BigRational::from_integer(BigInt::from(k)));
                }
            }
        }
    }
}
