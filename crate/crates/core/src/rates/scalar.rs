//! Number types the rate formulas are evaluated in.

use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::channel::ChannelPoint;
use crate::enumerator::CodeParams;
use crate::error::{Error, Result};

/// Arithmetic used to evaluate probabilities: exact rationals or `f64`.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Send + Sync + 'static {
    fn zeroed() -> Self;
    fn unit() -> Self;
    fn from_ratio(x: &BigRational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn vanishes(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// `sum_w coefs[w] * ps^w * qs^(n - w)` with `n = coefs.len() - 1`.
    fn weighted_sum(coefs: &[BigRational], ps: &Self, qs: &Self) -> Self;

    /// Channel parameters at bit-error rate (or, without a bit width,
    /// symbol-error rate) `p`.
    fn channel(p: &Self, params: &CodeParams) -> Result<ChannelPoint<Self>>;
}

fn check_unit(p: f64, shown: impl FnOnce() -> String) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(shown()))
    }
}

impl Scalar for BigRational {
    fn zeroed() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_ratio(x: &BigRational) -> Self {
        x.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn weighted_sum(coefs: &[BigRational], ps: &Self, qs: &Self) -> Self {
        let n = coefs.len().saturating_sub(1);
        let mut ps_pow = Vec::with_capacity(n + 1);
        let mut qs_pow = Vec::with_capacity(n + 1);
        let (mut a, mut b) = (<BigRational as One>::one(), <BigRational as One>::one());
        for _ in 0..=n {
            ps_pow.push(a.clone());
            qs_pow.push(b.clone());
            a *= ps;
            b *= qs;
        }
        coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(w, c)| c * &ps_pow[w] * &qs_pow[n - w])
            .fold(<BigRational as Zero>::zero(), |acc, x| acc + x)
    }

    fn channel(p: &Self, params: &CodeParams) -> Result<ChannelPoint<Self>> {
        if p.is_negative() || *p > BigRational::one() {
            return Err(Error::ProbabilityOutOfRange(p.to_string()));
        }
        let qm1 = BigRational::from_integer(BigInt::from(params.q - 1));
        let one = BigRational::one();
        Ok(match params.b {
            None => ChannelPoint {
                p: p.clone(),
                q_s: &one - p,
                p_s: p / &qm1,
                p_bgs: None,
            },
            Some(b) => {
                let q_s = num_traits::pow(&one - p, b as usize);
                let err = &one - &q_s;
                let p_bgs = (!Zero::is_zero(p)).then(|| p / &err);
                ChannelPoint {
                    p: p.clone(),
                    p_s: &err / &qm1,
                    q_s,
                    p_bgs,
                }
            }
        })
    }
}

impl Scalar for f64 {
    fn zeroed() -> Self {
        0.0
    }
    fn unit() -> Self {
        1.0
    }
    fn from_ratio(x: &BigRational) -> Self {
        ratio_to_f64(x)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn pow(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }

    /// Terms are formed as mantissa/exponent pairs so that huge counts times
    /// tiny probabilities neither overflow nor underflow before they meet,
    /// then added with Neumaier compensation.
    fn weighted_sum(coefs: &[BigRational], ps: &Self, qs: &Self) -> Self {
        let n = coefs.len().saturating_sub(1);
        let (mp, ep) = frexp(*ps);
        let (mq, eq) = frexp(*qs);
        let terms: Vec<(f64, i64)> = coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .filter_map(|(w, c)| {
                let u = n - w;
                if (*ps == 0.0 && w > 0) || (*qs == 0.0 && u > 0) {
                    return None;
                }
                let (mc, ec) = ratio_to_scaled(c);
                let m = mc * mp.powi(w as i32) * mq.powi(u as i32);
                Some((m, ec + w as i64 * ep + u as i64 * eq))
            })
            .collect();
        let Some(top) = terms.iter().map(|t| t.1).max() else {
            return 0.0;
        };
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (m, e) in terms {
            let x = ldexp(m, e - top);
            let s = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - s) + x;
            } else {
                comp += (x - s) + sum;
            }
            sum = s;
        }
        ldexp(sum + comp, top)
    }

    fn channel(p: &Self, params: &CodeParams) -> Result<ChannelPoint<Self>> {
        check_unit(*p, || p.to_string())?;
        let qm1 = (params.q - 1) as f64;
        Ok(match params.b {
            None => ChannelPoint {
                p: *p,
                q_s: 1.0 - p,
                p_s: p / qm1,
                p_bgs: None,
            },
            Some(b) => {
                let log_ok = (-p).ln_1p() * b as f64;
                let q_s = log_ok.exp();
                // 1 - (1-p)^b without cancellation at small p
                let err = if *p == 1.0 { 1.0 } else { -log_ok.exp_m1() };
                ChannelPoint {
                    p: *p,
                    q_s,
                    p_s: err / qm1,
                    p_bgs: (*p > 0.0).then(|| p / err),
                }
            }
        })
    }
}

/// `x = m * 2^e` with `|m|` in `[0.5, 1)`; zero maps to `(0, 0)`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let mut e = 0i64;
    let mut m = x;
    // bring subnormals into the normal range first
    if m.abs() < f64::MIN_POSITIVE {
        m *= 2f64.powi(64);
        e -= 64;
    }
    let bits = m.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    e += raw_exp - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

fn bigint_to_scaled(x: &BigInt) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_f64().unwrap_or(0.0), 0);
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    let m = top.to_u64().unwrap_or(u64::MAX) as f64;
    let m = if x.sign() == Sign::Minus { -m } else { m };
    (m, shift as i64)
}

/// Rational as a mantissa/exponent pair, ~64 significant bits before
/// rounding to `f64`.
pub(crate) fn ratio_to_scaled(x: &BigRational) -> (f64, i64) {
    let (mn, en) = bigint_to_scaled(x.numer());
    let (md, ed) = bigint_to_scaled(x.denom());
    let (m, e) = frexp(mn / md);
    (m, e + en - ed)
}

pub(crate) fn ratio_to_f64(x: &BigRational) -> f64 {
    let (m, e) = ratio_to_scaled(x);
    ldexp(m, e)
}

/// Exact rational from a finite `f64`.
pub fn ratio_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}
